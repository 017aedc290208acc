#pragma once

#include <stdexcept>
#include <string>

namespace spinor {

// Raised when an iterative numerical routine fails to meet its contract
// (eigensolver non-convergence, norm budget violation, step underflow).
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace spinor
