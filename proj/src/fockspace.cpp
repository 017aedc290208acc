#include "spinor/fockspace.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace spinor {

SystemSize::SystemSize(int atoms) : atoms_(atoms) {
  if (atoms < 2)
    throw std::invalid_argument("atom number must be >= 2, got " + std::to_string(atoms));
}

std::size_t basis_dim(SystemSize n) { return static_cast<std::size_t>(n.atoms() / 2) + 1; }

ModeOccupations ladder_occupations(SystemSize n, int k) {
  if (k < 0 || 2 * k > n.atoms())
    throw std::invalid_argument("ladder index out of range");
  return {k, n.atoms() - 2 * k, k};
}

namespace {

double norm_squared(std::span<const complex> v) {
  return std::accumulate(v.begin(), v.end(), 0.0,
                         [](double acc, complex c) { return acc + std::norm(c); });
}

} // namespace

SpinorState::SpinorState(SystemSize n, std::vector<complex> amplitudes)
    : size_(n), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != basis_dim(n))
    throw std::invalid_argument("amplitude vector has length " + std::to_string(amplitudes_.size()) +
                                ", expected " + std::to_string(basis_dim(n)));
  const double norm = std::sqrt(norm_squared(amplitudes_));
  if (!(std::abs(norm - 1.0) <= kNormTolerance))
    throw std::invalid_argument("state is not normalized (norm = " + std::to_string(norm) + ")");
}

SpinorState SpinorState::normalized(SystemSize n, std::vector<complex> amplitudes) {
  const double norm = std::sqrt(norm_squared(amplitudes));
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  for (auto &c : amplitudes)
    c /= norm;
  return SpinorState(n, std::move(amplitudes));
}

SpinorState SpinorState::fock(SystemSize n, int k) {
  if (k < 0 || 2 * k > n.atoms())
    throw std::invalid_argument("ladder index out of range");
  std::vector<complex> c(basis_dim(n), 0.0);
  c[static_cast<std::size_t>(k)] = 1.0;
  return SpinorState(n, std::move(c));
}

std::vector<double> SpinorState::populations() const {
  std::vector<double> p(amplitudes_.size());
  for (std::size_t k = 0; k < p.size(); ++k)
    p[k] = std::norm(amplitudes_[k]);
  return p;
}

SpinorState state_polar(SystemSize n) { return SpinorState::fock(n, 0); }

SpinorState state_twin_fock(SystemSize n) {
  if (!n.even())
    throw std::invalid_argument("twin-Fock state requires even N");
  return SpinorState::fock(n, n.atoms() / 2);
}

double mean_side_population(const SpinorState &s) {
  double sum = 0.0;
  for (std::size_t k = 0; k < s.dim(); ++k)
    sum += static_cast<double>(k) * std::norm(s[k]);
  return sum;
}

double mean_central_population(const SpinorState &s) {
  return s.atoms() - 2.0 * mean_side_population(s);
}

complex overlap(const SpinorState &a, const SpinorState &b) {
  if (a.size() != b.size())
    throw std::invalid_argument("overlap of states with different N");
  complex sum = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k)
    sum += std::conj(a[k]) * b[k];
  return sum;
}

double fidelity(const SpinorState &a, const SpinorState &b) { return std::norm(overlap(a, b)); }

} // namespace spinor
