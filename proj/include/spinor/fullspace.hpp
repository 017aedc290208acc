#pragma once

// Dense operators on the full three-mode Fock space of N bosons, dimension
// (N+1)(N+2)/2. Used only as an independent check of the ladder-space
// closed forms; everything here scales as dim^2 or worse.
//
// Mode order is (m_f = -1, 0, +1), which makes the collective Gell-Mann
// operators G_i = a^dag (lambda_i / 2) a with the standard lambda_i.

#include "spinor/fockspace.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace spinor {

enum class Mode : int { minus = 0, zero = 1, plus = 2 };

enum class Generator {
  G1, G2, G3, G4, G5, G6, G7, G8,
  Sx, Sy, Sz, // pseudospin over (a0, g)
  Ax, Ay, Az, // pseudospin over (a0, h)
  Jx, Jy, Jz, // pseudospin over (a+1, a-1)
};

std::string_view generator_name(Generator g);
std::optional<Generator> parse_generator(std::string_view name);

/// Single-particle 3x3 matrix m with generator = sum_ij m_ij a_i^dag a_j.
Eigen::Matrix3cd single_particle_matrix(Generator g);

/// Largest N accepted by the dense oracles.
inline constexpr int kFullSpaceOracleCap = 20;

class FullSpace {
public:
  explicit FullSpace(SystemSize n, int cap = kFullSpaceOracleCap);

  SystemSize size() const noexcept { return size_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<ModeOccupations> &basis() const noexcept { return basis_; }
  std::size_t index_of(const ModeOccupations &occ) const;

  /// sum_ij m_ij a_i^dag a_j.
  Eigen::MatrixXcd bilinear(const Eigen::Matrix3cd &m) const;
  /// a_to^dag a_from.
  Eigen::MatrixXcd hop(Mode to, Mode from) const;
  Eigen::MatrixXcd number(Mode mode) const;
  Eigen::MatrixXcd generator(Generator g) const;

  /// Spin-1 Hamiltonian written with the two-body pair-exchange term.
  Eigen::MatrixXcd hamiltonian(double q) const;
  /// 2(lambda Sx^2 - q/3 Sz) + 2(lambda Ay^2 - q/3 Az).
  Eigen::MatrixXcd pseudospin_hamiltonian(double q) const;

  /// Embed a D=0 ladder state.
  Eigen::VectorXcd embed(const SpinorState &s) const;

private:
  SystemSize size_;
  std::vector<ModeOccupations> basis_;
  std::unordered_map<long long, std::size_t> index_;
};

struct IdentityOffset {
  double offset;    // H - H_pseudospin = offset * 1 + residual
  double deviation; // max |residual| entry
};

/// Compares the two-body Hamiltonian with its pseudospin form.
IdentityOffset pseudospin_identity_deviation(SystemSize n, double q);

/// <psi|A B|psi> for dense operators.
std::complex<double> expectation(const Eigen::MatrixXcd &op, const Eigen::VectorXcd &psi);

/// (Delta A)^2 for a Hermitian A.
double variance(const Eigen::MatrixXcd &op, const Eigen::VectorXcd &psi);

} // namespace spinor
