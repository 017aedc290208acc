#pragma once

// Quantum Fisher information of D=0 states under collective su(3) rotations.
//
// For a pure state the QFI of the rotation exp(-i theta u.G) is 4 u^T Gamma u,
// with Gamma the symmetrized covariance matrix of the eight collective
// Gell-Mann operators G_1..G_8. On the D=0 ladder Gamma splits into the
// blocks (G1,G2,G6,G7) + (G3,G8) + G4 + G5, each given by O(N) sums over the
// ladder amplitudes, so nothing here builds an operator matrix.

#include "spinor/fockspace.hpp"
#include "spinor/fullspace.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace spinor {

using GellMannVector = Eigen::Matrix<double, 8, 1>;
using GellMannMatrix = Eigen::Matrix<double, 8, 8>;

struct CovarianceCoefficients {
  double A;  // diagonal of the (G1,G2,G6,G7) block
  complex B; // off-diagonal coupling of that block
};

/// A = (N + sum_k |c_k|^2 k (2N - 4k - 1)) / 4,
/// B = sum_k c_k^* c_{k+1} (k+1) sqrt((N-2k)(N-2k-1)) / 2.
CovarianceCoefficients coefficients_AB(const SpinorState &s);

/// Which closed-form eigenbranch of Gamma a direction belongs to.
enum class CovarianceBranch {
  lambda_plus,  // A + |B|, twice; Sx/Ay for real positive B
  lambda_minus, // A - |B|, twice; Sy/Ax for real positive B
  lambda_zero,  // 0 on (G3, G8)
  lambda_one,   // 3 Var(k) on (G3, G8)
  g4,           // Jx
  g5,           // -Jy
};

std::string branch_label(CovarianceBranch b);

struct CovarianceMode {
  double eigenvalue;
  GellMannVector direction;
  CovarianceBranch branch;
};

struct GellMannCovariance {
  double A = 0.0;
  complex B = 0.0;
  Eigen::Matrix4d block4;  // over (G1, G2, G6, G7)
  Eigen::Matrix2d block2;  // over (G3, G8)
  double var45 = 0.0;      // (Delta G4)^2 = (Delta G5)^2
  double side_variance = 0.0; // Var(k) = Var(N+)

  double lambda_plus() const { return A + std::abs(B); }
  double lambda_minus() const { return A - std::abs(B); }
  double lambda_one() const { return 3.0 * side_variance; }

  /// Assembled 8x8 matrix in G1..G8 order.
  GellMannMatrix full() const;

  /// All eight eigenpairs from the closed forms, in the order
  /// u+(1), u+(2), u-(1), u-(2), u0, u1, G4, G5.
  std::vector<CovarianceMode> modes() const;
};

/// Names the generator pair spanning a branch of this covariance. The
/// (G1,G2,G6,G7) branches read Sx/Ay or Sy/Ax only when B is real; otherwise
/// they are reported as rotated S/A combinations.
std::string direction_label(const GellMannCovariance &cov, CovarianceBranch b);

GellMannCovariance covariance_matrix(const SpinorState &s);

struct OptimalRotation {
  double qfi;                              // 4 x largest eigenvalue
  std::vector<GellMannVector> directions;  // orthonormal basis of its eigenspace
  std::vector<CovarianceBranch> branches;  // branch of each direction
};

/// Relative tolerance for treating covariance eigenvalues as degenerate.
inline constexpr double kDegeneracyTolerance = 1e-9;

OptimalRotation qfi_optimal(const SpinorState &s);
OptimalRotation qfi_optimal(const GellMannCovariance &cov);

/// 4 u^T Gamma u; throws std::invalid_argument unless |u| = 1.
double qfi_direction(const SpinorState &s, const GellMannVector &u);
double qfi_direction(const GellMannCovariance &cov, const GellMannVector &u);

/// Coordinates of a named collective generator in the G1..G8 basis
/// (dropping its multiple of the total number operator). For example
/// Sx = (G1+G6)/sqrt2, Ay = (G2+G7)/sqrt2, Jx = G4, Jy = -G5.
GellMannVector gell_mann_direction(Generator g);

/// 4 (Delta R)^2 of the named generator, evaluated with dense matrices in the
/// full three-mode space. Throws std::invalid_argument for N above the cap.
double full_space_variance_oracle(const SpinorState &s, Generator g);

/// Symmetrized Gell-Mann covariance from dense matrices in the full space.
GellMannMatrix full_space_covariance_oracle(const SpinorState &s);

} // namespace spinor
