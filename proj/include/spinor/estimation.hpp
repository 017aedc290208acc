#pragma once

// Classical Fisher information of a D = N+ - N- measurement after an
// interferometric rotation of |CBA> or |TF>.
//
// Both states live in a single spin multiplet that the optimal generator
// never leaves, and each D value appears once in that multiplet:
//   CBA: j = N,   D = -m, generator Sx = Lx/2;
//   TF:  j = N/2, D = 2m, generator Jx.
// Rotations are therefore exp(-i theta_eff Jx^(j)) acting on |j, 0>.

#include "spinor/cba.hpp"
#include "spinor/fockspace.hpp"
#include "spinor/fullspace.hpp"

#include <optional>
#include <vector>

namespace spinor {

struct SpinMultiplet {
  StateKind kind;
  int atoms;
  int twice_j;        // 2j
  double angle_scale; // theta_eff / theta

  static SpinMultiplet for_state(StateKind kind, SystemSize n);
  /// Outcome D of the magnetic number m (given as 2m).
  int outcome_of(int twice_m) const;
  int dim() const { return twice_j + 1; }
};

/// P(D|theta) and dP/dtheta over D = -N..N (index D + N).
struct OutcomeDistribution {
  int atoms = 0;
  double theta = 0.0;
  std::vector<double> p;
  std::vector<double> dp;

  double prob(int d) const { return p.at(static_cast<std::size_t>(d + atoms)); }
  double dprob(int d) const { return dp.at(static_cast<std::size_t>(d + atoms)); }
};

/// Multiplet amplitudes exp(-i theta_eff Jx)|j,0>, index m + j.
std::vector<complex> rotated_amplitudes(const SpinMultiplet &mult, double theta);

OutcomeDistribution rotate_and_distribute(StateKind kind, SystemSize n, double theta);

struct FisherInformation {
  double value = 0.0;
  /// An outcome below the probability floor had a derivative above 1e-8.
  bool singular = false;
};

inline constexpr double kProbabilityFloor = 1e-300;

FisherInformation classical_fisher(const OutcomeDistribution &dist);

/// Convolution of P and dP with the Gaussian of variance 2 sigma^2 sampled at
/// integer offsets; each source column is renormalized over D in [-N, N].
OutcomeDistribution apply_detection_noise(const OutcomeDistribution &dist, double sigma);

/// Scan grid for theta: log-spaced on [1e-4, 0.2], then linear up to pi/2.
std::vector<double> default_theta_grid();

struct PeakFisher {
  double theta;
  double fisher;
};

/// max over theta of F(theta) at noise sigma: grid scan followed by
/// golden-section refinement (skipped for sigma = 0 where F is flat).
PeakFisher peak_fisher(StateKind kind, SystemSize n, double sigma);

/// Largest sigma for which peak_fisher still exceeds N, by bisection to 1e-3.
double sigma_max(StateKind kind, SystemSize n);

/// Least-squares slope of log F* against log sigma.
double fisher_decay_exponent(StateKind kind, SystemSize n, const std::vector<double> &sigmas);

/// The optimal generator family of the given state as a single-particle
/// matrix: e^{2i phi Jz} Sx e^{-2i phi Jz} (CBA) or e^{i phi Jz} Jx e^{-i phi Jz} (TF).
Eigen::Matrix3cd optimal_generator_matrix(StateKind kind, double phi);

/// P(D|theta) computed in the full three-mode space with dense matrices.
OutcomeDistribution full_space_outcome_distribution(StateKind kind, SystemSize n, double theta,
                                                    double phi = 0.0);

/// Same, for an arbitrary single-particle generator matrix.
OutcomeDistribution full_space_outcome_distribution(StateKind kind, SystemSize n, double theta,
                                                    const Eigen::Matrix3cd &generator);

/// max over (N+, N-) of |Re <psi(theta)| P_{N+,N-} R |psi(theta)>| with
/// psi(theta) = exp(-i theta R) psi. R defaults to the optimal generator.
/// Throws std::invalid_argument above the full-space cap.
double optimality_residual(StateKind kind, SystemSize n, double theta,
                           std::optional<Generator> generator = std::nullopt);

/// Wigner small-d element d^j_{m,0}(beta) from associated Legendre
/// functions; integer j only, usable to j of about 50.
double wigner_small_d_m0(int j, int m, double beta);

} // namespace spinor
