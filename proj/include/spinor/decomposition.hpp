#pragma once

// Rewriting D=0 states in the modes (a0, g, h) with
//   g^dag = (a1^dag + a-1^dag)/sqrt2,  h^dag = (a1^dag - a-1^dag)/sqrt2.
// Since a1^dag a-1^dag = (g^dag^2 - h^dag^2)/2, the ladder state |k> spreads
// over (N_g, N_h) = (2(k-j), 2j) with weight
//   2^-k C(k,j) (-1)^j sqrt((2k-2j)! (2j)!) / k!.
// Tracing out h leaves a mixture of two-mode states of (a0, g), in which Sx
// acts as an ordinary two-mode spin.

#include "spinor/fockspace.hpp"

#include <vector>

namespace spinor {

/// Amplitudes over (N_h, N_g); N_0 = N - N_g - N_h.
class GHState {
public:
  GHState(SystemSize n, std::vector<std::vector<complex>> rows);

  SystemSize size() const noexcept { return size_; }
  int atoms() const noexcept { return size_.atoms(); }
  /// Amplitude of |N_0, N_g, N_h>; zero outside 0 <= N_g + N_h <= N.
  complex amplitude(int n_g, int n_h) const;
  /// Row of amplitudes over N_g = 0..N - N_h.
  const std::vector<complex> &row(int n_h) const { return rows_.at(static_cast<std::size_t>(n_h)); }

private:
  SystemSize size_;
  std::vector<std::vector<complex>> rows_; // rows_[N_h][N_g]
};

/// Signed weight <N_g=2(k-j), N_h=2j | k>, log-domain with tracked sign.
double gh_weight(int k, int j);

GHState to_gh_basis(const SpinorState &s);

/// Inverse map back to the ladder (projects onto the D=0 image).
SpinorState from_gh_basis(const GHState &g);

/// P(N_h), N_h = 0..N.
std::vector<double> h_number_distribution(const GHState &g);

struct ConditionalState {
  int n_h;
  double probability;
  /// Amplitudes over N_g = 0..N - N_h of |N_0 = N - N_h - N_g, N_g>.
  std::vector<complex> amplitudes;

  int particles() const { return static_cast<int>(amplitudes.size()) - 1; }
};

/// Renormalized N_h slice. Throws std::invalid_argument if P(N_h) < 1e-300
/// or N_h is out of range.
ConditionalState conditional_state(const GHState &g, int n_h);

/// 4 Var(Sx) of the two-mode state, Sx = (a0^dag g + g^dag a0)/2.
double conditional_qfi(const ConditionalState &c);

struct DecompositionIdentity {
  double lhs; // F_Q[psi, Sx]
  double rhs; // sum_{N_h} P(N_h) F_Q[phi_{N_h}, Sx]
};

DecompositionIdentity decomposition_identity(const SpinorState &s);

struct HusimiGrid {
  std::vector<double> theta; // polar angle, 0 means all particles in a0
  std::vector<double> phi;
  std::vector<double> values; // row-major, theta-major
  double at(std::size_t i, std::size_t j) const { return values[i * phi.size() + j]; }
};

/// Q(theta, phi) = |<CSS(theta, phi)|phi_{N_h}>|^2 with the spin-coherent
/// state of n = N - N_h particles in (a0, g), amplitude on N_g = m
///   sqrt(C(n,m)) cos^(n-m)(theta/2) sin^m(theta/2) e^{i m phi}.
/// Sx points along (theta, phi) = (pi/2, 0). Throws for n < 1.
HusimiGrid husimi(const ConditionalState &c, int n_theta = 181, int n_phi = 361);

/// The sector list used when none is given: {0, N/4, N/2, 3N/4} rounded down
/// to even values.
std::vector<int> default_h_sectors(SystemSize n);

} // namespace spinor
