#pragma once

// Short-time pair creation after a quench from |k=0>, in the quadratic
// su(1,1) approximation a0 ~ sqrt(N):
//   H_{g/h} = 2 alpha L0 +- beta (L+ + L-),
//   alpha = q + lambda (N - 1/2),  beta = N lambda,  Delta = beta^2 - alpha^2.
// With s(t; Delta) = sinh^2(sqrt(Delta) t)/Delta (continued to t^2 and
// sin^2(sqrt(-Delta) t)/(-Delta)), <N+> = <N_g> = beta^2 s.

#include "spinor/dynamics.hpp"
#include "spinor/fockspace.hpp"
#include "spinor/propagator.hpp"

#include <array>
#include <vector>

namespace spinor {

struct QuadraticModel {
  int atoms;
  double q;
  double alpha;
  double beta;
  double delta; // beta^2 - alpha^2

  static QuadraticModel at(SystemSize n, double q);
};

/// q_r = -lambda (N - 1/2) = (N - 1/2)/(2N), where alpha = 0.
double resonance_q(SystemSize n);

/// s(t; Delta), continuous through Delta = 0.
double growth_function(double t, double delta);

/// <N+> = <N-> = <N_g> = <N_h> = beta^2 s(t; Delta).
double mean_pairs(const QuadraticModel &m, double t);

/// Delta N+ = sqrt(<N+>(<N+>+1)).
double pair_spread(const QuadraticModel &m, double t);

struct AnalyticQfi {
  double per_particle; // 1 + 2 (<N+> + Delta N+)
  bool valid;          // <N+> <= 0.01 N
};

AnalyticQfi qfi_analytic(const QuadraticModel &m, double t);

struct CovarianceDirections {
  double lambda_plus_xy;
  double lambda_minus_xy;
  double lambda_z;
  std::array<double, 3> u_g; // over (Sx, Sy, Sz)
  std::array<double, 3> u_h; // over (Ax, Ay, Az)
};

CovarianceDirections covariance_directions(const QuadraticModel &m, double t);

/// Single-mode squeezed vacuum of the g (or h) mode from the disentangling
/// formula: amplitudes on |2n>, n = 0..n_max,
///   eps^n sqrt(C(2n,n)) (c/2)^n / sqrt|C|,
/// c = -i beta S / C, C = cosh + i alpha S, S = tau sinh(t/tau) continued.
std::vector<complex> squeezed_vacuum(const QuadraticModel &m, double t, int n_max, int eps = 1);

/// |c| of the squeezed vacuum at time t.
double squeezing_parameter(const QuadraticModel &m, double t);

/// sum_{n <= n_max} C(2n,n) (|c|/2)^(2n) e^(n z), summed in log-domain.
double generating_function_series(double c_abs, double z, int n_max);

/// 1 / sqrt(1 - |c|^2 e^z).
double generating_function_closed(double c_abs, double z);

struct QuenchComparison {
  double t;
  double analytic;    // F_Q/N from the closed form
  double exact;       // 4 (A + |B|)/N from the exact state
  double relative_deviation;
  double mean_pairs_analytic;
  double mean_pairs_exact;
  bool valid;
};

/// Exact quench at q (default resonance) against the analytic law on t_grid.
std::vector<QuenchComparison> compare_with_exact(SystemSize n, const std::vector<double> &t_grid,
                                                 const PropagatorConfig &config);
std::vector<QuenchComparison> compare_with_exact(SystemSize n, double q, const std::vector<double> &t_grid,
                                                 const PropagatorConfig &config);

} // namespace spinor
