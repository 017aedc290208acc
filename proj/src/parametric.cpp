#include "spinor/parametric.hpp"

#include "spinor/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinor {

namespace {

constexpr complex kI(0.0, 1.0);

// (tau sinh(t/tau), cosh(t/tau)) continued through Delta <= 0.
std::pair<double, double> hyperbolic_pair(double t, double delta) {
  if (delta > 0.0) {
    const double r = std::sqrt(delta);
    return {std::sinh(r * t) / r, std::cosh(r * t)};
  }
  if (delta < 0.0) {
    const double r = std::sqrt(-delta);
    return {std::sin(r * t) / r, std::cos(r * t)};
  }
  return {t, 1.0};
}

} // namespace

QuadraticModel QuadraticModel::at(SystemSize n, double q) {
  const double lambda = coupling_lambda(n);
  const double alpha = q + lambda * (n.atoms() - 0.5);
  const double beta = n.atoms() * lambda;
  return {n.atoms(), q, alpha, beta, beta * beta - alpha * alpha};
}

double resonance_q(SystemSize n) { return -coupling_lambda(n) * (n.atoms() - 0.5); }

double growth_function(double t, double delta) {
  const double s = hyperbolic_pair(t, delta).first;
  return s * s;
}

double mean_pairs(const QuadraticModel &m, double t) {
  if (t < 0.0)
    throw std::invalid_argument("mean_pairs requires t >= 0");
  return m.beta * m.beta * growth_function(t, m.delta);
}

double pair_spread(const QuadraticModel &m, double t) {
  const double n = mean_pairs(m, t);
  return std::sqrt(n * (n + 1.0));
}

AnalyticQfi qfi_analytic(const QuadraticModel &m, double t) {
  const double n = mean_pairs(m, t);
  return {1.0 + 2.0 * (n + std::sqrt(n * (n + 1.0))), n <= 0.01 * m.atoms};
}

CovarianceDirections covariance_directions(const QuadraticModel &m, double t) {
  const double n = mean_pairs(m, t);
  const double spread_g = std::sqrt(2.0 * n * (n + 1.0));
  CovarianceDirections out{};
  out.lambda_plus_xy = m.atoms / 4.0 * (1.0 + 2.0 * n + std::sqrt(2.0) * spread_g);
  out.lambda_minus_xy = m.atoms / 4.0 * (1.0 + 2.0 * n - std::sqrt(2.0) * spread_g);
  out.lambda_z = spread_g * spread_g / 4.0;
  double r = n > 0.0 ? std::sqrt(2.0) * m.alpha * m.alpha * n / (m.beta * m.beta * spread_g) : 0.0;
  r = std::clamp(r, -1.0, 1.0);
  const double s = 1.0 / std::sqrt(2.0);
  out.u_g = {s * std::sqrt(1.0 + r), -s * std::sqrt(1.0 - r), 0.0};
  out.u_h = {-out.u_g[1], out.u_g[0], 0.0};
  return out;
}

double squeezing_parameter(const QuadraticModel &m, double t) {
  const auto [s, ch] = hyperbolic_pair(t, m.delta);
  const complex big_c = ch + kI * m.alpha * s;
  return std::abs(m.beta * s / big_c);
}

std::vector<complex> squeezed_vacuum(const QuadraticModel &m, double t, int n_max, int eps) {
  if (n_max < 0)
    throw std::invalid_argument("n_max must be non-negative");
  const auto [s, ch] = hyperbolic_pair(t, m.delta);
  const complex big_c = ch + kI * m.alpha * s;
  const complex c = -kI * m.beta * s / big_c;
  const double c_abs = std::abs(c);
  const complex phase = c_abs > 0.0 ? c / c_abs : complex(1.0, 0.0);
  std::vector<complex> out(static_cast<std::size_t>(n_max + 1));
  complex ph = 1.0;
  for (int k = 0; k <= n_max; ++k) {
    const double log_mag = 0.5 * (std::lgamma(2.0 * k + 1.0) - 2.0 * std::lgamma(k + 1.0)) +
                           (k > 0 ? k * std::log(0.5 * c_abs) : 0.0) - 0.5 * std::log(std::abs(big_c));
    const double sign = (eps < 0 && (k & 1)) ? -1.0 : 1.0;
    out[static_cast<std::size_t>(k)] = (c_abs == 0.0 && k > 0) ? 0.0 : sign * std::exp(log_mag) * ph;
    ph *= phase;
  }
  return out;
}

double generating_function_series(double c_abs, double z, int n_max) {
  double sum = 0.0;
  for (int k = 0; k <= n_max; ++k) {
    if (k > 0 && c_abs == 0.0)
      break;
    const double log_term = std::lgamma(2.0 * k + 1.0) - 2.0 * std::lgamma(k + 1.0) +
                            (k > 0 ? 2.0 * k * std::log(0.5 * c_abs) : 0.0) + k * z;
    sum += std::exp(log_term);
  }
  return sum;
}

double generating_function_closed(double c_abs, double z) {
  const double x = c_abs * c_abs * std::exp(z);
  if (!(x < 1.0))
    throw std::invalid_argument("generating function diverges for |c|^2 e^z >= 1");
  return 1.0 / std::sqrt(1.0 - x);
}

std::vector<QuenchComparison> compare_with_exact(SystemSize n, double q, const std::vector<double> &t_grid,
                                                 const PropagatorConfig &config) {
  const auto model = QuadraticModel::at(n, q);
  SamplingOptions opts;
  opts.ground_fidelity = false;
  const auto traj = evolve_quench_at(n, q, t_grid, config, opts);
  std::vector<QuenchComparison> out;
  for (const auto &s : traj.samples) {
    const auto a = qfi_analytic(model, s.t);
    out.push_back({s.t, a.per_particle, s.qfi_block, std::abs(s.qfi_block - a.per_particle) / a.per_particle,
                   mean_pairs(model, s.t), s.mean_side, a.valid});
  }
  return out;
}

std::vector<QuenchComparison> compare_with_exact(SystemSize n, const std::vector<double> &t_grid,
                                                 const PropagatorConfig &config) {
  return compare_with_exact(n, resonance_q(n), t_grid, config);
}

} // namespace spinor
