#include "spinor/estimation.hpp"

#include "spinor/propagator.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spinor {

namespace {

constexpr complex kI(0.0, 1.0);

SymTridiagonal spin_x(int twice_j) {
  const double j = 0.5 * twice_j;
  std::vector<double> d(static_cast<std::size_t>(twice_j + 1), 0.0);
  std::vector<double> e(static_cast<std::size_t>(twice_j));
  for (int i = 0; i < twice_j; ++i) {
    const double m = -j + i;
    e[static_cast<std::size_t>(i)] = 0.5 * std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  return SymTridiagonal(std::move(d), std::move(e));
}

double fisher_at(StateKind kind, SystemSize n, double theta, double sigma) {
  return classical_fisher(apply_detection_noise(rotate_and_distribute(kind, n, theta), sigma)).value;
}

} // namespace

SpinMultiplet SpinMultiplet::for_state(StateKind kind, SystemSize n) {
  if (kind == StateKind::cba)
    return {kind, n.atoms(), 2 * n.atoms(), 0.5};
  if (!n.even())
    throw std::invalid_argument("twin-Fock state requires even N");
  return {kind, n.atoms(), n.atoms(), 1.0};
}

int SpinMultiplet::outcome_of(int twice_m) const {
  return kind == StateKind::cba ? -twice_m / 2 : twice_m;
}

std::vector<complex> rotated_amplitudes(const SpinMultiplet &mult, double theta) {
  std::vector<complex> a(static_cast<std::size_t>(mult.dim()), 0.0);
  a[static_cast<std::size_t>(mult.twice_j / 2)] = 1.0;
  expm_chebyshev(spin_x(mult.twice_j), mult.angle_scale * theta, a);
  return a;
}

OutcomeDistribution rotate_and_distribute(StateKind kind, SystemSize n, double theta) {
  const auto mult = SpinMultiplet::for_state(kind, n);
  const auto a = rotated_amplitudes(mult, theta);
  std::vector<complex> jxa(a.size());
  spin_x(mult.twice_j).apply(std::span<const complex>(a), std::span<complex>(jxa));

  OutcomeDistribution out;
  out.atoms = n.atoms();
  out.theta = theta;
  out.p.assign(static_cast<std::size_t>(2 * n.atoms() + 1), 0.0);
  out.dp.assign(out.p.size(), 0.0);
  for (int i = 0; i < mult.dim(); ++i) {
    const int twice_m = 2 * i - mult.twice_j;
    const auto idx = static_cast<std::size_t>(mult.outcome_of(twice_m) + n.atoms());
    const complex ai = a[static_cast<std::size_t>(i)];
    const complex dai = -kI * mult.angle_scale * jxa[static_cast<std::size_t>(i)];
    out.p[idx] = std::norm(ai);
    out.dp[idx] = 2.0 * (std::conj(ai) * dai).real();
  }
  return out;
}

FisherInformation classical_fisher(const OutcomeDistribution &dist) {
  FisherInformation f;
  for (std::size_t i = 0; i < dist.p.size(); ++i) {
    if (dist.p[i] >= kProbabilityFloor)
      f.value += dist.dp[i] * dist.dp[i] / dist.p[i];
    else if (std::abs(dist.dp[i]) > 1e-8)
      f.singular = true;
  }
  return f;
}

OutcomeDistribution apply_detection_noise(const OutcomeDistribution &dist, double sigma) {
  if (!(sigma >= 0.0))
    throw std::invalid_argument("noise sigma must be non-negative");
  if (sigma == 0.0)
    return dist;
  const int n = dist.atoms;
  // exp(-x^2 / (4 sigma^2)) is below 1e-17 beyond 13 sigma.
  const int reach = static_cast<int>(std::ceil(13.0 * sigma)) + 1;
  OutcomeDistribution out = dist;
  std::fill(out.p.begin(), out.p.end(), 0.0);
  std::fill(out.dp.begin(), out.dp.end(), 0.0);
  std::vector<double> w;
  for (int src = -n; src <= n; ++src) {
    const auto s = static_cast<std::size_t>(src + n);
    if (dist.p[s] == 0.0 && dist.dp[s] == 0.0)
      continue;
    const int lo = std::max(-n, src - reach), hi = std::min(n, src + reach);
    w.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
    double total = 0.0;
    for (int d = lo; d <= hi; ++d) {
      const double x = d - src;
      const double v = std::exp(-x * x / (4.0 * sigma * sigma));
      w[static_cast<std::size_t>(d - lo)] = v;
      total += v;
    }
    for (int d = lo; d <= hi; ++d) {
      const double v = w[static_cast<std::size_t>(d - lo)] / total;
      out.p[static_cast<std::size_t>(d + n)] += v * dist.p[s];
      out.dp[static_cast<std::size_t>(d + n)] += v * dist.dp[s];
    }
  }
  return out;
}

std::vector<double> default_theta_grid() {
  std::vector<double> g;
  constexpr int kLog = 48, kLin = 40;
  const double a = std::log(1e-4), b = std::log(0.2);
  for (int i = 0; i < kLog; ++i)
    g.push_back(std::exp(a + (b - a) * i / (kLog - 1)));
  for (int i = 1; i <= kLin; ++i)
    g.push_back(0.2 + (std::numbers::pi / 2 - 0.2) * i / kLin);
  return g;
}

PeakFisher peak_fisher(StateKind kind, SystemSize n, double sigma) {
  const auto grid = default_theta_grid();
  std::vector<double> f(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    f[i] = fisher_at(kind, n, grid[i], sigma);
  const auto best = static_cast<std::size_t>(std::max_element(f.begin(), f.end()) - f.begin());
  if (sigma == 0.0) {
    // Flat in theta: report the first grid point attaining the plateau.
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (f[i] >= f[best] * (1.0 - 1e-9))
        return {grid[i], f[i]};
  }
  double lo = grid[best == 0 ? 0 : best - 1];
  double hi = grid[std::min(best + 1, grid.size() - 1)];
  PeakFisher peak{grid[best], f[best]};
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = fisher_at(kind, n, x1, sigma), f2 = fisher_at(kind, n, x2, sigma);
  while (hi - lo > 1e-7 * hi) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = fisher_at(kind, n, x2, sigma);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = fisher_at(kind, n, x1, sigma);
    }
  }
  for (auto [x, v] : {std::pair{x1, f1}, std::pair{x2, f2}})
    if (v > peak.fisher)
      peak = {x, v};
  return peak;
}

double sigma_max(StateKind kind, SystemSize n) {
  if (n.atoms() < 4)
    throw std::invalid_argument("sigma_max requires N >= 4");
  const double sql = n.atoms();
  auto excess = [&](double s) { return peak_fisher(kind, n, s).fisher - sql; };
  double lo = 0.0, hi = 0.5 * std::sqrt(sql);
  while (excess(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double fisher_decay_exponent(StateKind kind, SystemSize n, const std::vector<double> &sigmas) {
  if (sigmas.size() < 2)
    throw std::invalid_argument("need at least two noise levels");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double s : sigmas) {
    const double x = std::log(s), y = std::log(peak_fisher(kind, n, s).fisher);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(sigmas.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

Eigen::Matrix3cd optimal_generator_matrix(StateKind kind, double phi) {
  // Single-particle Jz = diag(-1/2, 0, 1/2) in mode order (-1, 0, +1).
  const double scale = kind == StateKind::cba ? 2.0 : 1.0;
  Eigen::Matrix3cd u = Eigen::Matrix3cd::Zero();
  u(0, 0) = std::exp(-0.5 * kI * scale * phi);
  u(1, 1) = 1.0;
  u(2, 2) = std::exp(0.5 * kI * scale * phi);
  const Eigen::Matrix3cd r =
      single_particle_matrix(kind == StateKind::cba ? Generator::Sx : Generator::Jx);
  return u * r * u.adjoint();
}

OutcomeDistribution full_space_outcome_distribution(StateKind kind, SystemSize n, double theta,
                                                    const Eigen::Matrix3cd &generator) {
  const FullSpace space(n);
  const Eigen::MatrixXcd r = space.bilinear(generator);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(r);
  const Eigen::VectorXcd psi0 = space.embed(prepare_state(kind, n));
  const Eigen::VectorXcd phases = (-kI * theta * eig.eigenvalues().cast<complex>()).array().exp();
  const Eigen::VectorXcd psi =
      eig.eigenvectors() * phases.asDiagonal() * (eig.eigenvectors().adjoint() * psi0);
  const Eigen::VectorXcd dpsi = -kI * (r * psi);

  OutcomeDistribution out;
  out.atoms = n.atoms();
  out.theta = theta;
  out.p.assign(static_cast<std::size_t>(2 * n.atoms() + 1), 0.0);
  out.dp.assign(out.p.size(), 0.0);
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const auto idx = static_cast<std::size_t>(space.basis()[i].magnetization() + n.atoms());
    const auto ii = static_cast<Eigen::Index>(i);
    out.p[idx] += std::norm(psi(ii));
    out.dp[idx] += 2.0 * (std::conj(psi(ii)) * dpsi(ii)).real();
  }
  return out;
}

OutcomeDistribution full_space_outcome_distribution(StateKind kind, SystemSize n, double theta,
                                                    double phi) {
  return full_space_outcome_distribution(kind, n, theta, optimal_generator_matrix(kind, phi));
}

double optimality_residual(StateKind kind, SystemSize n, double theta,
                           std::optional<Generator> generator) {
  const FullSpace space(n);
  const Eigen::MatrixXcd r = space.bilinear(generator ? single_particle_matrix(*generator)
                                                      : optimal_generator_matrix(kind, 0.0));
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(r);
  const Eigen::VectorXcd psi0 = space.embed(prepare_state(kind, n));
  const Eigen::VectorXcd phases = (-kI * theta * eig.eigenvalues().cast<complex>()).array().exp();
  const Eigen::VectorXcd psi =
      eig.eigenvectors() * phases.asDiagonal() * (eig.eigenvectors().adjoint() * psi0);
  const Eigen::VectorXcd rpsi = r * psi;
  // At fixed N each (N+, N-) projector selects one Fock state.
  double worst = 0.0;
  for (Eigen::Index i = 0; i < psi.size(); ++i)
    worst = std::max(worst, std::abs((std::conj(psi(i)) * rpsi(i)).real()));
  return worst;
}

double wigner_small_d_m0(int j, int m, double beta) {
  if (j < 0 || std::abs(m) > j)
    throw std::invalid_argument("wigner_small_d_m0 requires |m| <= j");
  const int am = std::abs(m);
  // std::assoc_legendre omits the Condon-Shortley phase.
  const double ratio = std::exp(0.5 * (std::lgamma(j - am + 1.0) - std::lgamma(j + am + 1.0)));
  double d = ratio * std::assoc_legendre(static_cast<unsigned>(j), static_cast<unsigned>(am), std::cos(beta));
  if (am % 2 == 1)
    d = -d;
  // d^j_{-m,0} = (-1)^m d^j_{m,0}
  if (m < 0 && am % 2 == 1)
    d = -d;
  return d;
}

} // namespace spinor
