#include "spinor/propagator.hpp"

#include "spinor/errors.hpp"
#include "spinor/hamiltonian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace spinor {

namespace {

constexpr complex kI(0.0, 1.0);

double norm2(const std::vector<complex> &v) {
  double s = 0.0;
  for (const auto &x : v)
    s += std::norm(x);
  return std::sqrt(s);
}

// y = (T - c) x / r
void apply_scaled(const SymTridiagonal &t, double c, double r, const std::vector<complex> &x,
                  std::vector<complex> &y) {
  t.apply(std::span<const complex>(x), std::span<complex>(y));
  for (std::size_t i = 0; i < x.size(); ++i)
    y[i] = (y[i] - c * x[i]) / r;
}

} // namespace

std::string method_name(PropagatorMethod m) {
  switch (m) {
  case PropagatorMethod::chebyshev: return "chebyshev";
  case PropagatorMethod::krylov_expm: return "krylov_expm";
  case PropagatorMethod::rk_adaptive: return "rk_adaptive";
  }
  return "?";
}

PropagatorMethod parse_method(const std::string &s) {
  if (s == "chebyshev")
    return PropagatorMethod::chebyshev;
  if (s == "krylov_expm" || s == "krylov")
    return PropagatorMethod::krylov_expm;
  if (s == "rk_adaptive" || s == "rk")
    return PropagatorMethod::rk_adaptive;
  throw std::invalid_argument("unknown propagator method '" + s + "'");
}

double spectral_spread(const SymTridiagonal &t) {
  const auto [lo, hi] = t.spectral_bounds();
  return 0.5 * (hi - lo);
}

void expm_chebyshev(const SymTridiagonal &t, double tau, std::vector<complex> &psi) {
  const auto [lo, hi] = t.spectral_bounds();
  const double c = 0.5 * (hi + lo);
  const double r = 0.5 * (hi - lo);
  const complex phase = std::exp(-kI * tau * c);
  if (r * std::abs(tau) < 1e-300) {
    for (auto &x : psi)
      x *= phase;
    return;
  }
  const double x = r * tau;
  const std::size_t n = psi.size();
  std::vector<complex> prev = psi, cur(n), next(n), out(n);
  apply_scaled(t, c, r, prev, cur);

  const double j0 = std::cyl_bessel_j(0.0, std::abs(x));
  for (std::size_t i = 0; i < n; ++i)
    out[i] = j0 * prev[i];
  // exp(-i x y) = J0(x) + 2 sum_k (-i)^k J_k(x) T_k(y), and J_k(-x) = (-1)^k J_k(x).
  const int kmax = static_cast<int>(std::abs(x)) + 200;
  complex mi_k = -kI;
  for (int k = 1; k <= kmax; ++k) {
    double jk = std::cyl_bessel_j(static_cast<double>(k), std::abs(x));
    if (x < 0 && (k & 1))
      jk = -jk;
    const complex coef = 2.0 * mi_k * jk;
    for (std::size_t i = 0; i < n; ++i)
      out[i] += coef * cur[i];
    if (k > std::abs(x) && std::abs(jk) < 1e-18)
      break;
    apply_scaled(t, c, r, cur, next);
    for (std::size_t i = 0; i < n; ++i)
      next[i] = 2.0 * next[i] - prev[i];
    std::swap(prev, cur);
    std::swap(cur, next);
    mi_k *= -kI;
  }
  for (std::size_t i = 0; i < n; ++i)
    psi[i] = phase * out[i];
}

namespace {

// One Lanczos attempt over time tau. Returns the error estimate and writes the
// propagated vector into out.
double lanczos_step(const SymTridiagonal &t, double tau, const std::vector<complex> &psi,
                    int mmax, std::vector<complex> &out) {
  const std::size_t n = psi.size();
  const double beta0 = norm2(psi);
  std::vector<std::vector<complex>> v;
  v.push_back(psi);
  for (auto &x : v[0])
    x /= beta0;
  std::vector<double> alpha, beta;
  std::vector<complex> w(n);
  int m = 0;
  double beta_last = 0.0;
  for (int j = 0; j < std::min<int>(mmax, static_cast<int>(n)); ++j) {
    t.apply(std::span<const complex>(v[j]), std::span<complex>(w));
    // Full reorthogonalization, twice for safety.
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i <= j; ++i) {
        complex h = 0.0;
        for (std::size_t l = 0; l < n; ++l)
          h += std::conj(v[i][l]) * w[l];
        for (std::size_t l = 0; l < n; ++l)
          w[l] -= h * v[i][l];
        if (pass == 0 && i == j)
          alpha.push_back(h.real());
        else if (i == j)
          alpha.back() += h.real();
      }
    }
    m = j + 1;
    beta_last = norm2(w);
    if (beta_last < 1e-13 * std::max(1.0, std::abs(alpha.back())))
      break;
    if (j + 1 < mmax && j + 1 < static_cast<int>(n)) {
      beta.push_back(beta_last);
      v.push_back(w);
      for (auto &x : v.back())
        x /= beta_last;
    }
  }
  SymTridiagonal small(std::vector<double>(alpha.begin(), alpha.begin() + m),
                       std::vector<double>(beta.begin(), beta.begin() + (m - 1)));
  const auto eig = eigen_decomposition(small);
  // y = exp(-i tau T_m) e1
  std::vector<complex> y(m, 0.0);
  for (int p = 0; p < m; ++p) {
    const complex f = std::exp(-kI * tau * eig.values[p]) * eig.vectors[p][0];
    for (int i = 0; i < m; ++i)
      y[i] += f * eig.vectors[p][i];
  }
  out.assign(n, 0.0);
  for (int i = 0; i < m; ++i)
    for (std::size_t l = 0; l < n; ++l)
      out[l] += beta0 * y[i] * v[i][l];
  return beta0 * beta_last * std::abs(y[m - 1]);
}

} // namespace

void expm_krylov(const SymTridiagonal &t, double tau, std::vector<complex> &psi, int krylov_dim,
                 double tol) {
  double remaining = tau;
  double step = tau;
  std::vector<complex> out;
  int guard = 0;
  while (std::abs(remaining) > 0.0) {
    if (std::abs(step) > std::abs(remaining))
      step = remaining;
    const double err = lanczos_step(t, step, psi, krylov_dim, out);
    if (err <= tol || std::abs(step) < 1e-14 * std::abs(tau)) {
      psi.swap(out);
      remaining -= step;
    } else {
      step *= 0.5;
    }
    if (++guard > 1000000)
      throw NumericalError("Krylov exponential failed to converge");
  }
}

double default_time_step(SystemSize n, double q_lo, double q_hi) {
  const double spread = std::max(spectral_spread(build_hamiltonian(n, q_lo).matrix),
                                 spectral_spread(build_hamiltonian(n, q_hi).matrix));
  return 0.5 / std::max(spread, 1e-12);
}

Propagator::Propagator(SystemSize n, PropagatorConfig config) : size_(n), config_(config) {
  if (config_.dt < 0.0 || !(config_.tolerance > 0.0) || !(config_.norm_budget > 0.0) ||
      config_.krylov_dim < 2)
    throw std::invalid_argument("invalid propagator configuration");
}

void Propagator::exponential(double q, double tau, std::vector<complex> &psi) const {
  const auto h = build_hamiltonian(size_, q);
  if (config_.method == PropagatorMethod::krylov_expm)
    expm_krylov(h.matrix, tau, psi, config_.krylov_dim, config_.tolerance);
  else
    expm_chebyshev(h.matrix, tau, psi);
}

void Propagator::check_norm(const std::vector<complex> &psi, double t) {
  const double drift = std::abs(norm2(psi) - 1.0);
  stats_.max_norm_drift = std::max(stats_.max_norm_drift, drift);
  if (!(drift <= config_.norm_budget)) {
    std::ostringstream msg;
    msg << "norm budget exceeded: N=" << size_.atoms() << " t=" << t << " drift=" << drift
        << " budget=" << config_.norm_budget << " method=" << method_name(config_.method);
    throw NumericalError(msg.str());
  }
}

void Propagator::advance(std::vector<complex> &psi, double t0, double t1,
                         const std::function<double(double)> &q_of_t, bool constant_q) {
  if (t1 < t0)
    throw std::invalid_argument("Propagator::advance requires t1 >= t0");
  if (t1 == t0)
    return;
  if (config_.method == PropagatorMethod::rk_adaptive)
    advance_rk(psi, t0, t1, q_of_t);
  else
    advance_magnus(psi, t0, t1, q_of_t, constant_q);
}

void Propagator::advance_magnus(std::vector<complex> &psi, double t0, double t1,
                                const std::function<double(double)> &q_of_t, bool constant_q) {
  const double qa = q_of_t(t0), qb = q_of_t(t1);
  const double dt = config_.dt > 0.0 ? config_.dt
                                     : default_time_step(size_, std::min(qa, qb), std::max(qa, qb));
  const long long steps = std::max<long long>(1, static_cast<long long>(std::ceil((t1 - t0) / dt - 1e-9)));
  const double h = (t1 - t0) / static_cast<double>(steps);
  const double s3 = std::sqrt(3.0);
  const double c1 = 0.5 - s3 / 6.0, c2 = 0.5 + s3 / 6.0;
  const double a1 = 0.25 + s3 / 6.0, a2 = 0.25 - s3 / 6.0;
  for (long long s = 0; s < steps; ++s) {
    const double ts = t0 + static_cast<double>(s) * h;
    if (constant_q) {
      exponential(qa, h, psi);
    } else {
      const double q1 = q_of_t(ts + c1 * h), q2 = q_of_t(ts + c2 * h);
      exponential(2.0 * (a1 * q1 + a2 * q2), 0.5 * h, psi);
      exponential(2.0 * (a2 * q1 + a1 * q2), 0.5 * h, psi);
    }
    ++stats_.steps;
    check_norm(psi, ts + h);
  }
}

void Propagator::advance_rk(std::vector<complex> &psi, double t0, double t1,
                            const std::function<double(double)> &q_of_t) {
  // Dormand-Prince 5(4) tableau.
  static constexpr std::array<double, 7> c{0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
  static constexpr double a[7][6] = {
      {},
      {1.0 / 5},
      {3.0 / 40, 9.0 / 40},
      {44.0 / 45, -56.0 / 15, 32.0 / 9},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
      {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
  static constexpr std::array<double, 7> b5{35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192,
                                            -2187.0 / 6784, 11.0 / 84, 0.0};
  static constexpr std::array<double, 7> b4{5179.0 / 57600, 0.0, 7571.0 / 16695, 393.0 / 640,
                                            -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};
  const std::size_t n = psi.size();
  std::array<std::vector<complex>, 7> k;
  for (auto &v : k)
    v.resize(n);
  std::vector<complex> stage(n), trial(n);

  auto rhs = [&](double t, const std::vector<complex> &x, std::vector<complex> &out) {
    const auto h = build_hamiltonian(size_, q_of_t(t));
    h.matrix.apply(std::span<const complex>(x), std::span<complex>(out));
    for (auto &v : out)
      v *= -kI;
  };

  double t = t0;
  double h = rk_step_ > 0.0 ? rk_step_
                            : 0.1 / std::max(1e-12, spectral_spread(build_hamiltonian(size_, q_of_t(t0)).matrix));
  if (config_.dt > 0.0)
    h = std::min(h, config_.dt);
  while (t < t1) {
    const bool last = t + h >= t1;
    const double step = last ? t1 - t : h;
    rhs(t, psi, k[0]);
    for (int s = 1; s < 7; ++s) {
      for (std::size_t i = 0; i < n; ++i) {
        complex acc = 0.0;
        for (int j = 0; j < s; ++j)
          acc += a[s][j] * k[j][i];
        stage[i] = psi[i] + step * acc;
      }
      rhs(t + c[s] * step, stage, k[s]);
    }
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      complex hi = 0.0, lo = 0.0;
      for (int s = 0; s < 7; ++s) {
        hi += b5[s] * k[s][i];
        lo += b4[s] * k[s][i];
      }
      trial[i] = psi[i] + step * hi;
      err += std::norm(step * (hi - lo));
    }
    err = std::sqrt(err) / config_.tolerance;
    if (err <= 1.0) {
      psi.swap(trial);
      t = last ? t1 : t + step;
      ++stats_.steps;
      check_norm(psi, t);
    } else {
      ++stats_.rejected;
    }
    const double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    const double hnew = step * std::clamp(factor, 0.2, 5.0);
    if (!last || err > 1.0)
      h = hnew;
    if (config_.dt > 0.0)
      h = std::min(h, config_.dt);
    if (h < config_.min_step) {
      std::ostringstream msg;
      msg << "adaptive step underflow: N=" << size_.atoms() << " t=" << t << " h=" << h;
      throw NumericalError(msg.str());
    }
  }
  rk_step_ = h;
}

} // namespace spinor
