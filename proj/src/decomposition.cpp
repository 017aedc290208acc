#include "spinor/decomposition.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spinor {

namespace {

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

} // namespace

GHState::GHState(SystemSize n, std::vector<std::vector<complex>> rows) : size_(n), rows_(std::move(rows)) {
  if (rows_.size() != static_cast<std::size_t>(n.atoms() + 1))
    throw std::invalid_argument("GHState needs N+1 rows");
  for (std::size_t nh = 0; nh < rows_.size(); ++nh)
    if (rows_[nh].size() != static_cast<std::size_t>(n.atoms()) - nh + 1)
      throw std::invalid_argument("GHState row has wrong length");
}

complex GHState::amplitude(int n_g, int n_h) const {
  if (n_g < 0 || n_h < 0 || n_g + n_h > atoms())
    return 0.0;
  return rows_[static_cast<std::size_t>(n_h)][static_cast<std::size_t>(n_g)];
}

double gh_weight(int k, int j) {
  if (j < 0 || j > k)
    return 0.0;
  const double logw = -k * std::numbers::ln2 + log_binomial(k, j) +
                      0.5 * (std::lgamma(2.0 * (k - j) + 1.0) + std::lgamma(2.0 * j + 1.0)) -
                      std::lgamma(k + 1.0);
  const double w = std::exp(logw);
  return j % 2 == 0 ? w : -w;
}

GHState to_gh_basis(const SpinorState &s) {
  const int n = s.atoms();
  std::vector<std::vector<complex>> rows(static_cast<std::size_t>(n + 1));
  for (int nh = 0; nh <= n; ++nh)
    rows[static_cast<std::size_t>(nh)].assign(static_cast<std::size_t>(n - nh + 1), 0.0);
  for (int k = 0; 2 * k <= n; ++k) {
    const complex c = s[static_cast<std::size_t>(k)];
    if (c == 0.0)
      continue;
    for (int j = 0; j <= k; ++j)
      rows[static_cast<std::size_t>(2 * j)][static_cast<std::size_t>(2 * (k - j))] += gh_weight(k, j) * c;
  }
  return GHState(s.size(), std::move(rows));
}

SpinorState from_gh_basis(const GHState &g) {
  const int n = g.atoms();
  std::vector<complex> c(basis_dim(g.size()), 0.0);
  for (int k = 0; 2 * k <= n; ++k)
    for (int j = 0; j <= k; ++j)
      c[static_cast<std::size_t>(k)] += gh_weight(k, j) * g.amplitude(2 * (k - j), 2 * j);
  return SpinorState(g.size(), std::move(c));
}

std::vector<double> h_number_distribution(const GHState &g) {
  std::vector<double> p(static_cast<std::size_t>(g.atoms() + 1), 0.0);
  for (int nh = 0; nh <= g.atoms(); ++nh)
    for (const auto &a : g.row(nh))
      p[static_cast<std::size_t>(nh)] += std::norm(a);
  return p;
}

ConditionalState conditional_state(const GHState &g, int n_h) {
  if (n_h < 0 || n_h > g.atoms())
    throw std::invalid_argument("N_h out of range");
  const auto &row = g.row(n_h);
  double p = 0.0;
  for (const auto &a : row)
    p += std::norm(a);
  if (p < 1e-300)
    throw std::invalid_argument("conditional state undefined: P(N_h = " + std::to_string(n_h) + ") = 0");
  ConditionalState c{n_h, p, row};
  const double scale = 1.0 / std::sqrt(p);
  for (auto &a : c.amplitudes)
    a *= scale;
  return c;
}

double conditional_qfi(const ConditionalState &c) {
  const int n = c.particles();
  if (n == 0)
    return 0.0;
  std::vector<complex> sx(c.amplitudes.size(), 0.0);
  for (int ng = 0; ng <= n; ++ng) {
    const complex a = c.amplitudes[static_cast<std::size_t>(ng)];
    const double n0 = n - ng;
    if (ng < n)
      sx[static_cast<std::size_t>(ng + 1)] += 0.5 * std::sqrt(n0 * (ng + 1.0)) * a;
    if (ng > 0)
      sx[static_cast<std::size_t>(ng - 1)] += 0.5 * std::sqrt((n0 + 1.0) * ng) * a;
  }
  complex mean = 0.0;
  double second = 0.0;
  for (std::size_t i = 0; i < sx.size(); ++i) {
    mean += std::conj(c.amplitudes[i]) * sx[i];
    second += std::norm(sx[i]);
  }
  return 4.0 * (second - std::norm(mean));
}

DecompositionIdentity decomposition_identity(const SpinorState &s) {
  // F_Q[Sx] = 4 (A + Re B); written out here to keep the two sides independent.
  const double n = s.atoms();
  double a_sum = 0.0;
  complex b = 0.0;
  for (std::size_t idx = 0; idx < s.dim(); ++idx) {
    const double k = static_cast<double>(idx);
    a_sum += std::norm(s[idx]) * k * (2.0 * n - 4.0 * k - 1.0);
    if (idx + 1 < s.dim()) {
      const double n0 = n - 2.0 * k;
      b += std::conj(s[idx]) * s[idx + 1] * (k + 1.0) * std::sqrt(n0 * (n0 - 1.0));
    }
  }
  const double lhs = (n + a_sum) + 2.0 * b.real();

  const auto g = to_gh_basis(s);
  const auto p = h_number_distribution(g);
  double rhs = 0.0;
  for (int nh = 0; nh <= s.atoms(); ++nh)
    if (p[static_cast<std::size_t>(nh)] >= 1e-300)
      rhs += p[static_cast<std::size_t>(nh)] * conditional_qfi(conditional_state(g, nh));
  return {lhs, rhs};
}

HusimiGrid husimi(const ConditionalState &c, int n_theta, int n_phi) {
  const int n = c.particles();
  if (n < 1)
    throw std::invalid_argument("Husimi function needs at least one particle");
  if (n_theta < 2 || n_phi < 2)
    throw std::invalid_argument("Husimi grid needs at least 2x2 points");
  HusimiGrid grid;
  for (int i = 0; i < n_theta; ++i)
    grid.theta.push_back(std::numbers::pi * i / (n_theta - 1));
  for (int j = 0; j < n_phi; ++j)
    grid.phi.push_back(2.0 * std::numbers::pi * j / (n_phi - 1));
  grid.values.resize(grid.theta.size() * grid.phi.size());

  std::vector<double> half_log_binom(static_cast<std::size_t>(n + 1));
  for (int m = 0; m <= n; ++m)
    half_log_binom[static_cast<std::size_t>(m)] = 0.5 * log_binomial(n, m);

  std::vector<double> mag(static_cast<std::size_t>(n + 1));
  for (std::size_t i = 0; i < grid.theta.size(); ++i) {
    const double cs = std::cos(0.5 * grid.theta[i]), sn = std::sin(0.5 * grid.theta[i]);
    const double lc = std::log(std::abs(cs)), ls = std::log(std::abs(sn));
    for (int m = 0; m <= n; ++m) {
      const int pc = n - m, ps = m;
      if ((pc > 0 && cs == 0.0) || (ps > 0 && sn == 0.0)) {
        mag[static_cast<std::size_t>(m)] = 0.0;
        continue;
      }
      const double e = half_log_binom[static_cast<std::size_t>(m)] + (pc > 0 ? pc * lc : 0.0) +
                       (ps > 0 ? ps * ls : 0.0);
      mag[static_cast<std::size_t>(m)] = std::exp(e);
    }
    for (std::size_t j = 0; j < grid.phi.size(); ++j) {
      const complex step = std::polar(1.0, -grid.phi[j]);
      complex rot = 1.0, sum = 0.0;
      for (int m = 0; m <= n; ++m) {
        sum += mag[static_cast<std::size_t>(m)] * rot * c.amplitudes[static_cast<std::size_t>(m)];
        rot *= step;
      }
      grid.values[i * grid.phi.size() + j] = std::norm(sum);
    }
  }
  return grid;
}

std::vector<int> default_h_sectors(SystemSize n) {
  const int a = n.atoms();
  std::vector<int> out;
  for (int q : {0, a / 4, a / 2, 3 * a / 4}) {
    const int even = q - q % 2;
    if (out.empty() || out.back() != even)
      out.push_back(even);
  }
  return out;
}

} // namespace spinor
