#include "generators.hpp"

#include "spinor/errors.hpp"
#include "spinor/hamiltonian.hpp"
#include "spinor/propagator.hpp"

#include <Eigen/Dense>
#include <doctest.h>

using namespace spinor;
using spinor::testing::Rng;

namespace {

std::vector<complex> dense_expm(const SymTridiagonal &t, double tau, const std::vector<complex> &psi) {
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = t.diag[static_cast<std::size_t>(i)];
    if (i + 1 < n)
      m(i, i + 1) = m(i + 1, i) = t.offdiag[static_cast<std::size_t>(i)];
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  Eigen::VectorXcd phase(n);
  for (Eigen::Index i = 0; i < n; ++i)
    phase(i) = std::exp(complex(0.0, -tau * es.eigenvalues()(i)));
  const Eigen::MatrixXcd v = es.eigenvectors().cast<complex>();
  const Eigen::VectorXcd out =
      v * phase.asDiagonal() * v.adjoint() * Eigen::Map<const Eigen::VectorXcd>(psi.data(), n);
  return {out.data(), out.data() + n};
}

std::vector<complex> random_vector(Rng &rng, std::size_t n) {
  std::vector<complex> v(n);
  double norm = 0.0;
  for (auto &x : v) {
    x = {rng.normal(), rng.normal()};
    norm += std::norm(x);
  }
  for (auto &x : v)
    x /= std::sqrt(norm);
  return v;
}

double norm_of(const std::vector<complex> &v) {
  double s = 0.0;
  for (auto x : v)
    s += std::norm(x);
  return std::sqrt(s);
}

} // namespace

TEST_CASE("method names round-trip") {
  for (auto m : {PropagatorMethod::chebyshev, PropagatorMethod::krylov_expm, PropagatorMethod::rk_adaptive})
    CHECK(parse_method(method_name(m)) == m);
  CHECK(parse_method("krylov") == PropagatorMethod::krylov_expm);
  CHECK(parse_method("rk") == PropagatorMethod::rk_adaptive);
  CHECK_THROWS_AS(parse_method("euler"), std::invalid_argument);
}

TEST_CASE("Chebyshev exponential matches dense diagonalization") {
  Rng rng(20);
  for (int trial = 0; trial < 60; ++trial) {
    const auto t = spinor::testing::random_tridiagonal(rng, static_cast<std::size_t>(rng.integer(1, 60)),
                                                       rng.uniform(0.1, 50.0));
    const double tau = rng.uniform(-3.0, 3.0);
    auto psi = random_vector(rng, t.size());
    const auto ref = dense_expm(t, tau, psi);
    expm_chebyshev(t, tau, psi);
    CHECK(spinor::testing::max_abs_diff(psi, ref) < 1e-12);
    CHECK(norm_of(psi) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("Krylov exponential matches dense diagonalization") {
  Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const auto t = spinor::testing::random_tridiagonal(rng, static_cast<std::size_t>(rng.integer(1, 120)),
                                                       rng.uniform(0.1, 20.0));
    const double tau = rng.uniform(-2.0, 2.0);
    auto psi = random_vector(rng, t.size());
    const auto ref = dense_expm(t, tau, psi);
    expm_krylov(t, tau, psi, 24, 1e-12);
    CHECK(spinor::testing::max_abs_diff(psi, ref) < 1e-10);
  }
}

TEST_CASE("constant-q propagation is exact for every method") {
  const SystemSize n(60);
  const double q = 0.3;
  const auto h = build_hamiltonian(n, q);
  Rng rng(22);
  const auto psi0 = random_vector(rng, h.dim());
  const auto ref = dense_expm(h.matrix, 7.5, psi0);
  for (auto m : {PropagatorMethod::chebyshev, PropagatorMethod::krylov_expm, PropagatorMethod::rk_adaptive}) {
    PropagatorConfig cfg;
    cfg.method = m;
    Propagator prop(n, cfg);
    auto psi = psi0;
    prop.advance(psi, 0.0, 7.5, [q](double) { return q; }, true);
    CHECK(spinor::testing::max_abs_diff(psi, ref) < (m == PropagatorMethod::rk_adaptive ? 1e-7 : 1e-10));
    CHECK(prop.stats().max_norm_drift < 1e-8);
  }
}

TEST_CASE("time-dependent propagation agrees across methods and converges at fourth order") {
  const SystemSize n(40);
  const auto q_of_t = [](double t) { return 1.5 - 0.25 * t; };
  auto run = [&](PropagatorMethod m, double dt) {
    PropagatorConfig cfg;
    cfg.method = m;
    cfg.dt = dt;
    cfg.tolerance = 1e-12;
    Propagator prop(n, cfg);
    std::vector<complex> psi(basis_dim(n), 0.0);
    psi[0] = 1.0;
    prop.advance(psi, 0.0, 6.0, q_of_t);
    return psi;
  };
  const auto ref = run(PropagatorMethod::chebyshev, 0.002);
  const auto rk = run(PropagatorMethod::rk_adaptive, 0.0);
  const auto kr = run(PropagatorMethod::krylov_expm, 0.002);
  CHECK(spinor::testing::max_abs_diff(rk, ref) < 1e-8);
  CHECK(spinor::testing::max_abs_diff(kr, ref) < 1e-9);
  const double e1 = spinor::testing::max_abs_diff(run(PropagatorMethod::chebyshev, 0.08), ref);
  const double e2 = spinor::testing::max_abs_diff(run(PropagatorMethod::chebyshev, 0.04), ref);
  CHECK(e1 / e2 > 12.0);
  CHECK(e1 / e2 < 20.0);
}

TEST_CASE("invalid configurations are rejected") {
  PropagatorConfig cfg;
  cfg.dt = -1.0;
  CHECK_THROWS_AS(Propagator(SystemSize(4), cfg), std::invalid_argument);
  cfg = {};
  cfg.krylov_dim = 1;
  CHECK_THROWS_AS(Propagator(SystemSize(4), cfg), std::invalid_argument);
  cfg = {};
  cfg.tolerance = 0.0;
  CHECK_THROWS_AS(Propagator(SystemSize(4), cfg), std::invalid_argument);
}

TEST_CASE("a loose adaptive tolerance exceeds the norm budget") {
  const SystemSize n(200);
  PropagatorConfig cfg;
  cfg.method = PropagatorMethod::rk_adaptive;
  cfg.tolerance = 1e-1;
  Propagator prop(n, cfg);
  std::vector<complex> psi(basis_dim(n), 0.0);
  psi[0] = 1.0;
  CHECK_THROWS_AS(prop.advance(psi, 0.0, 50.0, [](double t) { return 1.5 - 0.025 * t; }), NumericalError);
}

TEST_CASE("default step scales with the spectral spread") {
  const double small = default_time_step(SystemSize(10), -1.5, 1.5);
  const double large = default_time_step(SystemSize(1000), -1.5, 1.5);
  CHECK(small > large);
  CHECK(large > 0.0);
}
