#include "generators.hpp"

#include "spinor/tridiagonal.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <algorithm>

using namespace spinor;
using spinor::testing::Rng;

namespace {

Eigen::MatrixXd dense(const SymTridiagonal &t) {
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = t.diag[static_cast<std::size_t>(i)];
    if (i + 1 < n)
      m(i, i + 1) = m(i + 1, i) = t.offdiag[static_cast<std::size_t>(i)];
  }
  return m;
}

} // namespace

TEST_CASE("eigenvalues agree with a dense solver") {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto t = spinor::testing::random_tridiagonal(rng, static_cast<std::size_t>(rng.integer(1, 80)),
                                                       rng.uniform(0.1, 100.0));
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(dense(t));
    const auto vals = eigenvalues(t);
    const double scale = std::max(1.0, t.norm_inf());
    for (std::size_t i = 0; i < vals.size(); ++i)
      CHECK(std::abs(vals[i] - ref.eigenvalues()(static_cast<Eigen::Index>(i))) <= 1e-12 * scale);
  }
}

TEST_CASE("eigen decomposition is orthonormal and accurate") {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = spinor::testing::random_tridiagonal(rng, static_cast<std::size_t>(rng.integer(1, 40)));
    const auto eig = eigen_decomposition(t);
    const Eigen::MatrixXd m = dense(t);
    const auto n = static_cast<Eigen::Index>(t.size());
    Eigen::MatrixXd v(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        v(j, i) = eig.vectors[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    CHECK((v.transpose() * v - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::VectorXd lam = Eigen::Map<const Eigen::VectorXd>(eig.values.data(), n);
    CHECK((m * v - v * lam.asDiagonal()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::is_sorted(eig.values.begin(), eig.values.end()));
  }
}

TEST_CASE("Sturm count, bisection and inverse iteration") {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = spinor::testing::random_tridiagonal(rng, static_cast<std::size_t>(rng.integer(2, 60)));
    const auto vals = eigenvalues(t);
    const auto [lo, hi] = t.spectral_bounds();
    CHECK(lo <= vals.front() + 1e-14);
    CHECK(hi >= vals.back() - 1e-14);
    CHECK(sturm_count(t, lo - 1.0) == 0);
    CHECK(sturm_count(t, hi + 1.0) == t.size());
    const std::size_t idx = static_cast<std::size_t>(rng.integer(0, static_cast<int>(t.size()) - 1));
    const double lam = eigenvalue_by_index(t, idx);
    CHECK(std::abs(lam - vals[idx]) < 1e-12);
    if (idx == 0 && vals.size() > 1 && vals[1] - vals[0] > 1e-6) {
      const auto v = eigenvector_for(t, lam);
      std::vector<double> tv(v.size());
      t.apply(std::span<const double>(v), std::span<double>(tv));
      double res = 0.0, big = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        res = std::max(res, std::abs(tv[i] - lam * v[i]));
        if (std::abs(v[i]) > std::abs(big))
          big = v[i];
      }
      CHECK(res < 1e-11);
      CHECK(big > 0.0);
    }
  }
}

TEST_CASE("matrix-vector product matches dense product") {
  Rng rng(4);
  const auto t = spinor::testing::random_tridiagonal(rng, 17);
  std::vector<std::complex<double>> x(17), y(17);
  for (auto &v : x)
    v = {rng.normal(), rng.normal()};
  t.apply(std::span<const std::complex<double>>(x), std::span<std::complex<double>>(y));
  const Eigen::VectorXcd ref = dense(t).cast<std::complex<double>>() * Eigen::Map<Eigen::VectorXcd>(x.data(), 17);
  for (int i = 0; i < 17; ++i)
    CHECK(std::abs(y[static_cast<std::size_t>(i)] - ref(i)) < 1e-14);
}
