#include "spinor/cba.hpp"
#include "spinor/estimation.hpp"

#include <doctest.h>

#include <numeric>

using namespace spinor;

namespace {

double total(const std::vector<double> &v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double max_diff(const OutcomeDistribution &a, const OutcomeDistribution &b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.p.size(); ++i)
    m = std::max(m, std::abs(a.p[i] - b.p[i]));
  return m;
}

} // namespace

TEST_CASE("multiplet bookkeeping") {
  const auto cba = SpinMultiplet::for_state(StateKind::cba, SystemSize(10));
  CHECK(cba.twice_j == 20);
  CHECK(cba.angle_scale == 0.5);
  CHECK(cba.outcome_of(4) == -2);
  const auto tf = SpinMultiplet::for_state(StateKind::twin_fock, SystemSize(10));
  CHECK(tf.twice_j == 10);
  CHECK(tf.angle_scale == 1.0);
  CHECK(tf.outcome_of(4) == 4);
  CHECK_THROWS_AS(SpinMultiplet::for_state(StateKind::twin_fock, SystemSize(9)), std::invalid_argument);
}

TEST_CASE("rotated multiplet amplitudes equal Wigner d-matrix elements") {
  for (int j = 1; j <= 50; j += 7) {
    const SpinMultiplet mult{StateKind::cba, j, 2 * j, 1.0};
    for (double beta : {0.1, 0.9, 2.3}) {
      const auto a = rotated_amplitudes(mult, beta);
      for (int m = -j; m <= j; ++m) {
        const double d = wigner_small_d_m0(j, m, beta);
        CHECK(std::abs(a[static_cast<std::size_t>(m + j)]) == doctest::Approx(std::abs(d)).epsilon(1e-10));
      }
    }
  }
  CHECK(wigner_small_d_m0(1, 1, 0.7) == doctest::Approx(-std::sin(0.7) / std::sqrt(2.0)));
  CHECK(wigner_small_d_m0(2, 0, 0.7) == doctest::Approx(1.5 * std::cos(0.7) * std::cos(0.7) - 0.5));
}

TEST_CASE("multiplet distribution equals the full three-mode computation") {
  for (int n = 2; n <= 12; ++n)
    for (auto kind : {StateKind::cba, StateKind::twin_fock}) {
      if (kind == StateKind::twin_fock && n % 2 != 0)
        continue;
      for (double theta : {0.05, 0.4, 1.3}) {
        const auto a = rotate_and_distribute(kind, SystemSize(n), theta);
        const auto b = full_space_outcome_distribution(kind, SystemSize(n), theta);
        CHECK(max_diff(a, b) < 1e-12);
      }
    }
}

TEST_CASE("distribution does not depend on the generator phase") {
  for (int n = 2; n <= 8; n += 2)
    for (auto kind : {StateKind::cba, StateKind::twin_fock}) {
      const auto ref = full_space_outcome_distribution(kind, SystemSize(n), 0.6, 0.0);
      for (double phi : {0.3, 1.1, 2.9})
        CHECK(max_diff(full_space_outcome_distribution(kind, SystemSize(n), 0.6, phi), ref) < 1e-12);
    }
}

TEST_CASE("probabilities are normalized, symmetric and match finite differences") {
  for (auto kind : {StateKind::cba, StateKind::twin_fock}) {
    const SystemSize n(40);
    const double theta = 0.37, h = 1e-6;
    const auto d = rotate_and_distribute(kind, n, theta);
    CHECK(total(d.p) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(total(d.dp)) < 1e-12);
    const auto up = rotate_and_distribute(kind, n, theta + h);
    const auto dn = rotate_and_distribute(kind, n, theta - h);
    for (int x = -40; x <= 40; ++x) {
      CHECK(d.prob(x) == doctest::Approx(d.prob(-x)).epsilon(1e-12));
      CHECK(std::abs(d.dprob(x) - (up.prob(x) - dn.prob(x)) / (2 * h)) < 1e-7);
    }
  }
}

TEST_CASE("twin-Fock outcomes have even D only") {
  const auto d = rotate_and_distribute(StateKind::twin_fock, SystemSize(30), 0.8);
  for (int x = -29; x <= 29; x += 2)
    CHECK(d.prob(x) == 0.0);
}

TEST_CASE("noiseless classical Fisher saturates the QFI") {
  for (auto kind : {StateKind::cba, StateKind::twin_fock})
    for (int n : {10, 100, 300})
      for (double theta : {0.01, 0.3, 1.2}) {
        const auto f = classical_fisher(rotate_and_distribute(kind, SystemSize(n), theta));
        CHECK_FALSE(f.singular);
        CHECK(f.value == doctest::Approx(exact_qfi(kind, SystemSize(n))).epsilon(1e-8));
      }
}

TEST_CASE("the optimal generator leaves no residual, other generators can") {
  for (auto kind : {StateKind::cba, StateKind::twin_fock})
    for (int n : {4, 6, 10})
      CHECK(optimality_residual(kind, SystemSize(n), 0.5) < 1e-12);
  // Jz annihilates both states: zero residual, but also zero information.
  CHECK(optimality_residual(StateKind::cba, SystemSize(6), 0.5, Generator::Jz) < 1e-12);
  Eigen::Matrix3cd jz = Eigen::Matrix3cd::Zero();
  jz(0, 0) = -1.0;
  jz(2, 2) = 1.0;
  const auto f = classical_fisher(full_space_outcome_distribution(StateKind::cba, SystemSize(6), 0.5, jz));
  CHECK(f.value < 1e-12);
  CHECK(optimality_residual(StateKind::cba, SystemSize(6), 0.5, Generator::G3) > 1e-3);
}

TEST_CASE("detection noise keeps normalization") {
  const auto d = rotate_and_distribute(StateKind::cba, SystemSize(50), 0.2);
  const auto same = apply_detection_noise(d, 0.0);
  CHECK(max_diff(same, d) == 0.0);
  for (double sigma : {0.3, 2.0, 9.0}) {
    const auto noisy = apply_detection_noise(d, sigma);
    CHECK(total(noisy.p) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(total(noisy.dp)) < 1e-10);
    CHECK(classical_fisher(noisy).value < classical_fisher(d).value);
  }
  CHECK_THROWS_AS(apply_detection_noise(d, -1.0), std::invalid_argument);
}

TEST_CASE("noise tolerance scales with sqrt N") {
  for (auto kind : {StateKind::cba, StateKind::twin_fock}) {
    const double a = sigma_max(kind, SystemSize(100)) / 10.0;
    const double b = sigma_max(kind, SystemSize(256)) / 16.0;
    CHECK(a == doctest::Approx(b).epsilon(0.03));
  }
  CHECK(sigma_max(StateKind::twin_fock, SystemSize(100)) > sigma_max(StateKind::cba, SystemSize(100)));
  CHECK_THROWS_AS(sigma_max(StateKind::cba, SystemSize(3)), std::invalid_argument);
}

TEST_CASE("peak Fisher falls with noise") {
  double prev = 1e300;
  for (double sigma : {0.0, 0.5, 1.0, 2.0, 4.0}) {
    const auto pk = peak_fisher(StateKind::cba, SystemSize(100), sigma);
    CHECK(pk.fisher < prev);
    CHECK(pk.theta > 0.0);
    prev = pk.fisher;
  }
}
