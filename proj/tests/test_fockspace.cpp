#include "generators.hpp"

#include "spinor/fockspace.hpp"

#include <doctest.h>

using namespace spinor;
using spinor::testing::Rng;

TEST_CASE("system size rejects fewer than two atoms") {
  CHECK_THROWS_AS(SystemSize(1), std::invalid_argument);
  CHECK_THROWS_AS(SystemSize(-4), std::invalid_argument);
  CHECK(SystemSize(2).atoms() == 2);
  CHECK(SystemSize(7).even() == false);
}

TEST_CASE("ladder dimension and occupations") {
  for (int n = 2; n <= 60; ++n) {
    CHECK(basis_dim(SystemSize(n)) == static_cast<std::size_t>(n / 2 + 1));
    for (int k = 0; 2 * k <= n; ++k) {
      const auto occ = ladder_occupations(SystemSize(n), k);
      CHECK(occ.total() == n);
      CHECK(occ.magnetization() == 0);
      CHECK(occ.n_plus == k);
    }
  }
  CHECK_THROWS(ladder_occupations(SystemSize(4), 3));
}

TEST_CASE("state construction validates and never renormalizes") {
  const SystemSize n(4);
  CHECK_THROWS_AS(SpinorState(n, {1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(SpinorState(n, {1.0 + 1e-9, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(SpinorState(n, {0.0, 0.0, 0.0}), std::invalid_argument);
  const double s = 1.0 / std::sqrt(2.0);
  const SpinorState st(n, {s, 0.0, complex(0.0, s)});
  CHECK(st[2] == complex(0.0, s));
  const auto r = SpinorState::normalized(n, {3.0, 4.0, 0.0});
  CHECK(std::abs(r[0] - 0.6) < 1e-15);
  CHECK(std::abs(r[1] - 0.8) < 1e-15);
}

TEST_CASE("named states") {
  const auto polar = state_polar(SystemSize(10));
  CHECK(polar[0] == 1.0);
  CHECK(mean_side_population(polar) == 0.0);
  const auto tf = state_twin_fock(SystemSize(10));
  CHECK(tf[5] == 1.0);
  CHECK(mean_central_population(tf) == 0.0);
  CHECK_THROWS_AS(state_twin_fock(SystemSize(9)), std::invalid_argument);
  CHECK(SpinorState::fock(SystemSize(10), 3)[3] == 1.0);
}

TEST_CASE("populations and number conservation on random states") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const SystemSize n(rng.integer(2, 80));
    const auto s = spinor::testing::random_state(rng, n);
    double total = 0.0;
    for (double p : s.populations())
      total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(mean_central_population(s) + 2.0 * mean_side_population(s) == doctest::Approx(n.atoms()).epsilon(1e-13));
    CHECK(fidelity(s, s) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("overlap rejects mismatched atom numbers") {
  CHECK_THROWS_AS(overlap(state_polar(SystemSize(4)), state_polar(SystemSize(5))), std::invalid_argument);
  CHECK(fidelity(state_polar(SystemSize(4)), state_twin_fock(SystemSize(4))) == 0.0);
}
