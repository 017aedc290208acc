#include "spinor/cba.hpp"
#include "spinor/hamiltonian.hpp"
#include "spinor/metrology.hpp"

#include <doctest.h>

using namespace spinor;

TEST_CASE("CBA equals the q=0 ground state") {
  for (int n = 2; n <= 1000; n = n < 20 ? n + 1 : n * 3 / 2) {
    const SystemSize size(n);
    const auto gs = ground_state(build_hamiltonian(size, 0.0)).state;
    CHECK(fidelity(gs, cba_coefficients(size)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("two atoms by hand") {
  const auto c = cba_coefficients(SystemSize(2));
  CHECK(c[0].real() == doctest::Approx(std::sqrt(2.0 / 3.0)));
  CHECK(c[1].real() == doctest::Approx(std::sqrt(1.0 / 3.0)));
}

TEST_CASE("log-domain coefficients match the exact rationals") {
  for (int n : {2, 3, 10, 51, 200}) {
    const auto exact = cba_coefficients_squared_exact(SystemSize(n));
    const auto c = cba_coefficients(SystemSize(n));
    ExactRational total = 0;
    for (std::size_t k = 0; k < exact.size(); ++k) {
      total += exact[k];
      CHECK(std::norm(c[k]) == doctest::Approx(static_cast<double>(exact[k])).epsilon(1e-12));
    }
    CHECK(total == 1);
  }
}

TEST_CASE("Wick factor matches brute-force operator ordering") {
  for (int n = 0; n <= 16; ++n)
    for (int k = 0; 2 * k <= n; ++k)
      CHECK(wick_factor(n, k) == ExactRational(wick_factor_bruteforce(n, k)));
  CHECK_THROWS_AS(wick_factor(5, 3), std::invalid_argument);
}

TEST_CASE("exact identities") {
  for (int m = 0; m <= 30; ++m)
    for (int n = 0; n <= 2 * m; ++n)
      CHECK(pairing_identity(n, m).holds());
  CHECK_THROWS(pairing_identity(7, 3));
  for (int n = 1; n <= 60; ++n)
    for (int k = 0; 2 * k + 1 <= n; ++k)
      CHECK(recursion_identity(n, k).holds());
  for (int n = 2; n <= 120; ++n) {
    CHECK(exact_sx_variance_identity(n).holds());
    CHECK(exact_side_population_identity(n).holds());
  }
}

TEST_CASE("mean side population") {
  for (int n : {2, 7, 100, 1001}) {
    const SystemSize size(n);
    CHECK(mean_side_population(cba_coefficients(size)) ==
          doctest::Approx(exact_mean_side_population(size)).epsilon(1e-12));
  }
}

TEST_CASE("state kinds parse") {
  CHECK(parse_state_kind("cba") == StateKind::cba);
  CHECK(parse_state_kind("tf") == StateKind::twin_fock);
  CHECK(parse_state_kind("twin_fock") == StateKind::twin_fock);
  CHECK_THROWS_AS(parse_state_kind("noon"), std::invalid_argument);
  CHECK(state_kind_name(StateKind::twin_fock) == "tf");
  CHECK_THROWS_AS(prepare_state(StateKind::twin_fock, SystemSize(5)), std::invalid_argument);
}

TEST_CASE("exact QFI values") {
  CHECK(exact_qfi(StateKind::cba, SystemSize(500)) == 125250.0);
  CHECK(exact_qfi(StateKind::twin_fock, SystemSize(500)) == 125500.0);
}
