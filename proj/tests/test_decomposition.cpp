#include "generators.hpp"

#include "spinor/cba.hpp"
#include "spinor/decomposition.hpp"
#include "spinor/metrology.hpp"

#include <doctest.h>

#include <numbers>
#include <numeric>

using namespace spinor;
using spinor::testing::Rng;

namespace {

// Coefficients of (a1^dag)^k (a-1^dag)^k / k! expanded in g^dag, h^dag by
// repeated polynomial multiplication, then converted to Fock amplitudes.
// Returns amplitude[N_h] of |N_g = 2k - N_h, N_h>.
std::vector<double> expand_side_pairs(int k) {
  std::vector<double> poly{1.0}; // coefficient of g^(deg - i) h^i
  const double r = 1.0 / std::sqrt(2.0);
  for (int f = 0; f < 2 * k; ++f) {
    const double sign = f < k ? 1.0 : -1.0; // a1 = (g+h)/sqrt2, a-1 = (g-h)/sqrt2
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += r * poly[i];
      next[i + 1] += sign * r * poly[i];
    }
    poly = std::move(next);
  }
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const double ng = static_cast<double>(2 * k) - static_cast<double>(i);
    poly[i] *= std::sqrt(std::tgamma(ng + 1.0) * std::tgamma(static_cast<double>(i) + 1.0)) /
               std::tgamma(k + 1.0);
  }
  return poly;
}

} // namespace

TEST_CASE("weights equal the brute-force mode expansion") {
  for (int k = 0; k <= 12; ++k) {
    const auto poly = expand_side_pairs(k);
    for (int nh = 0; nh <= 2 * k; ++nh) {
      if (nh % 2 != 0) {
        CHECK(std::abs(poly[static_cast<std::size_t>(nh)]) < 1e-12);
        continue;
      }
      CHECK(gh_weight(k, nh / 2) == doctest::Approx(poly[static_cast<std::size_t>(nh)]).epsilon(1e-12));
    }
  }
}

TEST_CASE("basis change round-trips and only even N_h occur") {
  Rng rng(30);
  for (int trial = 0; trial < 40; ++trial) {
    const SystemSize n(rng.integer(2, 150));
    const auto s = spinor::testing::random_state(rng, n);
    const auto g = to_gh_basis(s);
    const auto back = from_gh_basis(g);
    CHECK(spinor::testing::max_abs_diff(std::vector<complex>(back.amplitudes().begin(), back.amplitudes().end()),
                                        std::vector<complex>(s.amplitudes().begin(), s.amplitudes().end())) <
          1e-12);
    const auto p = h_number_distribution(g);
    CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t nh = 1; nh < p.size(); nh += 2)
      CHECK(p[nh] == 0.0);
  }
}

TEST_CASE("mean h number equals the side population") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const SystemSize n(rng.integer(2, 100));
    const auto s = spinor::testing::random_state(rng, n);
    const auto p = h_number_distribution(to_gh_basis(s));
    double mean = 0.0;
    for (std::size_t nh = 0; nh < p.size(); ++nh)
      mean += static_cast<double>(nh) * p[nh];
    CHECK(mean == doctest::Approx(mean_side_population(s)).epsilon(1e-11));
  }
}

TEST_CASE("decomposition identity on random states") {
  Rng rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const SystemSize n(rng.integer(2, 120));
    const auto s = spinor::testing::random_state(rng, n, trial % 2 == 0);
    const auto id = decomposition_identity(s);
    CHECK(id.lhs == doctest::Approx(id.rhs).epsilon(1e-10));
    CHECK(id.lhs == doctest::Approx(qfi_direction(s, gell_mann_direction(Generator::Sx))).epsilon(1e-10));
  }
}

TEST_CASE("conditional states") {
  const auto g = to_gh_basis(cba_coefficients(SystemSize(40)));
  const auto c = conditional_state(g, 0);
  CHECK(c.particles() == 40);
  double norm = 0.0;
  for (auto a : c.amplitudes)
    norm += std::norm(a);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(conditional_state(g, 1), std::invalid_argument);
  CHECK_THROWS_AS(conditional_state(g, 41), std::invalid_argument);
  // All particles in a0: F_Q[Sx] = n.
  const ConditionalState coherent{0, 1.0, {1.0, 0.0, 0.0, 0.0}};
  CHECK(conditional_qfi(coherent) == doctest::Approx(3.0));
  // An Sx eigenstate carries no information.
  const ConditionalState single{0, 1.0, {std::sqrt(0.5), std::sqrt(0.5)}};
  CHECK(conditional_qfi(single) == doctest::Approx(0.0));
}

TEST_CASE("Husimi function is normalized on the sphere") {
  const auto g = to_gh_basis(cba_coefficients(SystemSize(30)));
  const auto c = conditional_state(g, 4);
  const auto h = husimi(c, 241, 480);
  const double dth = h.theta[1] - h.theta[0], dph = h.phi[1] - h.phi[0];
  double integral = 0.0;
  for (std::size_t i = 0; i < h.theta.size(); ++i)
    for (std::size_t j = 0; j + 1 < h.phi.size(); ++j)
      integral += h.at(i, j) * std::sin(h.theta[i]) * dth * dph;
  CHECK(integral * (c.particles() + 1) / (4.0 * std::numbers::pi) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("small-N_h sectors of CBA are NOON-like along Sx") {
  const auto g = to_gh_basis(cba_coefficients(SystemSize(500)));
  const auto h = husimi(conditional_state(g, 0), 91, 181);
  std::size_t best = 0;
  for (std::size_t i = 1; i < h.values.size(); ++i)
    if (h.values[i] > h.values[best])
      best = i;
  const std::size_t equator = 45;
  CHECK(best / h.phi.size() == equator);
  CHECK(h.at(equator, 0) == doctest::Approx(h.at(equator, 90)).epsilon(1e-9)); // phi = 0 and pi
  CHECK(h.at(equator, 0) > 0.4);
  CHECK(h.at(equator, 45) < 1e-20); // phi = pi/2
  CHECK(h.at(0, 0) < 1e-20);
  // Beyond N/2 the weight sits at the a0 pole instead.
  const auto far = husimi(conditional_state(g, 300), 91, 181);
  CHECK(far.at(0, 0) > 1e3 * far.at(equator, 0));
}

TEST_CASE("conditional QFI stays above the particle number below N/2") {
  const SystemSize n(500);
  const auto g = to_gh_basis(cba_coefficients(n));
  const auto p = h_number_distribution(g);
  CHECK(std::max_element(p.begin(), p.end()) == p.begin());
  for (int nh = 0; nh <= 250; nh += 2)
    CHECK(conditional_qfi(conditional_state(g, nh)) > 500.0);
}

TEST_CASE("default sectors") {
  CHECK(default_h_sectors(SystemSize(500)) == std::vector<int>{0, 124, 250, 374});
  CHECK(default_h_sectors(SystemSize(8)) == std::vector<int>{0, 2, 4, 6});
}
