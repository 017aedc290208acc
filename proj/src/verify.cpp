#include "spinor/verify.hpp"

#include "spinor/cba.hpp"
#include "spinor/decomposition.hpp"
#include "spinor/estimation.hpp"
#include "spinor/fullspace.hpp"
#include "spinor/hamiltonian.hpp"
#include "spinor/metrology.hpp"
#include "spinor/parametric.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace spinor {

namespace {

CheckResult check(const std::string &name, const std::function<std::pair<bool, std::string>()> &body) {
  try {
    auto [ok, detail] = body();
    return {name, ok, detail};
  } catch (const std::exception &e) {
    return {name, false, std::string("exception: ") + e.what()};
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

} // namespace

std::vector<CheckResult> run_self_checks() {
  std::vector<CheckResult> out;

  out.push_back(check("cba matches q=0 ground state (N=2,50,500)", [] {
    double worst = 0.0;
    for (int n : {2, 50, 500}) {
      const auto a = cba_coefficients(SystemSize(n));
      const auto b = ground_state(build_hamiltonian(SystemSize(n), 0.0)).state;
      for (std::size_t k = 0; k < a.dim(); ++k)
        worst = std::max(worst, std::abs(a[k] - b[k]));
    }
    return std::pair{worst <= 1e-10, "max |dc| = " + fmt(worst)};
  }));

  out.push_back(check("pairing identity exact (m <= 12)", [] {
    for (int m = 0; m <= 12; ++m)
      for (int n = 0; n <= 2 * m; ++n)
        if (!pairing_identity(n, m).holds())
          return std::pair{false, "fails at n=" + std::to_string(n) + " m=" + std::to_string(m)};
    return std::pair{true, std::string("all equal")};
  }));

  out.push_back(check("Wick factor brute force (N <= 10)", [] {
    for (int n = 0; n <= 10; ++n)
      for (int k = 0; 2 * k <= n; ++k)
        if (ExactRational(wick_factor_bruteforce(n, k)) != wick_factor(n, k))
          return std::pair{false, "fails at N=" + std::to_string(n) + " k=" + std::to_string(k)};
    return std::pair{true, std::string("all equal")};
  }));

  out.push_back(check("exact 4Var(Sx) = N(N+1)/2 (N <= 30)", [] {
    for (int n = 2; n <= 30; ++n)
      if (!exact_sx_variance_identity(n).holds())
        return std::pair{false, "fails at N=" + std::to_string(n)};
    return std::pair{true, std::string("all equal")};
  }));

  out.push_back(check("pseudospin form of H up to identity (N <= 6)", [] {
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n)
      for (double q : {-1.3, 0.0, 0.7})
        worst = std::max(worst, pseudospin_identity_deviation(SystemSize(n), q).deviation);
    return std::pair{worst <= 1e-10, "max deviation = " + fmt(worst)};
  }));

  out.push_back(check("covariance closed form vs full space (N=7)", [] {
    const auto s = ground_state(build_hamiltonian(SystemSize(7), 0.4)).state;
    const double d = (covariance_matrix(s).full() - full_space_covariance_oracle(s)).cwiseAbs().maxCoeff();
    return std::pair{d <= 1e-10, "max entry deviation = " + fmt(d)};
  }));

  out.push_back(check("exact QFI of CBA and TF (N=100)", [] {
    const SystemSize n(100);
    const double c = qfi_optimal(cba_coefficients(n)).qfi / exact_qfi(StateKind::cba, n) - 1.0;
    const double t = qfi_optimal(state_twin_fock(n)).qfi / exact_qfi(StateKind::twin_fock, n) - 1.0;
    const double worst = std::max(std::abs(c), std::abs(t));
    return std::pair{worst <= 1e-9, "relative deviation = " + fmt(worst)};
  }));

  out.push_back(check("D measurement saturates QFI (N=100, theta=0.3)", [] {
    const SystemSize n(100);
    double worst = 0.0;
    for (auto kind : {StateKind::cba, StateKind::twin_fock}) {
      const double f = classical_fisher(rotate_and_distribute(kind, n, 0.3)).value;
      worst = std::max(worst, std::abs(f / exact_qfi(kind, n) - 1.0));
    }
    return std::pair{worst <= 1e-6, "relative deviation = " + fmt(worst)};
  }));

  out.push_back(check("optimality residual (N=4)", [] {
    double worst = 0.0;
    for (auto kind : {StateKind::cba, StateKind::twin_fock})
      for (double th : {0.1, 0.7, 1.4})
        worst = std::max(worst, optimality_residual(kind, SystemSize(4), th));
    return std::pair{worst <= 1e-10, "max residual = " + fmt(worst)};
  }));

  out.push_back(check("N_h decomposition of CBA (N=2 and N=200)", [] {
    const auto small = decomposition_identity(cba_coefficients(SystemSize(2)));
    const auto big = decomposition_identity(cba_coefficients(SystemSize(200)));
    const double d = std::max(std::abs(small.rhs - 3.0), std::abs(big.rhs / big.lhs - 1.0));
    return std::pair{d <= 1e-8, "deviation = " + fmt(d)};
  }));

  out.push_back(check("resonant analytic law is exponential", [] {
    const SystemSize n(500);
    const auto m = QuadraticModel::at(n, resonance_q(n));
    double worst = 0.0;
    for (double t : {0.0, 0.5, 1.0, 2.0, 3.0})
      worst = std::max(worst, std::abs(qfi_analytic(m, t).per_particle / std::exp(2.0 * std::abs(m.beta) * t) - 1.0));
    return std::pair{worst <= 1e-12, "relative deviation = " + fmt(worst)};
  }));

  return out;
}

} // namespace spinor
