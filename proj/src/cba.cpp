#include "spinor/cba.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace spinor {

namespace {

ExactInteger factorial(int n) {
  ExactInteger f = 1;
  for (int i = 2; i <= n; ++i)
    f *= i;
  return f;
}

ExactInteger binomial(int n, int k) {
  if (k < 0 || k > n)
    return 0;
  ExactInteger b = 1;
  for (int i = 1; i <= k; ++i) {
    b *= n - k + i;
    b /= i;
  }
  return b;
}

ExactInteger pow2(int e) { return ExactInteger(1) << e; }

// 2^N N!^3 / (2N)!
ExactRational prefactor_squared(int n) {
  const ExactInteger f = factorial(n);
  return ExactRational(pow2(n) * f * f * f, factorial(2 * n));
}

} // namespace

std::string state_kind_name(StateKind k) { return k == StateKind::cba ? "cba" : "tf"; }

StateKind parse_state_kind(const std::string &s) {
  if (s == "cba")
    return StateKind::cba;
  if (s == "tf" || s == "twin_fock")
    return StateKind::twin_fock;
  throw std::invalid_argument("unknown state kind '" + s + "' (expected cba or tf)");
}

SpinorState cba_coefficients(SystemSize n) {
  const int atoms = n.atoms();
  const std::size_t dim = basis_dim(n);
  std::vector<double> logc(dim);
  double top = -INFINITY;
  for (std::size_t idx = 0; idx < dim; ++idx) {
    const int k = static_cast<int>(idx);
    logc[idx] = -k * std::log(2.0) - std::lgamma(k + 1.0) - 0.5 * std::lgamma(atoms - 2.0 * k + 1.0);
    top = std::max(top, logc[idx]);
  }
  std::vector<complex> amps(dim);
  for (std::size_t idx = 0; idx < dim; ++idx)
    amps[idx] = std::exp(logc[idx] - top);
  return SpinorState::normalized(n, std::move(amps));
}

SpinorState prepare_state(StateKind kind, SystemSize n) {
  return kind == StateKind::cba ? cba_coefficients(n) : state_twin_fock(n);
}

std::vector<ExactRational> cba_coefficients_squared_exact(SystemSize n) {
  const int atoms = n.atoms();
  const ExactRational pref = prefactor_squared(atoms);
  std::vector<ExactRational> out;
  for (int k = 0; 2 * k <= atoms; ++k) {
    const ExactInteger kf = factorial(k);
    out.push_back(pref / ExactRational(pow2(2 * k) * kf * kf * factorial(atoms - 2 * k)));
  }
  return out;
}

ExactRational wick_factor(int n, int k) {
  if (k < 0 || 2 * k > n)
    throw std::invalid_argument("wick_factor requires 0 <= k <= N/2");
  return ExactRational(factorial(n), pow2(k) * factorial(k) * factorial(n - 2 * k));
}

ExactInteger wick_factor_bruteforce(int n, int k) {
  if (k < 0 || 2 * k > n)
    throw std::invalid_argument("wick_factor_bruteforce requires 0 <= k <= N/2");
  if (n > 30)
    throw std::invalid_argument("wick_factor_bruteforce is limited to N <= 30");
  // A single-mode monomial coef (a^dag)^m |0> stays a monomial under a and
  // a^dag: a (a^dag)^m |0> = m (a^dag)^(m-1) |0>.
  ExactInteger total = 0;
  const unsigned long long words = 1ULL << n;
  for (unsigned long long w = 0; w < words; ++w) {
    if (std::popcount(w) != k)
      continue;
    ExactInteger coef = 1;
    int m = 0;
    // Bit i set means position i holds an a; position 0 acts first.
    for (int i = 0; i < n && coef != 0; ++i) {
      if (w >> i & 1ULL) {
        coef *= m;
        --m;
      } else {
        ++m;
      }
    }
    if (coef != 0)
      total += coef;
  }
  return total;
}

ExactIdentity pairing_identity(int n, int m) {
  if (n < 0 || m < 0 || n > 2 * m)
    throw std::invalid_argument("pairing_identity requires 0 <= n <= 2m");
  ExactInteger lhs = 0;
  for (int k = 0; 2 * k <= n; ++k)
    lhs += binomial(m, k) * binomial(m - k, n - 2 * k) * pow2(n - 2 * k);
  return {ExactRational(lhs), ExactRational(binomial(2 * m, n))};
}

ExactIdentity recursion_identity(int n, int k) {
  if (k < 0 || 2 * k > n - 1)
    throw std::invalid_argument("recursion_identity requires 0 <= k <= (N-1)/2");
  const ExactInteger kf = factorial(k);
  const ExactRational lhs = ExactRational(1, pow2(k) * kf) +
                            ExactRational(n - 2 * k - 1, pow2(k + 1) * kf * (k + 1));
  const ExactRational rhs(n + 1, pow2(k + 1) * kf * (k + 1));
  return {lhs, rhs};
}

ExactIdentity exact_sx_variance_identity(int n) {
  if (n < 2)
    throw std::invalid_argument("exact_sx_variance_identity requires N >= 2");
  const ExactRational pref = prefactor_squared(n);
  ExactRational sum = 0;
  for (int k = 0; 2 * k <= n - 1; ++k) {
    const ExactInteger kf1 = factorial(k + 1);
    // (k+1) |sqrt(N-2k) c_k + sqrt(N-2k-1) c_{k+1}|^2 via the recursion.
    sum += ExactRational(k + 1) * pref * ExactRational((n + 1) * (n + 1)) /
           ExactRational(pow2(2 * k + 2) * kf1 * kf1 * factorial(n - 2 * k - 1));
  }
  return {sum, ExactRational(n * (n + 1), 2)};
}

ExactIdentity exact_side_population_identity(int n) {
  const auto c2 = cba_coefficients_squared_exact(SystemSize(n));
  ExactRational sum = 0;
  for (std::size_t k = 0; k < c2.size(); ++k)
    sum += ExactRational(static_cast<long long>(k)) * c2[k];
  return {sum, ExactRational(n, 4) * ExactRational(2 * n - 2, 2 * n - 1)};
}

double exact_qfi(StateKind kind, SystemSize n) {
  const double a = n.atoms();
  if (kind == StateKind::cba)
    return a * (a + 1.0) / 2.0;
  if (!n.even())
    throw std::invalid_argument("twin-Fock state requires even N");
  return a * (a + 2.0) / 2.0;
}

double exact_mean_side_population(SystemSize n) {
  const double a = n.atoms();
  return a / 4.0 * (2.0 * a - 2.0) / (2.0 * a - 1.0);
}

} // namespace spinor
