#pragma once

// The q=0 ground state |L=N, L_z=0> of the D=0 ladder (the "CBA" state)
// and the exact combinatorics behind its closed form.
//
//   c_k = sqrt(2^N N!^3 / (2N)!) / (2^k k! sqrt((N-2k)!)),   c_{k>N/2} = 0.
//
// Production coefficients are evaluated with log-factorials. The exact paths
// use arbitrary-precision rationals and exist as oracles; they are only
// practical up to N of a few hundred.

#include "spinor/fockspace.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace spinor {

using ExactInteger = boost::multiprecision::cpp_int;
using ExactRational = boost::multiprecision::cpp_rational;

enum class StateKind { cba, twin_fock };

std::string state_kind_name(StateKind k);
/// Accepts "cba" and "tf"/"twin_fock"; throws std::invalid_argument otherwise.
StateKind parse_state_kind(const std::string &s);

/// CBA coefficients in log-domain, normalized to 1e-12.
SpinorState cba_coefficients(SystemSize n);

/// |CBA> or |TF> (the latter rejects odd N).
SpinorState prepare_state(StateKind kind, SystemSize n);

/// Exact c_k^2 = 2^N N!^3 / ((2N)! 4^k k!^2 (N-2k)!), k = 0..floor(N/2).
std::vector<ExactRational> cba_coefficients_squared_exact(SystemSize n);

/// X(k) = N!/(2^k k! (N-2k)!): the number of full contractions of the ordered
/// words with k annihilators and N-k creators acting on the vacuum.
/// Throws std::invalid_argument for k < 0 or 2k > N.
ExactRational wick_factor(int n, int k);

/// The same factor by brute force: sums every ordering of k operators a and
/// N-k operators a^dag applied to |0>, in a single bosonic mode, and returns
/// the coefficient of (a^dag)^(N-2k)|0>. Cost C(N, k).
ExactInteger wick_factor_bruteforce(int n, int k);

struct ExactIdentity {
  ExactRational lhs;
  ExactRational rhs;
  bool holds() const { return lhs == rhs; }
};

/// sum_k C(m,k) C(m-k, n-2k) 2^(n-2k)  vs  C(2m, n). Throws for n > 2m.
ExactIdentity pairing_identity(int n, int m);

/// Bracket form of the recursion
///   sqrt(N-2k) c_k + sqrt(N-2k-1) c_{k+1}
///     = pref (N+1) / (2^(k+1) (k+1)! sqrt((N-2k-1)!)),
/// after dividing out pref / sqrt((N-2k-1)!); valid for 0 <= k <= (N-1)/2.
ExactIdentity recursion_identity(int n, int k);

/// 4 Var(Sx) of |CBA> as an exact rational from the recursion, compared with
/// N(N+1)/2.
ExactIdentity exact_sx_variance_identity(int n);

/// sum_k k c_k^2 exactly, compared with (N/4)(2N-2)/(2N-1).
ExactIdentity exact_side_population_identity(int n);

/// N(N+1)/2 for CBA, N(N+2)/2 for TF (even N only).
double exact_qfi(StateKind kind, SystemSize n);

/// (N/4)(2N-2)/(2N-1).
double exact_mean_side_population(SystemSize n);

} // namespace spinor
