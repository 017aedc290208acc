#pragma once

// Single-mode spin-1 Hamiltonian restricted to the D=0 ladder.
//
// Units: q_c = 2N|lambda| = 1 and hbar = 1, so lambda = -1/(2N) and q is
// measured in units of q_c. Critical points sit at q = +-1.

#include "spinor/fockspace.hpp"
#include "spinor/tridiagonal.hpp"

#include <vector>

namespace spinor {

/// Ferromagnetic spin-exchange coupling lambda = -q_c/(2N) with q_c = 1.
double coupling_lambda(SystemSize n);

/// H(q) on the ladder, with the provenance (N, q) it was built for.
struct TridiagonalOperator {
  SystemSize size;
  double q;
  SymTridiagonal matrix;

  std::size_t dim() const noexcept { return matrix.size(); }
};

/// d_k = 2k [lambda (N - 2k - 1/2) + q],
/// e_k = <k+1|H|k> = lambda (k+1) sqrt((N-2k)(N-2k-1)).
TridiagonalOperator build_hamiltonian(SystemSize n, double q);

struct GroundState {
  double energy;
  SpinorState state;
};

/// Lowest eigenpair; real eigenvector with its largest component positive.
/// Throws NumericalError if the eigenpair residual is not small.
GroundState ground_state(const TridiagonalOperator &h);

/// Full ascending spectrum.
std::vector<double> spectrum(const TridiagonalOperator &h);

/// E_1 - E_0 of H(q).
double spectral_gap(SystemSize n, double q);

/// <psi|H|psi>.
double energy_expectation(const TridiagonalOperator &h, const SpinorState &psi);

} // namespace spinor
