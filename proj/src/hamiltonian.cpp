#include "spinor/hamiltonian.hpp"

#include "spinor/errors.hpp"

#include <cmath>
#include <complex>
#include <sstream>

namespace spinor {

double coupling_lambda(SystemSize n) { return -1.0 / (2.0 * n.atoms()); }

TridiagonalOperator build_hamiltonian(SystemSize n, double q) {
  const int atoms = n.atoms();
  const double lambda = coupling_lambda(n);
  const std::size_t dim = basis_dim(n);
  std::vector<double> d(dim), e(dim - 1);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    const double k = static_cast<double>(idx);
    d[idx] = 2.0 * k * (lambda * (atoms - 2.0 * k - 0.5) + q);
  }
  for (std::size_t idx = 0; idx + 1 < dim; ++idx) {
    const double k = static_cast<double>(idx);
    const double n0 = atoms - 2.0 * k;
    e[idx] = lambda * (k + 1.0) * std::sqrt(n0 * (n0 - 1.0));
  }
  return {n, q, SymTridiagonal(std::move(d), std::move(e))};
}

GroundState ground_state(const TridiagonalOperator &h) {
  const double e0 = eigenvalue_by_index(h.matrix, 0);
  std::vector<double> v = eigenvector_for(h.matrix, e0);

  std::vector<double> hv(v.size());
  h.matrix.apply(std::span<const double>(v), std::span<double>(hv));
  double residual = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    residual = std::max(residual, std::abs(hv[i] - e0 * v[i]));
  const double scale = std::max(1.0, h.matrix.norm_inf());
  if (residual > 1e-11 * scale) {
    std::ostringstream msg;
    msg << "ground state did not converge: N=" << h.size.atoms() << " q=" << h.q
        << " E0=" << e0 << " residual=" << residual;
    throw NumericalError(msg.str());
  }

  std::vector<complex> amplitudes(v.begin(), v.end());
  return {e0, SpinorState::normalized(h.size, std::move(amplitudes))};
}

std::vector<double> spectrum(const TridiagonalOperator &h) { return eigenvalues(h.matrix); }

double spectral_gap(SystemSize n, double q) {
  const auto h = build_hamiltonian(n, q);
  return eigenvalue_by_index(h.matrix, 1) - eigenvalue_by_index(h.matrix, 0);
}

double energy_expectation(const TridiagonalOperator &h, const SpinorState &psi) {
  std::vector<complex> hpsi(psi.dim());
  h.matrix.apply(psi.amplitudes(), std::span<complex>(hpsi));
  complex sum = 0.0;
  for (std::size_t k = 0; k < psi.dim(); ++k)
    sum += std::conj(psi[k]) * hpsi[k];
  return sum.real();
}

} // namespace spinor
