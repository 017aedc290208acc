#pragma once

// Real symmetric tridiagonal matrices: products, spectra, selected eigenpairs.

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace spinor {

struct SymTridiagonal {
  std::vector<double> diag;    // length n
  std::vector<double> offdiag; // length n-1, offdiag[i] couples i and i+1

  SymTridiagonal() = default;
  SymTridiagonal(std::vector<double> d, std::vector<double> e);

  std::size_t size() const noexcept { return diag.size(); }

  void apply(std::span<const std::complex<double>> x, std::span<std::complex<double>> y) const;
  void apply(std::span<const double> x, std::span<double> y) const;

  /// Gershgorin enclosure [lo, hi] of the spectrum.
  std::pair<double, double> spectral_bounds() const;

  /// Max-row-sum norm.
  double norm_inf() const;
};

struct TridiagonalEigen {
  std::vector<double> values;               // ascending
  std::vector<std::vector<double>> vectors; // vectors[i] belongs to values[i]
};

/// All eigenvalues, ascending (implicit QL, no vectors).
std::vector<double> eigenvalues(const SymTridiagonal &t);

/// All eigenpairs (implicit QL with accumulated rotations). O(n^3).
TridiagonalEigen eigen_decomposition(const SymTridiagonal &t);

/// Number of eigenvalues strictly below x (Sturm sequence).
std::size_t sturm_count(const SymTridiagonal &t, double x);

/// The index-th smallest eigenvalue by bisection on the Sturm count.
double eigenvalue_by_index(const SymTridiagonal &t, std::size_t index);

/// Unit eigenvector for a known, isolated eigenvalue (inverse iteration).
/// Sign fixed so the largest-magnitude component is positive.
std::vector<double> eigenvector_for(const SymTridiagonal &t, double eigenvalue);

} // namespace spinor
