#pragma once

// Magnetization-free Fock basis of N spin-1 bosons.
//
// The D = N+ - N- = 0 sector is spanned by |k> = |N-=k, N0=N-2k, N+=k>,
// k = 0..floor(N/2). All states in this library live in that ladder unless a
// routine explicitly says it works in the full three-mode space.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace spinor {

using complex = std::complex<double>;

/// Atom number N (N >= 2).
class SystemSize {
public:
  explicit SystemSize(int atoms);

  int atoms() const noexcept { return atoms_; }
  bool even() const noexcept { return atoms_ % 2 == 0; }

  friend bool operator==(SystemSize, SystemSize) = default;

private:
  int atoms_;
};

/// Occupations (n_minus, n_zero, n_plus) of the three Zeeman modes.
struct ModeOccupations {
  int n_minus = 0;
  int n_zero = 0;
  int n_plus = 0;

  int total() const noexcept { return n_minus + n_zero + n_plus; }
  int magnetization() const noexcept { return n_plus - n_minus; }

  friend bool operator==(const ModeOccupations &, const ModeOccupations &) = default;
};

/// Dimension floor(N/2)+1 of the D=0 ladder.
std::size_t basis_dim(SystemSize n);

/// Occupations of the ladder state |k>.
ModeOccupations ladder_occupations(SystemSize n, int k);

/// Normalized amplitude vector over the D=0 ladder. Immutable.
class SpinorState {
public:
  /// Throws std::invalid_argument if the length is wrong or the norm differs
  /// from one by more than kNormTolerance. Never renormalizes.
  SpinorState(SystemSize n, std::vector<complex> amplitudes);

  /// Explicit renormalization, for propagator output and analytic vectors.
  static SpinorState normalized(SystemSize n, std::vector<complex> amplitudes);

  /// Fock state |k>.
  static SpinorState fock(SystemSize n, int k);

  SystemSize size() const noexcept { return size_; }
  int atoms() const noexcept { return size_.atoms(); }
  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const complex> amplitudes() const noexcept { return amplitudes_; }
  complex operator[](std::size_t k) const { return amplitudes_[k]; }

  /// Probability |c_k|^2 of each ladder state.
  std::vector<double> populations() const;

  static constexpr double kNormTolerance = 1e-12;

private:
  SystemSize size_;
  std::vector<complex> amplitudes_;
};

/// |k=0>: all atoms in m_f = 0.
SpinorState state_polar(SystemSize n);

/// |k=N/2>; rejects odd N.
SpinorState state_twin_fock(SystemSize n);

/// <N+> = <N-> = sum_k k |c_k|^2.
double mean_side_population(const SpinorState &s);

/// <N0> = N - 2 <N+>.
double mean_central_population(const SpinorState &s);

/// <a|b>; rejects mismatched N.
complex overlap(const SpinorState &a, const SpinorState &b);

/// |<a|b>|^2.
double fidelity(const SpinorState &a, const SpinorState &b);

} // namespace spinor
