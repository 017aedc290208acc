#pragma once

// Action of exp(-i tau T) on a vector for real symmetric tridiagonal T, and a
// time stepper for i d(psi)/dt = H(q(t)) psi on the D=0 ladder.

#include "spinor/fockspace.hpp"
#include "spinor/tridiagonal.hpp"

#include <functional>
#include <string>
#include <vector>

namespace spinor {

enum class PropagatorMethod { chebyshev, krylov_expm, rk_adaptive };

std::string method_name(PropagatorMethod m);
PropagatorMethod parse_method(const std::string &s);

struct PropagatorConfig {
  PropagatorMethod method = PropagatorMethod::chebyshev;
  /// Fixed step for the exponential methods; 0 selects spread * dt = 0.5,
  /// with spread the Gershgorin half-width of H.
  double dt = 0.0;
  /// Local error tolerance (Krylov a posteriori estimate, RK step control).
  double tolerance = 1e-10;
  /// Allowed | |psi| - 1 | at any point of a run.
  double norm_budget = 1e-8;
  int krylov_dim = 24;
  /// Smallest step the adaptive integrator may take before giving up.
  double min_step = 1e-12;
};

/// psi <- exp(-i tau T) psi with Chebyshev expansion (Bessel coefficients)
/// over the Gershgorin interval. Accurate to about machine precision.
void expm_chebyshev(const SymTridiagonal &t, double tau, std::vector<complex> &psi);

/// psi <- exp(-i tau T) psi via Lanczos with full reorthogonalization and
/// substepping until the a posteriori error estimate is below tol.
void expm_krylov(const SymTridiagonal &t, double tau, std::vector<complex> &psi, int krylov_dim,
                 double tol);

/// Half-width of the Gershgorin interval of T.
double spectral_spread(const SymTridiagonal &t);

/// Default fixed step for a Hamiltonian family over a q range.
double default_time_step(SystemSize n, double q_lo, double q_hi);

struct PropagationStats {
  long long steps = 0;
  long long rejected = 0;
  double max_norm_drift = 0.0;
};

/// Integrates i d(psi)/dt = H(q(t)) psi on the ladder of N atoms.
///
/// Exponential methods use a fourth-order commutator-free Magnus step:
/// with Gauss nodes t1, t2 and H linear in q, one step is
///   exp(-i h/2 H(2(a1 q1 + a2 q2))) followed by exp(-i h/2 H(2(a2 q1 + a1 q2))),
/// a1,2 = 1/4 +- sqrt3/6. If the schedule is constant each step is exact.
/// The adaptive method is Dormand-Prince 5(4) on the time-dependent H.
class Propagator {
public:
  Propagator(SystemSize n, PropagatorConfig config);

  /// Advances psi from t0 to t1. Throws NumericalError if the norm leaves the
  /// budget or the adaptive step underflows.
  void advance(std::vector<complex> &psi, double t0, double t1,
               const std::function<double(double)> &q_of_t, bool constant_q = false);

  const PropagationStats &stats() const noexcept { return stats_; }
  const PropagatorConfig &config() const noexcept { return config_; }

private:
  void exponential(double q, double tau, std::vector<complex> &psi) const;
  void advance_magnus(std::vector<complex> &psi, double t0, double t1,
                      const std::function<double(double)> &q_of_t, bool constant_q);
  void advance_rk(std::vector<complex> &psi, double t0, double t1,
                  const std::function<double(double)> &q_of_t);
  void check_norm(const std::vector<complex> &psi, double t);

  SystemSize size_;
  PropagatorConfig config_;
  PropagationStats stats_;
  double rk_step_ = 0.0;
};

} // namespace spinor
