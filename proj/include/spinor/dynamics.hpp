#pragma once

// Ramps and quenches of the quadratic Zeeman shift starting from |k=0>.
// Times are in units of hbar/q_c.

#include "spinor/fockspace.hpp"
#include "spinor/propagator.hpp"

#include <vector>

namespace spinor {

/// q(t) = q_start - Q t / 4, stopped at q_end.
class RampSchedule {
public:
  /// Throws std::invalid_argument unless Q > 0 and q_end < q_start.
  RampSchedule(double rate, double q_end, double q_start = 1.5);

  double rate() const noexcept { return rate_; }
  double q_start() const noexcept { return q_start_; }
  double q_end() const noexcept { return q_end_; }
  double q_at(double t) const noexcept;
  /// 4 (q_start - q_end) / Q.
  double duration() const noexcept;

private:
  double rate_;
  double q_end_;
  double q_start_;
};

struct TrajectorySample {
  double t;
  double q;
  double qfi_sx;            // F_Q[Sx] / N
  double qfi_jx;            // F_Q[Jx] / N
  double qfi_block;         // 4 (A + |B|) / N, best direction in (G1,G2,G6,G7)
  double qfi_optimal;       // 4 x largest covariance eigenvalue / N
  double ground_fidelity;   // |<E0(q)|psi>|^2
  double mean_side;         // <N+> = <N->
  double conversion;        // <N+ + N->/N
  double energy;            // <H(q)>
};

struct Trajectory {
  SystemSize size;
  std::vector<TrajectorySample> samples;
  std::vector<SpinorState> states; // filled only when requested
  SpinorState final_state;
  PropagationStats stats;
};

struct SamplingOptions {
  int samples = 101;        // including both endpoints
  bool keep_states = false;
  bool ground_fidelity = true;
};

/// Observables of one state at Zeeman shift q.
TrajectorySample observe(const SpinorState &psi, double t, double q, bool with_ground_fidelity);

Trajectory evolve_ramp(SystemSize n, const RampSchedule &schedule, const PropagatorConfig &config,
                       const SamplingOptions &sampling = {});

/// Fixed-q evolution from |k=0> up to t_final.
Trajectory evolve_quench(SystemSize n, double q, double t_final, const PropagatorConfig &config,
                         const SamplingOptions &sampling = {});

/// Same, sampled at caller-provided strictly increasing times (first may be 0).
Trajectory evolve_quench_at(SystemSize n, double q, const std::vector<double> &times,
                            const PropagatorConfig &config, const SamplingOptions &sampling = {});

/// <N+ + N->/N per sample.
std::vector<double> conversion_efficiency(const Trajectory &traj);

} // namespace spinor
