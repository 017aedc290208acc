#include "spinor/dynamics.hpp"

#include "spinor/hamiltonian.hpp"
#include "spinor/metrology.hpp"

#include <cmath>
#include <stdexcept>

namespace spinor {

RampSchedule::RampSchedule(double rate, double q_end, double q_start)
    : rate_(rate), q_end_(q_end), q_start_(q_start) {
  if (!(rate > 0.0) || !std::isfinite(rate))
    throw std::invalid_argument("ramp rate Q must be positive");
  if (!(q_end < q_start))
    throw std::invalid_argument("ramp must decrease q");
}

double RampSchedule::q_at(double t) const noexcept {
  return std::max(q_end_, q_start_ - rate_ * t / 4.0);
}

double RampSchedule::duration() const noexcept { return 4.0 * (q_start_ - q_end_) / rate_; }

TrajectorySample observe(const SpinorState &psi, double t, double q, bool with_ground_fidelity) {
  const double n = psi.atoms();
  const auto cov = covariance_matrix(psi);
  static const GellMannVector sx = gell_mann_direction(Generator::Sx);
  static const GellMannVector jx = gell_mann_direction(Generator::Jx);
  TrajectorySample s{};
  s.t = t;
  s.q = q;
  s.qfi_sx = qfi_direction(cov, sx) / n;
  s.qfi_jx = qfi_direction(cov, jx) / n;
  s.qfi_block = 4.0 * cov.lambda_plus() / n;
  s.qfi_optimal = qfi_optimal(cov).qfi / n;
  const auto h = build_hamiltonian(psi.size(), q);
  s.ground_fidelity = with_ground_fidelity ? fidelity(ground_state(h).state, psi) : std::nan("");
  s.mean_side = mean_side_population(psi);
  s.conversion = 2.0 * s.mean_side / n;
  s.energy = energy_expectation(h, psi);
  return s;
}

namespace {

std::vector<double> uniform_times(double t_end, int samples) {
  if (samples < 2)
    throw std::invalid_argument("need at least two samples");
  std::vector<double> ts(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i)
    ts[static_cast<std::size_t>(i)] = t_end * i / (samples - 1);
  ts.back() = t_end;
  return ts;
}

Trajectory run(SystemSize n, const std::vector<double> &times, const std::function<double(double)> &q_of_t,
               bool constant_q, const PropagatorConfig &config, const SamplingOptions &sampling) {
  if (times.empty())
    throw std::invalid_argument("empty sample grid");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("sample times must be strictly increasing");
  if (times.front() < 0.0)
    throw std::invalid_argument("sample times must be non-negative");

  Propagator prop(n, config);
  std::vector<complex> psi(basis_dim(n), 0.0);
  psi[0] = 1.0;
  Trajectory traj{n, {}, {}, state_polar(n), {}};
  double t = 0.0;
  for (double ts : times) {
    prop.advance(psi, t, ts, q_of_t, constant_q);
    t = ts;
    auto state = SpinorState::normalized(n, psi);
    traj.samples.push_back(observe(state, t, q_of_t(t), sampling.ground_fidelity));
    if (sampling.keep_states)
      traj.states.push_back(state);
  }
  traj.final_state = SpinorState::normalized(n, psi);
  traj.stats = prop.stats();
  return traj;
}

} // namespace

Trajectory evolve_ramp(SystemSize n, const RampSchedule &schedule, const PropagatorConfig &config,
                       const SamplingOptions &sampling) {
  const auto times = uniform_times(schedule.duration(), sampling.samples);
  return run(n, times, [&](double t) { return schedule.q_at(t); }, false, config, sampling);
}

Trajectory evolve_quench(SystemSize n, double q, double t_final, const PropagatorConfig &config,
                         const SamplingOptions &sampling) {
  if (!(t_final > 0.0))
    throw std::invalid_argument("t_final must be positive");
  return evolve_quench_at(n, q, uniform_times(t_final, sampling.samples), config, sampling);
}

Trajectory evolve_quench_at(SystemSize n, double q, const std::vector<double> &times,
                            const PropagatorConfig &config, const SamplingOptions &sampling) {
  return run(n, times, [q](double) { return q; }, true, config, sampling);
}

std::vector<double> conversion_efficiency(const Trajectory &traj) {
  std::vector<double> out;
  out.reserve(traj.samples.size());
  for (const auto &s : traj.samples)
    out.push_back(s.conversion);
  return out;
}

} // namespace spinor
