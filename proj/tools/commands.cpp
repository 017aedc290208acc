#include "commands.hpp"

#include "csv.hpp"
#include "pool.hpp"

#include "spinor/cba.hpp"
#include "spinor/decomposition.hpp"
#include "spinor/dynamics.hpp"
#include "spinor/errors.hpp"
#include "spinor/estimation.hpp"
#include "spinor/hamiltonian.hpp"
#include "spinor/metrology.hpp"
#include "spinor/parametric.hpp"
#include "spinor/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#ifndef SPINOR_VERSION
#define SPINOR_VERSION "0.0.0"
#endif

namespace spinor::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string fd(double v) { return format_double(v); }
std::string fi(long long v) { return std::to_string(v); }

int require_n(const json &p) {
  const int n = p.at("n").get<int>();
  if (n < 2)
    throw std::invalid_argument("--n must be at least 2");
  return n;
}

std::vector<double> require_grid(const json &p, const char *key) {
  auto g = p.at(key).get<std::vector<double>>();
  if (g.empty())
    throw std::invalid_argument(std::string(key) + " is empty");
  return g;
}

PropagatorConfig propagator_from(const json &p) {
  PropagatorConfig cfg;
  if (!p.contains("propagator"))
    return cfg;
  const auto &j = p.at("propagator");
  cfg.method = parse_method(j.value("method", method_name(cfg.method)));
  cfg.dt = j.value("dt", cfg.dt);
  cfg.tolerance = j.value("tolerance", cfg.tolerance);
  cfg.norm_budget = j.value("norm_budget", cfg.norm_budget);
  cfg.krylov_dim = j.value("krylov_dim", cfg.krylov_dim);
  return cfg;
}

json units() {
  return {{"hbar", 1},
          {"energy", "q_c = 2N|lambda|"},
          {"lambda", "-1/(2N)"},
          {"time", "hbar/q_c"},
          {"theta", "rad"},
          {"sigma", "atoms per mode (Gaussian standard deviation)"},
          {"qfi", "per particle unless the column says otherwise"}};
}

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void write_manifest(const fs::path &path, const json &manifest) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  out << manifest.dump(2) << "\n";
}

json output_entry(const std::string &file, const std::vector<std::string> &columns) {
  return {{"path", file}, {"format", "csv"}, {"columns", columns}};
}

// Rows skipped when resuming into an existing file.
long long resume_point(const fs::path &path, const std::vector<std::string> &header, bool resume) {
  if (!resume)
    return -1;
  return completed_rows(path, header);
}

// ---------------------------------------------------------------- groundscan

json run_groundscan(const json &p, const ExecutionOptions &opt, json &results, std::ostream &log) {
  const SystemSize n(require_n(p));
  const auto grid = require_grid(p, "q_grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("q grid must be strictly increasing");
  const auto header = groundscan_columns();
  const fs::path file = opt.out_dir / "groundscan.csv";
  const long long done = resume_point(file, header, opt.resume);
  CsvWriter csv(file, header, done);
  if (done > 0)
    log << "resuming groundscan after " << done << " rows\n";
  using Row = std::vector<std::string>;
  ordered_parallel<Row>(
      static_cast<std::size_t>(std::max(0LL, done)), grid.size(), opt.jobs,
      [&](std::size_t i) {
        const double q = grid[i];
        const auto h = build_hamiltonian(n, q);
        const auto gs = ground_state(h);
        const auto cov = covariance_matrix(gs.state);
        const auto best = qfi_optimal(cov);
        const double a = n.atoms();
        return Row{fd(q),
                   fd(4.0 * cov.lambda_plus() / a),
                   fd(4.0 * cov.lambda_minus() / a),
                   fd(4.0 * cov.lambda_one() / a),
                   fd(4.0 * cov.var45 / a),
                   fd(best.qfi / a),
                   direction_label(cov, best.branches.front()),
                   fd(mean_central_population(gs.state) / a),
                   fd(spectral_gap(n, q)),
                   fd(gs.energy)};
      },
      [&](std::size_t, const Row &r) { csv.row(r); });
  results["rows"] = grid.size();
  return json::array({output_entry(file.filename().string(), header)});
}

// ---------------------------------------------------------------------- ramp

json run_ramp(const json &p, const ExecutionOptions &opt, json &results, std::ostream &log) {
  const SystemSize n(require_n(p));
  const auto rates = require_grid(p, "Q");
  const double q_end = p.value("q_end", 0.0);
  const double q_start = p.value("q_start", 1.5);
  const int samples = p.value("samples", 101);
  const auto cfg = propagator_from(p);
  SamplingOptions sampling;
  sampling.samples = samples;

  if (rates.size() == 1) {
    const RampSchedule schedule(rates.front(), q_end, q_start);
    const auto header = ramp_columns();
    const fs::path file = opt.out_dir / "ramp.csv";
    const auto traj = evolve_ramp(n, schedule, cfg, sampling);
    CsvWriter csv(file, header);
    for (const auto &s : traj.samples)
      csv.row({fd(s.t), fd(s.q), fd(s.qfi_sx), fd(s.qfi_jx), fd(s.qfi_optimal), fd(s.ground_fidelity),
               fd(s.conversion)});
    results["t_end"] = schedule.duration();
    results["final_qfi_sx_fraction"] = traj.samples.back().qfi_sx * n.atoms() / exact_qfi(StateKind::cba, n);
    results["steps"] = traj.stats.steps;
    results["max_norm_drift"] = traj.stats.max_norm_drift;
    log << "ramp: " << traj.stats.steps << " steps, max norm drift " << traj.stats.max_norm_drift << "\n";
    return json::array({output_entry(file.filename().string(), header)});
  }

  const auto header = ramp_sweep_columns();
  const fs::path file = opt.out_dir / "ramp_sweep.csv";
  const long long done = resume_point(file, header, opt.resume);
  CsvWriter csv(file, header, done);
  using Row = std::vector<std::string>;
  ordered_parallel<Row>(
      static_cast<std::size_t>(std::max(0LL, done)), rates.size(), opt.jobs,
      [&](std::size_t i) {
        const RampSchedule schedule(rates[i], q_end, q_start);
        SamplingOptions s2;
        s2.samples = 2;
        const auto traj = evolve_ramp(n, schedule, cfg, s2);
        const auto &f = traj.samples.back();
        const auto target = ground_state(build_hamiltonian(n, q_end));
        const double f0 = qfi_optimal(target.state).qfi / n.atoms();
        return Row{fd(rates[i]), fd(schedule.duration()), fd(f.qfi_sx), fd(f.qfi_jx), fd(f.qfi_optimal),
                   fd(f0), fd(f.qfi_optimal / f0), fd(f.ground_fidelity), fd(f.conversion)};
      },
      [&](std::size_t, const Row &r) { csv.row(r); });
  results["rows"] = rates.size();
  return json::array({output_entry(file.filename().string(), header)});
}

// --------------------------------------------------------------------- noise

json run_noise(const json &p, const ExecutionOptions &opt, json &results, std::ostream &log) {
  const SystemSize n(require_n(p));
  const StateKind kind = parse_state_kind(p.at("kind").get<std::string>());
  const auto sigmas = require_grid(p, "sigma_grid");
  for (double s : sigmas)
    if (!(s >= 0.0))
      throw std::invalid_argument("sigma values must be non-negative");
  const auto thetas = p.value("theta_grid", std::vector<double>{});
  const double qfi = exact_qfi(kind, n);
  json outputs = json::array();

  const auto header = noise_columns();
  const fs::path file = opt.out_dir / "noise.csv";
  const long long done = resume_point(file, header, opt.resume);
  {
    CsvWriter csv(file, header, done);
    using Row = std::vector<std::string>;
    ordered_parallel<Row>(
        static_cast<std::size_t>(std::max(0LL, done)), sigmas.size(), opt.jobs,
        [&](std::size_t i) {
          const auto peak = peak_fisher(kind, n, sigmas[i]);
          return Row{fd(sigmas[i]), fd(sigmas[i] / std::sqrt(n.atoms())), fd(peak.theta), fd(peak.fisher),
                     fd(peak.fisher / n.atoms()), fd(peak.fisher / qfi), fi(peak.fisher > n.atoms())};
        },
        [&](std::size_t, const Row &r) { csv.row(r); });
  }
  outputs.push_back(output_entry(file.filename().string(), header));

  if (!thetas.empty()) {
    const auto th_header = noise_theta_columns();
    const fs::path th_file = opt.out_dir / "noise_theta.csv";
    CsvWriter csv(th_file, th_header);
    using Row = std::vector<std::vector<std::string>>;
    ordered_parallel<Row>(
        0, sigmas.size(), opt.jobs,
        [&](std::size_t i) {
          Row rows;
          for (double th : thetas) {
            const auto f = classical_fisher(apply_detection_noise(rotate_and_distribute(kind, n, th), sigmas[i]));
            rows.push_back({fd(sigmas[i]), fd(th), fd(f.value), fd(f.value / n.atoms()), fi(f.singular)});
          }
          return rows;
        },
        [&](std::size_t, const Row &rows) {
          for (const auto &r : rows)
            csv.row(r);
        });
    outputs.push_back(output_entry(th_file.filename().string(), th_header));
  }

  if (p.value("sigma_max", true) && n.atoms() >= 4) {
    const double smax = sigma_max(kind, n);
    results["sigma_max"] = smax;
    results["sigma_max_over_sqrt_n"] = smax / std::sqrt(n.atoms());
    log << "sigma_max/sqrt(N) = " << smax / std::sqrt(n.atoms()) << "\n";
  }
  results["qfi"] = qfi;
  return outputs;
}

// -------------------------------------------------------------------- quench

json run_quench(const json &p, const ExecutionOptions &opt, json &results, std::ostream &) {
  const SystemSize n(require_n(p));
  const double q = p.contains("q") && !p.at("q").is_null() ? p.at("q").get<double>() : resonance_q(n);
  const double t_final = p.at("t_final").get<double>();
  const int samples = p.value("samples", 201);
  if (!(t_final > 0.0) || samples < 2)
    throw std::invalid_argument("quench needs t_final > 0 and at least 2 samples");
  std::vector<double> grid;
  for (int i = 0; i < samples; ++i)
    grid.push_back(t_final * i / (samples - 1));
  const auto rows = compare_with_exact(n, q, grid, propagator_from(p));
  const auto header = quench_columns();
  const fs::path file = opt.out_dir / "quench.csv";
  CsvWriter csv(file, header);
  double peak = 0.0;
  for (const auto &r : rows) {
    csv.row({fd(r.t), fd(r.exact), fd(r.analytic), fd(r.relative_deviation), fd(r.mean_pairs_exact),
             fd(r.mean_pairs_analytic), fi(r.valid), fd(r.exact / n.atoms())});
    peak = std::max(peak, r.exact / n.atoms());
  }
  results["q"] = q;
  results["max_qfi_over_n2"] = peak;
  return json::array({output_entry(file.filename().string(), header)});
}

// ----------------------------------------------------------------- decompose

json run_decompose(const json &p, const ExecutionOptions &opt, json &results, std::ostream &log) {
  const SystemSize n(require_n(p));
  std::vector<int> sectors = p.contains("n_h") && !p.at("n_h").empty() ? p.at("n_h").get<std::vector<int>>()
                                                                          : default_h_sectors(n);
  const int n_theta = p.value("husimi_theta", 181);
  const int n_phi = p.value("husimi_phi", 361);
  for (int nh : sectors)
    if (nh < 0 || nh > n.atoms())
      throw std::invalid_argument("N_h values must lie in [0, N]");

  const auto state = cba_coefficients(n);
  const auto g = to_gh_basis(state);
  const auto pnh = h_number_distribution(g);
  json outputs = json::array();

  const auto all_header = std::vector<std::string>{"n_h", "probability", "conditional_qfi", "conditional_qfi_over_n"};
  const fs::path all_file = opt.out_dir / "decompose_sectors.csv";
  {
    CsvWriter csv(all_file, all_header);
    for (int nh = 0; nh <= n.atoms(); ++nh) {
      const double pr = pnh[static_cast<std::size_t>(nh)];
      const double f = pr >= 1e-300 ? conditional_qfi(conditional_state(g, nh)) : std::nan("");
      csv.row({fi(nh), fd(pr), fd(f), fd(f / n.atoms())});
    }
  }
  outputs.push_back(output_entry(all_file.filename().string(), all_header));

  const auto header = decompose_columns();
  const fs::path file = opt.out_dir / "decompose.csv";
  struct Sector {
    std::vector<std::string> row;
    std::optional<HusimiGrid> grid;
  };
  std::vector<json> husimi_entries(sectors.size());
  {
    CsvWriter csv(file, header);
    ordered_parallel<Sector>(
        0, sectors.size(), opt.jobs,
        [&](std::size_t i) {
          const int nh = sectors[i];
          const double pr = pnh[static_cast<std::size_t>(nh)];
          Sector s;
          std::string husimi_file;
          double f = std::nan("");
          if (pr >= 1e-300) {
            const auto c = conditional_state(g, nh);
            f = conditional_qfi(c);
            if (c.particles() >= 1) {
              s.grid = husimi(c, n_theta, n_phi);
              husimi_file = "husimi_nh" + std::to_string(nh) + ".csv";
            }
          }
          s.row = {fi(nh), fd(pr), fd(f), fd(f / n.atoms()), husimi_file};
          return s;
        },
        [&](std::size_t i, const Sector &s) {
          csv.row(s.row);
          if (s.grid) {
            write_matrix_csv(opt.out_dir / s.row.back(), s.grid->theta.size(), s.grid->phi.size(), s.grid->values);
            husimi_entries[i] = {{"path", s.row.back()},
                                 {"format", "csv-matrix"},
                                 {"n_h", sectors[i]},
                                 {"rows", {{"axis", "theta"}, {"min", 0.0}, {"max", std::numbers::pi}, {"count", n_theta}}},
                                 {"columns", {{"axis", "phi"}, {"min", 0.0}, {"max", 2 * std::numbers::pi}, {"count", n_phi}}},
                                 {"value", "|<CSS(theta,phi)|phi_Nh>|^2; Sx along theta=pi/2, phi=0"}};
          }
        });
  }
  outputs.push_back(output_entry(file.filename().string(), header));
  for (auto &e : husimi_entries)
    if (!e.is_null())
      outputs.push_back(e);

  const auto id = decomposition_identity(state);
  results["qfi_sx"] = id.lhs;
  results["sector_sum"] = id.rhs;
  double listed = 0.0;
  for (int nh : sectors)
    listed += pnh[static_cast<std::size_t>(nh)];
  results["listed_probability"] = listed;
  log << "F_Q[Sx] = " << id.lhs << ", sum over sectors = " << id.rhs << "\n";
  return outputs;
}

// -------------------------------------------------------------------- verify

json run_verify(const json &, const ExecutionOptions &, json &results, std::ostream &log) {
  bool all = true;
  json checks = json::array();
  for (const auto &c : run_self_checks()) {
    log << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    all = all && c.passed;
  }
  results["checks"] = checks;
  results["all_passed"] = all;
  if (!all)
    throw NumericalError("self-checks failed");
  return json::array();
}

} // namespace

std::vector<double> parse_grid(const std::string &text) {
  auto number = [&](const std::string &s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != s.size() || s.empty())
      throw std::invalid_argument("bad number '" + s + "' in grid '" + text + "'");
    return v;
  };
  std::vector<std::string> parts;
  const char sep = text.find(':') != std::string::npos ? ':' : ',';
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);)
    parts.push_back(item);
  if (sep == ',') {
    std::vector<double> out;
    for (const auto &s : parts)
      out.push_back(number(s));
    if (out.empty())
      throw std::invalid_argument("empty grid");
    return out;
  }
  if (parts.size() != 3 && !(parts.size() == 4 && parts[3] == "log"))
    throw std::invalid_argument("grid must be lo:hi:count[:log] or a comma list, got '" + text + "'");
  const double lo = number(parts[0]), hi = number(parts[1]);
  const double count_d = number(parts[2]);
  const int count = static_cast<int>(count_d);
  if (count < 1 || count != count_d)
    throw std::invalid_argument("grid count must be a positive integer");
  const bool log_spaced = parts.size() == 4;
  if (log_spaced && !(lo > 0.0 && hi > 0.0))
    throw std::invalid_argument("log grid needs positive bounds");
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    out.push_back(log_spaced ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo));
  }
  if (count > 1)
    out.back() = hi;
  return out;
}

std::vector<std::string> groundscan_columns() {
  return {"q", "qfi_plus_over_n", "qfi_minus_over_n", "qfi_g38_over_n", "qfi_jxjy_over_n",
          "qfi_max_over_n", "dominant_pair", "n0_over_n", "gap", "energy"};
}
std::vector<std::string> ramp_columns() {
  return {"t", "q", "qfi_sx_over_n", "qfi_jx_over_n", "qfi_max_over_n", "ground_fidelity", "conversion_efficiency"};
}
std::vector<std::string> ramp_sweep_columns() {
  return {"Q", "t_end", "qfi_sx_over_n", "qfi_jx_over_n", "qfi_max_over_n", "ground_qfi_max_over_n",
          "retained_fraction", "ground_fidelity", "conversion_efficiency"};
}
std::vector<std::string> noise_columns() {
  return {"sigma", "sigma_over_sqrt_n", "theta_star", "peak_fisher", "peak_fisher_over_n", "peak_over_qfi", "above_sql"};
}
std::vector<std::string> noise_theta_columns() { return {"sigma", "theta", "fisher", "fisher_over_n", "singular"}; }
std::vector<std::string> quench_columns() {
  return {"t", "qfi_exact_over_n", "qfi_analytic_over_n", "relative_deviation", "mean_pairs_exact",
          "mean_pairs_analytic", "analytic_valid", "qfi_exact_over_n2"};
}
std::vector<std::string> decompose_columns() {
  return {"n_h", "probability", "conditional_qfi", "conditional_qfi_over_n", "husimi_file"};
}

json execute(const std::string &command, const json &params, const ExecutionOptions &options, std::ostream &log) {
  fs::create_directories(options.out_dir);
  const auto started = std::chrono::steady_clock::now();
  json manifest = {{"schema_version", kManifestSchemaVersion},
                   {"command", command},
                   {"parameters", params},
                   {"units", units()},
                   {"library_version", SPINOR_VERSION},
                   {"started_at", utc_now()},
                   {"status", "running"},
                   {"outputs", json::array()}};
  const fs::path manifest_path = options.out_dir / (command + ".manifest.json");
  write_manifest(manifest_path, manifest);

  json results = json::object();
  json outputs;
  if (command == "groundscan")
    outputs = run_groundscan(params, options, results, log);
  else if (command == "ramp")
    outputs = run_ramp(params, options, results, log);
  else if (command == "noise")
    outputs = run_noise(params, options, results, log);
  else if (command == "quench")
    outputs = run_quench(params, options, results, log);
  else if (command == "decompose")
    outputs = run_decompose(params, options, results, log);
  else if (command == "verify")
    outputs = run_verify(params, options, results, log);
  else
    throw std::invalid_argument("unknown command '" + command + "'");

  manifest["outputs"] = outputs;
  manifest["results"] = results;
  manifest["status"] = "complete";
  manifest["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  write_manifest(manifest_path, manifest);
  return manifest;
}

int run_cli(int argc, char **argv) {
  CLI::App app{"Metrology of spin-1 condensates in the D=0 sector"};
  app.set_version_flag("--version", SPINOR_VERSION);
  app.fallthrough();
  std::string manifest_in;
  ExecutionOptions opt;
  std::string out_dir = ".";
  app.add_option("--manifest", manifest_in, "Re-run the command recorded in a manifest");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--jobs", opt.jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_flag("--resume", opt.resume, "Continue an interrupted sweep in the output directory");

  int n = 0;
  std::string q_grid, sigma_grid, theta_grid, kind = "cba", rate, method = "chebyshev", nh_list;
  double q = std::nan(""), q_end = 0.0, t_final = 4.0, dt = 0.0, tolerance = 1e-10;
  int samples = 101, husimi_theta = 181, husimi_phi = 361;

  auto add_n = [&](CLI::App *sub) { sub->add_option("--n", n, "Atom number N")->required(); };
  auto add_propagator = [&](CLI::App *sub) {
    sub->add_option("--method", method, "chebyshev | krylov_expm | rk_adaptive");
    sub->add_option("--dt", dt, "Fixed step (0 = automatic)");
    sub->add_option("--tolerance", tolerance, "Local error tolerance");
  };

  auto *ground = app.add_subcommand("groundscan", "Ground-state QFI across q");
  add_n(ground);
  ground->add_option("--q-grid", q_grid, "q values: lo:hi:count or a,b,c")->required();

  auto *ramp = app.add_subcommand("ramp", "Quasi-adiabatic ramp from q=1.5");
  add_n(ramp);
  ramp->add_option("--Q", rate, "Ramp rate, or a list/grid of rates for a sweep")->required();
  ramp->add_option("--q-end", q_end, "Final q");
  ramp->add_option("--samples", samples, "Samples along the trajectory");
  add_propagator(ramp);

  auto *noise = app.add_subcommand("noise", "Peak Fisher information under detection noise");
  add_n(noise);
  noise->add_option("--kind", kind, "cba | tf");
  noise->add_option("--sigma-grid", sigma_grid, "sigma values")->required();
  noise->add_option("--theta-grid", theta_grid, "Optional theta values for a full F(theta) table");

  auto *quench = app.add_subcommand("quench", "Quench to fixed q (default: resonance)");
  add_n(quench);
  quench->add_option("--q", q, "Quadratic Zeeman shift after the quench");
  quench->add_option("--t-final", t_final, "Final time");
  quench->add_option("--samples", samples, "Samples in [0, t_final]");
  add_propagator(quench);

  auto *decompose = app.add_subcommand("decompose", "N_h decomposition and Husimi maps of |CBA>");
  add_n(decompose);
  decompose->add_option("--nh", nh_list, "Comma list of N_h sectors (default 0,N/4,N/2,3N/4)");
  decompose->add_option("--husimi-theta", husimi_theta, "Husimi grid points in theta");
  decompose->add_option("--husimi-phi", husimi_phi, "Husimi grid points in phi");

  auto *verify = app.add_subcommand("verify", "Run the bundled oracle and identity checks");
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }
  opt.out_dir = out_dir;

  try {
    std::string command;
    json params;
    auto propagator = [&] {
      return json{{"method", method}, {"dt", dt}, {"tolerance", tolerance},
                  {"norm_budget", PropagatorConfig{}.norm_budget}, {"krylov_dim", PropagatorConfig{}.krylov_dim}};
    };
    if (!manifest_in.empty()) {
      if (!app.get_subcommands().empty())
        throw std::invalid_argument("--manifest cannot be combined with a subcommand");
      std::ifstream in(manifest_in);
      if (!in)
        throw std::invalid_argument("cannot read manifest " + manifest_in);
      const json m = json::parse(in);
      if (m.value("schema_version", 0) != kManifestSchemaVersion)
        throw std::invalid_argument("unsupported manifest schema version");
      command = m.at("command").get<std::string>();
      params = m.at("parameters");
      if (!app.get_option("--out")->count())
        opt.out_dir = fs::path(manifest_in).parent_path().empty() ? fs::path(".") : fs::path(manifest_in).parent_path();
    } else if (*ground) {
      command = "groundscan";
      params = {{"n", n}, {"q_grid", parse_grid(q_grid)}};
    } else if (*ramp) {
      command = "ramp";
      params = {{"n", n}, {"Q", parse_grid(rate)}, {"q_start", 1.5}, {"q_end", q_end},
                {"samples", samples}, {"propagator", propagator()}};
    } else if (*noise) {
      command = "noise";
      params = {{"n", n}, {"kind", state_kind_name(parse_state_kind(kind))}, {"sigma_grid", parse_grid(sigma_grid)},
                {"theta_grid", theta_grid.empty() ? std::vector<double>{} : parse_grid(theta_grid)},
                {"sigma_max", true}};
    } else if (*quench) {
      command = "quench";
      params = {{"n", n}, {"q", std::isnan(q) ? json(nullptr) : json(q)}, {"t_final", t_final},
                {"samples", samples}, {"propagator", propagator()}};
    } else if (*decompose) {
      command = "decompose";
      std::vector<int> sectors;
      if (!nh_list.empty())
        for (double v : parse_grid(nh_list)) {
          if (v != std::floor(v))
            throw std::invalid_argument("N_h values must be integers");
          sectors.push_back(static_cast<int>(v));
        }
      params = {{"n", n}, {"n_h", sectors}, {"husimi_theta", husimi_theta}, {"husimi_phi", husimi_phi}};
    } else if (*verify) {
      command = "verify";
      params = json::object();
    } else {
      std::cerr << app.help();
      return kExitUsage;
    }
    const auto manifest = execute(command, params, opt, std::cerr);
    std::cout << manifest.at("results").dump(2) << "\n";
    return kExitOk;
  } catch (const NumericalError &e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument &e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception &e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kExitUsage;
  }
}

} // namespace spinor::cli
