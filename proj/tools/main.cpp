// adiagrover: annealed Grover-oracle experiments from the command line.
//
// Subcommands: oracle-infidelity, grover-run, sector-phase, overlap-estimate.
// Options can come from a flat key=value config file (--config); command-line
// flags win over config values. Exit codes: 0 success, 1 config error,
// 2 numerical failure.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>

#include "adiagrover/experiments.hpp"

namespace {

using namespace adiagrover;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file '" + out_path + "'");
  out << text;
}

struct CommonArgs {
  std::string out;
  int steps = 0;
  int threads = 1;
  std::uint64_t seed = 1;
};

// every option takes the last occurrence, so values injected from a config
// file are overridden by explicit command-line flags
template <typename... Args>
CLI::Option* opt(CLI::App* cmd, Args&&... args) {
  return cmd->add_option(std::forward<Args>(args)...)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

void add_common(CLI::App* cmd, CommonArgs& raw) {
  opt(cmd, "--config", "flat key=value config file; flags win")
      ->type_name("FILE");  // consumed before parsing; listed here for --help
  opt(cmd, "--out", raw.out, "output file (stdout when omitted)");
  opt(cmd, "--threads", raw.threads, "worker threads for sweeps")->check(CLI::PositiveNumber);
  opt(cmd, "--steps", raw.steps, "integrator steps (0 = auto)")->check(CLI::NonNegativeNumber);
  opt(cmd, "--seed", raw.seed, "base random seed");
}

// Pulls --config out of the raw arguments, loads the file, and splices its
// key=value pairs as flags right after the subcommand name so that explicit
// flags (parsed later, TakeLast) win.
std::vector<std::string> splice_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (auto it = args.begin(); it != args.end();) {
    if (*it == "--config") {
      if (std::next(it) == args.end())
        throw std::invalid_argument("--config expects a file path");
      config_path = *std::next(it);
      it = args.erase(it, std::next(it, 2));
    } else if (it->rfind("--config=", 0) == 0) {
      config_path = it->substr(9);
      it = args.erase(it);
    } else {
      ++it;
    }
  }
  if (!config_path.empty()) {
    auto insert_at = args.begin();
    while (insert_at != args.end() && insert_at->rfind("-", 0) == 0) ++insert_at;
    if (insert_at == args.end())
      throw std::invalid_argument("--config requires a subcommand");
    ++insert_at;  // past the subcommand name
    std::vector<std::string> injected;
    for (const auto& [key, value] : parse_config_file(config_path))
      injected.push_back("--" + key + "=" + value);  // single token, works for flags too
    args.insert(insert_at, injected.begin(), injected.end());
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"annealed Grover-oracle experiment runner"};
  app.require_subcommand(0, 1);

  // --- oracle-infidelity
  CommonArgs oi_common;
  struct {
    std::string model = "aklt", schedule = "tanh,linear", total_time = "4:200:8";
    std::string c0 = "auto", oracle = "spin1";
    int n = 0;
    double epsilon = 1.0;
  } oi;
  auto* oracle_inf = app.add_subcommand(
      "oracle-infidelity", "oracle error vs total annealing time, with decay fits");
  add_common(oracle_inf, oi_common);
  opt(oracle_inf, "--model", oi.model, "ising|aklt");
  opt(oracle_inf, "--schedule", oi.schedule, "comma list of tanh|linear");
  opt(oracle_inf, "--total-time", oi.total_time,
      "single value or start:stop:points-per-decade grid");
  opt(oracle_inf, "--n", oi.n, "register size (qubits or spin-1 sites)");
  opt(oracle_inf, "--epsilon", oi.epsilon, "Ising coupling magnitude");
  opt(oracle_inf, "--c0", oi.c0, "AKLT chemical potential shift, or 'auto' (-gap/2)");
  opt(oracle_inf, "--oracle", oi.oracle, "spin1|p1|p2");

  // --- grover-run
  CommonArgs gr_common;
  struct {
    std::string oracle = "p1", diffusion = "spin1", schedule = "linear", total_time = "30";
    int n = 4, iterations = 0, seeds = 1;
    double epsilon = 1.0;
  } gr;
  auto* grover = app.add_subcommand("grover-run", "full Grover search trajectories");
  add_common(grover, gr_common);
  opt(grover, "--n", gr.n, "number of qubits");
  opt(grover, "--epsilon", gr.epsilon, "Ising coupling magnitude");
  opt(grover, "--oracle", gr.oracle, "spin1|p1|p2|ideal");
  opt(grover, "--diffusion", gr.diffusion, "spin1|p1|p2|ideal");
  opt(grover, "--iterations", gr.iterations, "Grover rounds (0 = optimal)");
  opt(grover, "--seeds", gr.seeds, "number of consecutive seeds to run")
      ->check(CLI::PositiveNumber);
  opt(grover, "--schedule", gr.schedule, "tanh|linear");
  opt(grover, "--total-time", gr.total_time, "annealing duration per call");

  // --- sector-phase
  CommonArgs ph_common;
  struct {
    std::string schedule = "tanh,linear", total_time = "50";
    double em = 1.0;
  } ph;
  auto* phase = app.add_subcommand("sector-phase", "topological phase difference per sector pair");
  add_common(phase, ph_common);
  opt(phase, "--em", ph.em, "sector energy magnitude |E_m|")->check(CLI::PositiveNumber);
  opt(phase, "--schedule", ph.schedule, "comma list of tanh|linear");
  opt(phase, "--total-time", ph.total_time, "single value or grid");

  // --- overlap-estimate
  CommonArgs ov_common;
  struct {
    std::string oracle = "ideal", schedule = "linear", total_time = "30", initial;
    int n = 4, max_iterations = 40, shots = 1000;
    double epsilon = 1.0;
    bool sampled = false;
  } ov;
  auto* overlap = app.add_subcommand("overlap-estimate",
                                     "initial/target overlap from Grover oscillations");
  add_common(overlap, ov_common);
  opt(overlap, "--n", ov.n, "number of qubits");
  opt(overlap, "--epsilon", ov.epsilon, "Ising coupling magnitude");
  opt(overlap, "--oracle", ov.oracle, "spin1|p1|p2|ideal");
  opt(overlap, "--max-iterations", ov.max_iterations, "number of P_s samples")
      ->check(CLI::PositiveNumber);
  overlap->add_flag("--sampled", ov.sampled, "read P_s with binomial shot noise");
  opt(overlap, "--shots", ov.shots, "shots per point in sampled mode")
      ->check(CLI::PositiveNumber);
  opt(overlap, "--initial", ov.initial, "initial state file, one 're im' per line");
  opt(overlap, "--schedule", ov.schedule, "tanh|linear (annealed oracles)");
  opt(overlap, "--total-time", ov.total_time, "annealing duration per call");

  try {
    std::vector<std::string> args = splice_config(argc, argv);
    std::reverse(args.begin(), args.end());  // CLI11's vector overload wants it reversed
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (app.got_subcommand(oracle_inf)) {
      OracleInfidelityOptions opt;
      opt.model = oi.model;
      opt.schedules = parse_schedule_list(oi.schedule);
      opt.total_times = parse_time_grid(oi.total_time);
      opt.steps = oi_common.steps;
      opt.n = oi.n;
      opt.epsilon = oi.epsilon;
      if (oi.c0 != "auto") opt.c0 = std::stod(oi.c0);
      opt.oracle = oracle_variant_from_string(oi.oracle);
      opt.threads = oi_common.threads;
      const auto result = run_oracle_infidelity(opt);
      write_output(result.csv, oi_common.out);
      if (oi_common.out.empty())
        std::clog << result.fits_json << "\n";
      else
        write_output(result.fits_json + "\n", oi_common.out + ".fits.json");
      return 0;
    }
    if (app.got_subcommand(grover)) {
      GroverRunOptions opt;
      opt.n = gr.n;
      opt.epsilon = gr.epsilon;
      opt.oracle = oracle_variant_from_string(gr.oracle);
      opt.diffusion = oracle_variant_from_string(gr.diffusion);
      opt.iterations = gr.iterations;
      opt.seed = gr_common.seed;
      opt.seeds = gr.seeds;
      opt.schedule = parse_schedule_list(gr.schedule).front();
      opt.total_time = parse_time_grid(gr.total_time).front();
      opt.steps = gr_common.steps;
      opt.threads = gr_common.threads;
      write_output(run_grover_csv(opt), gr_common.out);
      return 0;
    }
    if (app.got_subcommand(phase)) {
      SectorPhaseOptions opt;
      opt.em = ph.em;
      opt.schedules = parse_schedule_list(ph.schedule);
      opt.total_times = parse_time_grid(ph.total_time);
      opt.steps = ph_common.steps;
      write_output(run_sector_phase_json(opt) + "\n", ph_common.out);
      return 0;
    }
    if (app.got_subcommand(overlap)) {
      OverlapEstimateOptions opt;
      opt.n = ov.n;
      opt.epsilon = ov.epsilon;
      opt.oracle = oracle_variant_from_string(ov.oracle);
      opt.max_iterations = ov.max_iterations;
      opt.seed = ov_common.seed;
      opt.sampled = ov.sampled;
      opt.shots = ov.shots;
      opt.initial_file = ov.initial;
      opt.schedule = parse_schedule_list(ov.schedule).front();
      opt.total_time = parse_time_grid(ov.total_time).front();
      opt.steps = ov_common.steps;
      write_output(run_overlap_estimate_json(opt) + "\n", ov_common.out);
      return 0;
    }
    std::cerr << app.help();
    return 1;
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
