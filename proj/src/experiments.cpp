#include "adiagrover/experiments.hpp"

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

namespace adiagrover {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_time_grid(const std::string& text) {
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    const double t = std::stod(text);
    if (!(t > 0.0)) throw std::invalid_argument("total-time must be positive");
    return {t};
  }
  const auto c2 = text.find(':', c1 + 1);
  const double start = std::stod(text.substr(0, c1));
  const double stop = std::stod(c2 == std::string::npos ? text.substr(c1 + 1)
                                                        : text.substr(c1 + 1, c2 - c1 - 1));
  const int ppd = c2 == std::string::npos ? 8 : std::stoi(text.substr(c2 + 1));
  if (!(start > 0.0) || !(stop > start)) throw std::invalid_argument("bad time grid bounds");
  if (ppd < 1) throw std::invalid_argument("points-per-decade must be >= 1");
  const int segments = std::max(1, int(std::lround(std::log10(stop / start) * ppd)));
  std::vector<double> grid;
  grid.reserve(std::size_t(segments) + 1);
  for (int i = 0; i <= segments; ++i)
    grid.push_back(start * std::pow(stop / start, double(i) / segments));
  grid.back() = stop;
  return grid;
}

std::vector<ScheduleKind> parse_schedule_list(const std::string& text) {
  std::vector<ScheduleKind> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(schedule_kind_from_string(item));
  if (out.empty()) throw std::invalid_argument("schedule list is empty");
  return out;
}

std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  const auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    const auto last = s.find_last_not_of(" \t\r");
    return first == std::string::npos ? std::string{} : s.substr(first, last - first + 1);
  };
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key=value, got '" + stripped + "'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": empty key");
    pairs.emplace_back(key, value);
  }
  return pairs;
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  const int workers = std::min<std::size_t>(std::max(threads, 1), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

namespace {

json to_json(const RunRecord& record) {
  for (const auto& [key, value] : record.metrics)
    if (!std::isfinite(value))
      throw numerical_error("record metric '" + key + "' is not finite");
  json parameters = json::object();
  for (const auto& [key, value] : record.parameters) parameters[key] = value;
  json metrics = json::object();
  for (const auto& [key, value] : record.metrics) metrics[key] = value;
  return json{{"experiment", record.experiment}, {"parameters", parameters}, {"metrics", metrics}};
}

json to_json(const FitResult& fit) {
  return json{{"model", to_string(fit.model)},
              {"amplitude", fit.amplitude},
              {"rate_or_exponent", fit.rate_or_exponent},
              {"r_squared", fit.r_squared}};
}

double max_abs_eigenvalue(const SectorDecomposition& sectors) {
  return sectors.eigenvalues.cwiseAbs().maxCoeff();
}

Vector zero_x_ancilla() {
  Vector v(3);
  v << 1.0 / std::sqrt(2.0), 0.0, -1.0 / std::sqrt(2.0);
  return v;
}

struct InfidelityPoint {
  double infidelity = std::numeric_limits<double>::quiet_NaN();
  double norm_drift = std::numeric_limits<double>::quiet_NaN();
  int steps = 0;
  bool converged = false;
  std::string flag = "nonconverged";
};

// One oracle call at (schedule, T) measured against the exact oracle, without
// the 0.5 readout gate: the experiment records the error even where the
// anneal is far from adiabatic.
InfidelityPoint oracle_infidelity_point(const HermitianOperator& hf, const StateVector& phi,
                                        OracleVariant variant, ScheduleKind kind, double t,
                                        int steps_override) {
  const auto sectors = decompose_sectors(hf, phi);
  const StateVector ideal = ideal_oracle(hf, phi);
  const int ancilla_dim = variant == OracleVariant::Spin1 ? 3 : 4;
  const double h_norm =
      (ancilla_dim == 3 ? 1.0 : 2.0) * std::max(max_abs_eigenvalue(sectors), 1.0);
  InfidelityPoint point;
  point.steps = steps_override > 0 ? steps_override : auto_steps(t, h_norm);
  const AnnealSpec spec = make_anneal_spec(kind, t, point.steps);
  try {
    switch (variant) {
      case OracleVariant::Spin1: {
        const StateVector chi0{zero_x_ancilla(), {3}};
        const auto evolved = propagate_sectors(sectors, 3, spec, chi0);
        Vector reg(phi.dim());
        for (Index i = 0; i < phi.dim(); ++i)
          reg(i) = evolved.final_state.amplitudes(i * 3 + 1);  // <0_z| component
        reg /= reg.norm();
        point.infidelity = infidelity(StateVector{reg, phi.subsystem_dims}, ideal);
        point.norm_drift = evolved.norm_drift;
        break;
      }
      case OracleVariant::Protocol1: {
        // averaged infidelity over the four post-measurement branches
        Vector anc0(4);
        anc0 << 0.5, -0.5, 0.5, -0.5;  // |+>|->
        const auto evolved = propagate_sectors(sectors, 4, spec, {anc0, {2, 2}});
        const Vector& joint = evolved.final_state.amplitudes;
        double total = 0.0;
        for (int o = 0; o < 4; ++o) {
          const double sa = o < 2 ? 1.0 : -1.0, sb = o % 2 == 0 ? 1.0 : -1.0;
          Vector basis(4);
          basis << 0.5, 0.5 * sb, 0.5 * sa, 0.5 * sa * sb;
          Vector reg(phi.dim());
          for (Index i = 0; i < phi.dim(); ++i) reg(i) = basis.dot(joint.segment(i * 4, 4));
          reg /= reg.norm();
          const StateVector& branch_ideal = sa == sb ? ideal : phi;
          total += infidelity(StateVector{reg, phi.subsystem_dims}, branch_ideal);
        }
        point.infidelity = total / 4.0;
        point.norm_drift = evolved.norm_drift;
        break;
      }
      case OracleVariant::Protocol2: {
        Vector anc0(4);
        anc0 << 1.0 / std::sqrt(2.0), 0.0, 0.0, -1.0 / std::sqrt(2.0);
        const auto evolved = propagate_sectors(sectors, 4, spec, {anc0, {2, 2}});
        Vector bell(4);
        bell << 0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0;
        Vector reg(phi.dim());
        for (Index i = 0; i < phi.dim(); ++i)
          reg(i) = bell.dot(evolved.final_state.amplitudes.segment(i * 4, 4));
        reg /= reg.norm();
        point.infidelity = infidelity(StateVector{reg, phi.subsystem_dims}, ideal);
        point.norm_drift = evolved.norm_drift;
        break;
      }
      case OracleVariant::Ideal:
        throw std::invalid_argument("oracle-infidelity needs an annealed oracle variant");
    }
    point.converged = true;
    point.flag = "ok";
  } catch (const numerical_error&) {
    // row stays flagged and is excluded from the fits
  }
  return point;
}

struct ModelSetup {
  HermitianOperator hf;
  StateVector phi;   // uniform superposition over the eigenbasis
  std::string units_comment;
};

ModelSetup build_model(const OracleInfidelityOptions& opt) {
  if (opt.model == "ising") {
    const int n = opt.n > 0 ? opt.n : 2;
    IsingSpec spec{n, opt.epsilon, std::vector<int>(std::size_t(n), 1)};
    auto hf = ising_hf(spec);
    auto phi = uniform_superposition(n);
    return ModelSetup{std::move(hf), std::move(phi),
                      "# units: energies in units of epsilon=" + format_double(opt.epsilon) +
                          "; times in inverse energy units"};
  }
  if (opt.model == "aklt") {
    const int sites = opt.n > 0 ? opt.n : 3;
    const double gap = aklt_gap(sites);
    const double c0 = opt.c0.value_or(-gap / 2.0);
    auto hf = aklt_hf(AkltSpec{sites, c0});
    // equal weight on every eigenstate, in analogy with |s> for Ising
    const Eigensystem es = eigh(hf.entries);
    Vector amps = es.vectors * Vector::Constant(hf.dim(), 1.0 / std::sqrt(double(hf.dim())));
    amps /= amps.norm();
    StateVector phi{std::move(amps), hf.subsystem_dims};
    return ModelSetup{std::move(hf), std::move(phi),
                      "# units: AKLT bond units; unshifted gap Delta=" + format_double(gap) +
                          ", c0=" + format_double(c0) + "; times in inverse energy units"};
  }
  throw std::invalid_argument("unknown model '" + opt.model + "' (expected ising|aklt)");
}

}  // namespace

OracleInfidelityOutput run_oracle_infidelity(const OracleInfidelityOptions& opt) {
  if (opt.total_times.empty()) throw std::invalid_argument("oracle-infidelity: empty time grid");
  if (opt.schedules.empty()) throw std::invalid_argument("oracle-infidelity: no schedules");
  const ModelSetup model = build_model(opt);

  struct Task {
    ScheduleKind kind;
    double t;
  };
  std::vector<Task> tasks;
  for (const auto kind : opt.schedules)
    for (const double t : opt.total_times) tasks.push_back({kind, t});

  std::vector<InfidelityPoint> points(tasks.size());
  parallel_for(tasks.size(), opt.threads, [&](std::size_t i) {
    points[i] = oracle_infidelity_point(model.hf, model.phi, opt.oracle, tasks[i].kind,
                                        tasks[i].t, opt.steps);
  });

  std::ostringstream csv;
  csv << kCsvHeader << "\n" << model.units_comment << "\n";
  csv << "experiment,model,schedule,total_time,steps,infidelity,norm_drift,flag\n";
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& p = points[i];
    csv << "oracle-infidelity," << opt.model << "," << to_string(tasks[i].kind) << ","
        << format_double(tasks[i].t) << "," << p.steps << "," << format_double(p.infidelity)
        << "," << format_double(p.norm_drift) << "," << p.flag << "\n";
  }

  OracleInfidelityOutput out;
  out.csv = csv.str();

  json fits_json = json::array();
  for (const auto kind : opt.schedules) {
    std::vector<double> ts, ys;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (tasks[i].kind != kind || !points[i].converged) continue;
      ts.push_back(tasks[i].t);
      ys.push_back(points[i].infidelity);
    }
    if (ts.size() < 3) {
      // single-point runs and grids dominated by flagged rows carry no fit
      fits_json.push_back(json{{"schedule", to_string(kind)},
                               {"skipped", "fewer than three converged points"}});
      continue;
    }
    const FitResult exp_fit = fit_exponential(ts, ys);
    const FitResult pow_fit = fit_powerlaw(ts, ys);
    out.fits.push_back(exp_fit);
    out.fits.push_back(pow_fit);
    json entry_exp = to_json(exp_fit);
    entry_exp["schedule"] = to_string(kind);
    json entry_pow = to_json(pow_fit);
    entry_pow["schedule"] = to_string(kind);
    fits_json.push_back(entry_exp);
    fits_json.push_back(entry_pow);
  }
  out.fits_json = json{{"experiment", "oracle-infidelity"},
                       {"model", opt.model},
                       {"oracle", to_string(opt.oracle)},
                       {"fits", fits_json}}
                      .dump(2);
  return out;
}

std::string run_grover_csv(const GroverRunOptions& opt) {
  if (opt.n < 1) throw std::invalid_argument("grover-run: n must be >= 1");
  if (opt.seeds < 1) throw std::invalid_argument("grover-run: seeds must be >= 1");
  const IsingSpec ising{opt.n, opt.epsilon, std::vector<int>(std::size_t(opt.n), 1)};
  const int iterations = opt.iterations > 0 ? opt.iterations : optimal_iterations(opt.n);

  const double max_e = (2.0 * opt.n - 1.0) * opt.epsilon;
  const bool two_qubit = opt.oracle == OracleVariant::Protocol1 ||
                         opt.oracle == OracleVariant::Protocol2 ||
                         opt.diffusion == OracleVariant::Protocol1 ||
                         opt.diffusion == OracleVariant::Protocol2;
  const double h_norm = (two_qubit ? 2.0 : 1.0) * std::max(max_e, 1.0);
  const int steps = opt.steps > 0 ? opt.steps : auto_steps(opt.total_time, h_norm);
  const AnnealSpec spec = make_anneal_spec(opt.schedule, opt.total_time, steps);

  std::vector<GroverRun> runs(std::size_t(opt.seeds));
  parallel_for(std::size_t(opt.seeds), opt.threads, [&](std::size_t i) {
    RngStream rng(opt.seed + i);
    runs[i] = run_grover(ising, spec, opt.oracle, opt.diffusion, iterations, rng);
  });

  std::ostringstream csv;
  csv << kCsvHeader << "\n";
  csv << "# units: energies in units of epsilon=" << format_double(opt.epsilon)
      << "; times in inverse energy units; total_time=" << format_double(opt.total_time)
      << " steps=" << steps << " oracle=" << to_string(opt.oracle)
      << " diffusion=" << to_string(opt.diffusion) << " schedule=" << to_string(opt.schedule)
      << "\n";
  csv << "seed,step_index,kind,applied,fidelity\n";
  for (const auto& run : runs) {
    csv << run.seed << ",0,init,1," << format_double(run.initial_fidelity) << "\n";
    int index = 1;
    for (const auto& step : run.steps) {
      csv << run.seed << "," << index++ << ","
          << (step.kind == GroverStep::Kind::Oracle ? "oracle" : "diffusion") << ","
          << (step.applied ? 1 : 0) << "," << format_double(step.fidelity_to_target) << "\n";
    }
    csv << run.seed << "," << index << ",final,1,"
        << format_double(run.steps.empty() ? run.initial_fidelity
                                           : run.steps.back().fidelity_to_target)
        << "\n";
  }
  return csv.str();
}

std::string run_sector_phase_json(const SectorPhaseOptions& opt) {
  if (!(opt.em > 0.0)) throw std::invalid_argument("sector-phase: em must be positive");
  if (opt.total_times.empty()) throw std::invalid_argument("sector-phase: empty time grid");

  json records = json::array();
  std::map<double, std::vector<double>> deviations_by_time;
  for (const auto kind : opt.schedules) {
    for (const double t : opt.total_times) {
      const int steps = opt.steps > 0 ? opt.steps : auto_steps(t, std::max(opt.em, 1.0));
      const AnnealSpec spec = make_anneal_spec(kind, t, steps);
      json record{{"schedule", to_string(kind)}, {"total_time", t}, {"steps", steps}};
      try {
        const double phase_plus = sector_phase(opt.em, spec);
        const double phase_minus = sector_phase(-opt.em, spec);
        double diff = phase_minus - phase_plus;
        diff = std::remainder(diff, 2.0 * std::numbers::pi);
        const double deviation = std::abs(std::remainder(diff - std::numbers::pi,
                                                         2.0 * std::numbers::pi));
        record["phase_plus"] = phase_plus;
        record["phase_minus"] = phase_minus;
        record["difference_mod_2pi"] = diff;
        record["deviation_from_pi"] = deviation;
        record["flag"] = "ok";
        deviations_by_time[t].push_back(deviation);
      } catch (const numerical_error& err) {
        record["flag"] = "nonadiabatic";
        record["error"] = err.what();
      }
      records.push_back(record);
    }
  }
  double cross = 0.0;
  for (const auto& [t, devs] : deviations_by_time)
    if (devs.size() >= 2)
      for (std::size_t i = 1; i < devs.size(); ++i)
        cross = std::max(cross, std::abs(devs[i] - devs[0]));
  return json{{"experiment", "sector-phase"},
              {"em", opt.em},
              {"records", records},
              {"cross_schedule_max_deviation", cross}}
      .dump(2);
}

namespace {

StateVector load_initial_state(const std::string& path, Index dim) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open initial state file '" + path + "'");
  std::vector<Complex> amps;
  double re = 0.0, im = 0.0;
  while (in >> re >> im) amps.emplace_back(re, im);
  if (Index(amps.size()) != dim)
    throw std::invalid_argument("initial state file has " + std::to_string(amps.size()) +
                                " amplitudes, expected " + std::to_string(dim));
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = amps[std::size_t(i)];
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > 1e-6)
    throw std::invalid_argument("initial state file is not normalized (norm " +
                                std::to_string(norm) + ")");
  v /= norm;
  return StateVector{std::move(v), std::vector<Index>(1, dim)};
}

}  // namespace

std::string run_overlap_estimate_json(const OverlapEstimateOptions& opt) {
  const IsingSpec ising{opt.n, opt.epsilon, std::vector<int>(std::size_t(opt.n), 1)};
  const auto hf = ising_hf(ising);
  StateVector initial = opt.initial_file.empty() ? uniform_superposition(opt.n)
                                                 : load_initial_state(opt.initial_file, hf.dim());
  if (!opt.initial_file.empty()) initial.subsystem_dims = hf.subsystem_dims;

  std::optional<AnnealSpec> anneal;
  if (opt.oracle != OracleVariant::Ideal) {
    const double h_norm = (opt.oracle == OracleVariant::Spin1 ? 1.0 : 2.0) *
                          std::max((2.0 * opt.n - 1.0) * opt.epsilon, 1.0);
    const int steps = opt.steps > 0 ? opt.steps : auto_steps(opt.total_time, h_norm);
    anneal = make_anneal_spec(opt.schedule, opt.total_time, steps);
  }

  RngStream rng(opt.seed);
  const OverlapEstimate est = estimate_overlap(hf, initial, opt.oracle, opt.max_iterations, rng,
                                               anneal, opt.sampled, opt.shots);

  RunRecord record;
  record.experiment = "overlap-estimate";
  record.parameters = {{"n", std::to_string(opt.n)},
                       {"epsilon", format_double(opt.epsilon)},
                       {"oracle", to_string(opt.oracle)},
                       {"max_iterations", std::to_string(opt.max_iterations)},
                       {"sampled", opt.sampled ? "1" : "0"},
                       {"shots", std::to_string(opt.shots)},
                       {"seed", std::to_string(opt.seed)}};
  if (anneal) {
    record.parameters["schedule"] = to_string(anneal->kind);
    record.parameters["total_time"] = format_double(anneal->total_time);
    record.parameters["steps"] = std::to_string(anneal->steps);
  }
  record.metrics = {{"gamma_hat", est.gamma_hat}, {"period_hat", est.period_hat}};

  json samples = json::array();
  for (const auto& [k, p] : est.samples) samples.push_back(json::array({k, p}));
  json out = to_json(record);
  out["samples"] = samples;
  return out.dump(2);
}

}  // namespace adiagrover
