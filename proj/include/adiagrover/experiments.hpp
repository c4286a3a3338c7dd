#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adiagrover/fit.hpp"
#include "adiagrover/grover.hpp"

namespace adiagrover {

/// CSV schema version emitted as the first line of every CSV output.
inline constexpr const char* kCsvHeader = "# adiagrover-csv v1";

/// Shortest text that round-trips the double exactly (%.17g).
std::string format_double(double v);

/// "30" -> single point; "4:200:8" -> geometric grid, 8 points per decade
/// (the third field is optional and defaults to 8). Endpoints are included.
std::vector<double> parse_time_grid(const std::string& text);

/// Comma-separated schedule list, e.g. "tanh,linear".
std::vector<ScheduleKind> parse_schedule_list(const std::string& text);

/// Flat key=value config file: one pair per line, '#' comments and blank
/// lines ignored, keys named like the long command-line flags without the
/// leading dashes. Returned in file order.
std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path);

/// One result row of an experiment; serialized to JSON with sorted keys.
/// Emission validates that every metric is finite.
struct RunRecord {
  std::string experiment;
  std::map<std::string, std::string> parameters;
  std::map<std::string, double> metrics;
};

/// Dispatches fn(0..count-1) over a small worker pool; any exception is
/// rethrown in the caller. Results must be written to index-addressed slots
/// so output order never depends on scheduling.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

// ---------------------------------------------------------------------------
// oracle-infidelity: infidelity of one annealed oracle call vs the exact
// oracle, swept over total_time, with exponential and power-law fits.

struct OracleInfidelityOptions {
  std::string model = "aklt";  // ising | aklt
  std::vector<ScheduleKind> schedules{ScheduleKind::Tanh, ScheduleKind::Linear};
  std::vector<double> total_times;
  int steps = 0;  // 0 = auto
  int n = 0;      // register size; 0 = model default (ising 2, aklt 3)
  double epsilon = 1.0;
  std::optional<double> c0;  // aklt shift; default -gap/2
  OracleVariant oracle = OracleVariant::Spin1;
  int threads = 1;
};

struct OracleInfidelityOutput {
  std::string csv;
  std::string fits_json;
  std::vector<FitResult> fits;  // two per schedule, exponential first
};

OracleInfidelityOutput run_oracle_infidelity(const OracleInfidelityOptions& opt);

// ---------------------------------------------------------------------------
// grover-run: full Grover trajectories, one per seed.

struct GroverRunOptions {
  int n = 4;
  double epsilon = 1.0;
  OracleVariant oracle = OracleVariant::Protocol1;
  OracleVariant diffusion = OracleVariant::Spin1;
  int iterations = 0;  // 0 = optimal_iterations(n)
  std::uint64_t seed = 1;
  int seeds = 1;  // runs seeds seed, seed+1, ...
  ScheduleKind schedule = ScheduleKind::Linear;
  double total_time = 30.0;
  int steps = 0;
  int threads = 1;
};

std::string run_grover_csv(const GroverRunOptions& opt);

// ---------------------------------------------------------------------------
// sector-phase: topological phase difference between the E<0 and E>0 sectors.

struct SectorPhaseOptions {
  double em = 1.0;  // |E_m|; the pair (+em, -em) is propagated
  std::vector<ScheduleKind> schedules{ScheduleKind::Tanh, ScheduleKind::Linear};
  std::vector<double> total_times;
  int steps = 0;
};

std::string run_sector_phase_json(const SectorPhaseOptions& opt);

// ---------------------------------------------------------------------------
// overlap-estimate: gamma from the Grover oscillation period.

struct OverlapEstimateOptions {
  int n = 4;
  double epsilon = 1.0;
  OracleVariant oracle = OracleVariant::Ideal;
  int max_iterations = 40;
  std::uint64_t seed = 1;
  bool sampled = false;
  int shots = 1000;
  std::string initial_file;  // optional: one "re im" pair per line
  ScheduleKind schedule = ScheduleKind::Linear;
  double total_time = 30.0;
  int steps = 0;
};

std::string run_overlap_estimate_json(const OverlapEstimateOptions& opt);

}  // namespace adiagrover
