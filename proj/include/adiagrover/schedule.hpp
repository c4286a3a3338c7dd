#pragma once

#include <string>
#include <utility>

namespace adiagrover {

enum class ScheduleKind { Linear, Tanh };

std::string to_string(ScheduleKind kind);
ScheduleKind schedule_kind_from_string(const std::string& name);

/// Annealing specification. `total_time` is the physical wall duration T of
/// the sweep; the schedule parameter s is mapped linearly across s_range over
/// [0, T]. For the tanh family A(s) = (1+tanh s)/2 with default
/// s_range (-15, 15); for linear A(s) = s with s_range (0, 1). B = 1 - A
/// exactly in both families.
struct AnnealSpec {
  ScheduleKind kind = ScheduleKind::Tanh;
  double total_time = 0.0;
  int steps = 0;
  std::pair<double, double> s_range{0.0, 0.0};
};

/// Validating constructor; picks the family's default s_range.
AnnealSpec make_anneal_spec(ScheduleKind kind, double total_time, int steps);
AnnealSpec make_anneal_spec(ScheduleKind kind, double total_time, int steps,
                            std::pair<double, double> s_range);

struct ScheduleValue {
  double a;
  double b;
};

/// A(t), B(t) at physical time t in [0, total_time]. a + b == 1 exactly.
ScheduleValue eval_schedule(const AnnealSpec& spec, double t);

/// dA/dt at time t (analytic; dB/dt = -dA/dt).
double schedule_rate(const AnnealSpec& spec, double t);

/// dA/dt at t = 0 and t = total_time.
std::pair<double, double> boundary_derivatives(const AnnealSpec& spec);

/// Default step count so the midpoint rule's O((dt)^2) error sits well below
/// the non-adiabatic error under study: max(1000, ceil(40 * T * h_norm)).
int auto_steps(double total_time, double h_norm);

}  // namespace adiagrover
