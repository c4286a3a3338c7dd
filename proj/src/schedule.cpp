#include "adiagrover/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace adiagrover {

std::string to_string(ScheduleKind kind) {
  return kind == ScheduleKind::Linear ? "linear" : "tanh";
}

ScheduleKind schedule_kind_from_string(const std::string& name) {
  if (name == "linear") return ScheduleKind::Linear;
  if (name == "tanh") return ScheduleKind::Tanh;
  throw std::invalid_argument("unknown schedule '" + name + "' (expected linear|tanh)");
}

AnnealSpec make_anneal_spec(ScheduleKind kind, double total_time, int steps) {
  const auto range = kind == ScheduleKind::Linear ? std::pair{0.0, 1.0} : std::pair{-15.0, 15.0};
  return make_anneal_spec(kind, total_time, steps, range);
}

AnnealSpec make_anneal_spec(ScheduleKind kind, double total_time, int steps,
                            std::pair<double, double> s_range) {
  if (!(total_time > 0.0) || !std::isfinite(total_time))
    throw std::invalid_argument("total_time must be positive and finite");
  if (steps < 100) throw std::invalid_argument("steps must be at least 100");
  if (!(s_range.first < s_range.second))
    throw std::invalid_argument("s_range must satisfy s_min < s_max");
  if (kind == ScheduleKind::Linear && (s_range.first != 0.0 || s_range.second != 1.0))
    throw std::invalid_argument("linear schedule requires s_range (0, 1)");
  return AnnealSpec{kind, total_time, steps, s_range};
}

namespace {

double s_of_t(const AnnealSpec& spec, double t) {
  return spec.s_range.first + (spec.s_range.second - spec.s_range.first) * t / spec.total_time;
}

}  // namespace

ScheduleValue eval_schedule(const AnnealSpec& spec, double t) {
  if (t < 0.0 || t > spec.total_time)
    throw std::invalid_argument("schedule time outside [0, total_time]");
  const double s = s_of_t(spec, t);
  const double a = spec.kind == ScheduleKind::Linear ? s : (1.0 + std::tanh(s)) / 2.0;
  return ScheduleValue{a, 1.0 - a};
}

double schedule_rate(const AnnealSpec& spec, double t) {
  const double ds_dt = (spec.s_range.second - spec.s_range.first) / spec.total_time;
  if (spec.kind == ScheduleKind::Linear) return ds_dt;
  const double sech = 1.0 / std::cosh(s_of_t(spec, t));
  return ds_dt * sech * sech / 2.0;
}

std::pair<double, double> boundary_derivatives(const AnnealSpec& spec) {
  return {schedule_rate(spec, 0.0), schedule_rate(spec, spec.total_time)};
}

int auto_steps(double total_time, double h_norm) {
  const double m = 40.0 * total_time * h_norm;
  return m > 1000.0 ? int(std::ceil(m)) : 1000;
}

}  // namespace adiagrover
