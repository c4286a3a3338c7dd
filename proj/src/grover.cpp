#include "adiagrover/grover.hpp"

#include <cmath>
#include <numbers>

namespace adiagrover {

namespace {

double fidelity_with(const StateVector& target, const Vector& psi) {
  const double overlap = std::abs(target.amplitudes.dot(psi));
  return std::min(1.0, overlap * overlap);
}

// exact reflection 2|axis><axis| - I
void reflect_about(const Vector& axis, Vector& psi) {
  psi = 2.0 * axis.dot(psi) * axis - psi;
}

double sum_squared_error(const std::vector<std::pair<int, double>>& samples, double theta) {
  double err = 0.0;
  for (const auto& [k, p] : samples) {
    const double c = std::cos(2.0 * k * theta);
    const double d = p - c * c;
    err += d * d;
  }
  return err;
}

double golden_section(const std::vector<std::pair<int, double>>& samples, double lo, double hi) {
  constexpr double phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = sum_squared_error(samples, x1), f2 = sum_squared_error(samples, x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = sum_squared_error(samples, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = sum_squared_error(samples, x2);
    }
  }
  return (a + b) / 2.0;
}

}  // namespace

StateVector target_state(const HermitianOperator& hf) {
  if (is_diagonal(hf.entries)) {
    const RealVector diag = hf.entries.diagonal().real();
    Index best = 0;
    for (Index i = 1; i < diag.size(); ++i)
      if (diag(i) < diag(best)) best = i;
    return basis_state(hf.subsystem_dims, best);
  }
  const Eigensystem es = eigh(hf.entries);
  Vector v = es.vectors.col(0);  // ascending order: lowest first
  return StateVector{std::move(v), hf.subsystem_dims};
}

GroverRun run_grover(const IsingSpec& spec_ising, const AnnealSpec& spec_anneal,
                     OracleVariant oracle_variant, OracleVariant diffusion_variant,
                     int iterations, RngStream& rng, int threads, int failure_cap) {
  if (iterations < 0) throw std::invalid_argument("run_grover: iterations must be >= 0");
  const auto hf = ising_hf(spec_ising);
  const auto target = target_state(hf);

  GroverRun run;
  run.iterations_requested = iterations;
  run.seed = rng.seed;

  StateVector psi = uniform_superposition(spec_ising.n);
  run.initial_fidelity = fidelity_with(target, psi.amplitudes);

  const auto step_until_applied = [&](GroverStep::Kind kind) {
    for (int attempt = 0; attempt < failure_cap; ++attempt) {
      OracleOutcome outcome =
          kind == GroverStep::Kind::Oracle
              ? apply_oracle(oracle_variant, hf, psi, spec_anneal, rng, threads)
              : annealed_diffusion(spec_ising, psi, spec_anneal, diffusion_variant, rng, threads);
      psi = std::move(outcome.register_state);
      run.steps.push_back({kind, outcome.applied, fidelity_with(target, psi.amplitudes)});
      if (outcome.applied) return;
    }
    throw numerical_error("run_grover: " + std::to_string(failure_cap) +
                          " consecutive failed steps; check the random stream");
  };

  for (int it = 0; it < iterations; ++it) {
    step_until_applied(GroverStep::Kind::Oracle);
    step_until_applied(GroverStep::Kind::Diffusion);
  }
  run.final_state = std::move(psi);
  return run;
}

int optimal_iterations(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("optimal_iterations: n_qubits must be >= 1");
  const double n_states = std::ldexp(1.0, n_qubits);
  const double theta = std::asin(1.0 / std::sqrt(n_states));
  return int(std::llround(std::numbers::pi / (4.0 * theta) - 0.5));
}

std::pair<double, double> grover_rotation_reference(double gamma, int k) {
  if (!(gamma > 0.0) || gamma > 1.0)
    throw std::invalid_argument("grover_rotation_reference: gamma must be in (0, 1]");
  const double theta = std::asin(gamma);
  const double st = std::sin((2.0 * k + 1.0) * theta);
  const double ct = std::cos(2.0 * k * theta);
  return {st * st, ct * ct};
}

OverlapEstimate estimate_overlap(const HermitianOperator& hf, const StateVector& initial,
                                 OracleVariant oracle_variant, int max_iterations, RngStream& rng,
                                 const std::optional<AnnealSpec>& anneal, bool sampled, int shots,
                                 int threads) {
  if (max_iterations < 4)
    throw std::invalid_argument("estimate_overlap: need at least 4 iterations to fit");
  if (oracle_variant != OracleVariant::Ideal && !anneal)
    throw std::invalid_argument("estimate_overlap: annealed oracle variants need an AnnealSpec");
  const AnnealSpec spec =
      anneal ? *anneal : make_anneal_spec(ScheduleKind::Linear, 1.0, 100);

  const auto read_probability = [&](const Vector& psi) {
    double p = std::norm(initial.amplitudes.dot(psi));
    p = std::min(1.0, p);
    if (!sampled) return p;
    // binomial shot noise: count successes out of `shots`
    int hits = 0;
    for (int s = 0; s < shots; ++s)
      if (rng.uniform01() < p) ++hits;
    return double(hits) / double(shots);
  };

  OverlapEstimate est;
  Vector psi = initial.amplitudes;
  est.samples.emplace_back(0, read_probability(psi));
  StateVector state = initial;
  for (int k = 1; k <= max_iterations; ++k) {
    // one Grover round: oracle (retrying failed shots) then the exact
    // reflection about the initial state
    for (int attempt = 0;; ++attempt) {
      OracleOutcome outcome = apply_oracle(oracle_variant, hf, state, spec, rng, threads);
      state = std::move(outcome.register_state);
      if (outcome.applied) break;
      if (attempt >= 50)
        throw numerical_error("estimate_overlap: oracle failed 50 consecutive times");
    }
    reflect_about(initial.amplitudes, state.amplitudes);
    est.samples.emplace_back(k, read_probability(state.amplitudes));
  }

  double lo = 1.0, hi = 0.0;
  for (const auto& [k, p] : est.samples) {
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  const double flat_tol = sampled ? 10.0 / std::sqrt(double(shots)) : 1e-9;
  if (hi - lo < flat_tol)
    throw numerical_error("estimate_overlap: no overlap detected (flat P_s signal)");

  // Grid scan over theta, then golden-section refinement. Integer-k sampling
  // makes cos^2(2k theta) invariant under theta -> pi/2 - theta, so only the
  // branch theta <= pi/4 is identifiable; gamma above sin(pi/4) aliases down.
  constexpr int grid = 4000;
  const double width = std::numbers::pi / 4.0;
  double best_theta = width / grid;
  double best_err = std::numeric_limits<double>::infinity();
  for (int i = 1; i < grid; ++i) {
    const double theta = width * i / grid;
    const double err = sum_squared_error(est.samples, theta);
    if (err < best_err) {
      best_err = err;
      best_theta = theta;
    }
  }
  const double cell = width / grid;
  const double theta_hat = golden_section(est.samples, std::max(1e-12, best_theta - cell),
                                          std::min(width, best_theta + cell));
  est.gamma_hat = std::sin(theta_hat);
  est.period_hat = std::numbers::pi / (2.0 * theta_hat);
  return est;
}

}  // namespace adiagrover
