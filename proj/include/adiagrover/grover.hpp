#pragma once

#include <optional>

#include "adiagrover/protocols.hpp"

namespace adiagrover {

struct GroverStep {
  enum class Kind { Oracle, Diffusion };
  Kind kind;
  bool applied;
  double fidelity_to_target;
};

struct GroverRun {
  std::vector<GroverStep> steps;  // oracle/diffusion alternating; failed steps repeat
  int iterations_requested = 0;
  StateVector final_state;
  std::uint64_t seed = 0;
  double initial_fidelity = 0.0;
};

/// Full Grover search over the Ising register, starting from |s> = (x)|+>.
/// Alternates oracle and diffusion through the chosen backends; a failed
/// (applied=false) step is retried immediately -- the register was left
/// unchanged -- with each attempt recorded. More than `failure_cap`
/// consecutive failures aborts (that has probability 2^-cap and signals RNG
/// misuse).
GroverRun run_grover(const IsingSpec& spec_ising, const AnnealSpec& spec_anneal,
                     OracleVariant oracle_variant, OracleVariant diffusion_variant,
                     int iterations, RngStream& rng, int threads = 1, int failure_cap = 50);

/// round(pi / (4 asin(N^(-1/2))) - 1/2) with N = 2^n_qubits.
int optimal_iterations(int n_qubits);

struct OverlapEstimate {
  double gamma_hat = 0.0;   // estimated |<initial|target>|
  double period_hat = 0.0;  // fitted oscillation period in iterations
  std::vector<std::pair<int, double>> samples;  // (k, P_s)
};

/// Amplitude amplification about `initial`: runs k = 0..max_iterations Grover
/// rounds with the chosen oracle backend and the exact reflection
/// 2|initial><initial| - I, reads P_s(k) = |<initial|psi_k>|^2 (exactly, or
/// binomially sampled with `shots` when sampled=true), and fits the dominant
/// cos^2(2 k theta) frequency by grid scan plus golden-section refinement.
/// gamma_hat = sin(theta_hat). A flat signal is rejected.
OverlapEstimate estimate_overlap(const HermitianOperator& hf, const StateVector& initial,
                                 OracleVariant oracle_variant, int max_iterations, RngStream& rng,
                                 const std::optional<AnnealSpec>& anneal = std::nullopt,
                                 bool sampled = false, int shots = 1000, int threads = 1);

/// Closed-form two-dimensional Grover rotation with theta = asin(gamma):
/// returns (p_target, p_initial) = (sin^2((2k+1)theta), cos^2(2k theta)).
std::pair<double, double> grover_rotation_reference(double gamma, int k);

/// The marked state: eigenvector of the unique negative eigenvalue.
StateVector target_state(const HermitianOperator& hf);

}  // namespace adiagrover
