#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>

#include "adiagrover/evolver.hpp"
#include "adiagrover/hamiltonians.hpp"

namespace adiagrover {

/// Deterministic random stream; identical seeds reproduce identical
/// measurement sequences bit-exactly across runs.
struct RngStream {
  explicit RngStream(std::uint64_t seed_value) : seed(seed_value), engine(seed_value) {}

  std::uint64_t seed;
  std::mt19937_64 engine;

  static constexpr const char* algorithm = "mt19937_64";

  /// 53-bit uniform in [0, 1); independent of std::distribution internals.
  double uniform01() { return double(engine() >> 11) * 0x1.0p-53; }
};

/// Result of one oracle (or annealed diffusion) call.
///  - branch_weight: the weight retained by the readout -- the |0_z>
///    projection (spin-1), the sampled outcome probability (protocol 1), or
///    the Bell-state fidelity (protocol 2).
///  - nonadiabatic_budget: the per-call non-adiabatic error scale. For the
///    projective readouts this is the leaked weight itself; for protocol 1
///    it is twice the weight outside the adiabatic ancilla pattern, which
///    bounds every branch's infidelity to leading order.
struct OracleOutcome {
  StateVector register_state;
  bool applied = true;
  std::optional<std::pair<int, int>> measurement_record;  // +/-1 per ancilla
  StateVector ancilla_final;
  double branch_weight = 1.0;
  double nonadiabatic_budget = 0.0;
};

/// Exact reference: flips the sign of the component in the (unique) negative
/// eigenspace of hf. Rejects zero or multiple negative eigenvalues.
StateVector ideal_oracle(const HermitianOperator& hf, const StateVector& phi);

/// Spin-1 ancilla oracle: |phi> (x) |0_x>, sector-decomposed anneal, analytic
/// projection of the ancilla onto |0_z>. Deterministic; the residual weight
/// outside |0_z> is reported, and weight below 0.5 is a hard failure.
OracleOutcome spin1_oracle(const HermitianOperator& hf, const StateVector& phi,
                           const AnnealSpec& spec, int threads = 1);

/// Two-ancilla measured protocol: |phi> (x) |+>|->, anneal, single-shot
/// measurement of both ancillas in the +/- basis. Equal outcomes apply the
/// oracle; unequal outcomes leave the register (approximately) unchanged.
OracleOutcome protocol1_oracle(const HermitianOperator& hf, const StateVector& phi,
                               const AnnealSpec& spec, RngStream& rng, int threads = 1);

/// Two-ancilla deterministic protocol: ancillas start in
/// (|+->+|-+>)/sqrt(2) and decouple into the z-basis Bell state
/// (|01>+|10>)/sqrt(2), whose fidelity is reported.
OracleOutcome protocol2_oracle(const HermitianOperator& hf, const StateVector& phi,
                               const AnnealSpec& spec, int threads = 1);

enum class OracleVariant { Ideal, Spin1, Protocol1, Protocol2 };

std::string to_string(OracleVariant variant);
OracleVariant oracle_variant_from_string(const std::string& name);

/// Runs the chosen protocol against diffusion_hamiltonian(spec_ising); the
/// ideal variant applies the exact reflection, equal to 2|s><s| - I up to a
/// global phase.
OracleOutcome annealed_diffusion(const IsingSpec& spec_ising, const StateVector& phi,
                                 const AnnealSpec& spec, OracleVariant variant, RngStream& rng,
                                 int threads = 1);

/// Dispatch on the variant against an arbitrary problem Hamiltonian.
OracleOutcome apply_oracle(OracleVariant variant, const HermitianOperator& hf,
                           const StateVector& phi, const AnnealSpec& spec, RngStream& rng,
                           int threads = 1);

}  // namespace adiagrover
