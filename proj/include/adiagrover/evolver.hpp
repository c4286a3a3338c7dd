#pragma once

#include <functional>

#include "adiagrover/operators.hpp"
#include "adiagrover/schedule.hpp"

namespace adiagrover {

/// Eigendecomposition of H_f paired with the input amplitudes c_m = <m|phi>.
/// For a diagonal H_f the eigenbasis is the computational basis itself and
/// eigenvalues keep basis order; otherwise they come from eigh (ascending).
struct SectorDecomposition {
  RealVector eigenvalues;        // E_m
  Matrix eigenvectors;           // orthonormal columns |m>
  Vector input_amplitudes;       // c_m, sum |c_m|^2 == 1
  std::vector<Index> register_dims;
};

struct EvolutionResult {
  StateVector final_state;
  double norm_drift = 0.0;
  double min_instantaneous_gap = 0.0;
  std::vector<double> energy_expectation_trace;  // Re<psi|H(t_mid)|psi> per step
};

using HamiltonianBuilder = std::function<Matrix(double a, double b)>;

/// Piecewise-constant midpoint propagation over the full space: M steps, each
/// evaluating (a, b) at the interval midpoint and applying the exact Hermitian
/// exponential. Unitary up to eigensolver round-off.
EvolutionResult propagate_full(const HamiltonianBuilder& builder, const AnnealSpec& spec,
                               const StateVector& psi0);

SectorDecomposition decompose_sectors(const HermitianOperator& hf, const StateVector& phi);

/// Per-sector propagation of the ancilla-only Hamiltonian
/// a*E_m*G_z + b*G_x, with (G_z, G_x) = (sigma_z, sigma_x) for ancilla_dim 2,
/// the spin-1 pair for 3, and (sz_a+sz_b, sx_a+sx_b) for 4. Reassembles
/// sum_m c_m |m> (x) chi_m(T) in ascending m order so the result is
/// bit-stable regardless of thread count. Sectors with E_m == 0 are rejected:
/// the oracle premise excludes zero eigenvalues (mis-tuned chemical
/// potential).
EvolutionResult propagate_sectors(const SectorDecomposition& sectors, int ancilla_dim,
                                  const AnnealSpec& spec, const StateVector& ancilla_init,
                                  int threads = 1);

/// 1 - |<state|ideal>|^2; invariant under a global phase of either argument.
double infidelity(const StateVector& state, const StateVector& ideal);

/// Propagates |0_x> in the single spin-1 sector with energy e_m and returns
/// arg(<0_z|chi(T)>) in (-pi, pi]. Fails when the final |0_z| overlap drops
/// below 0.5 in magnitude (non-adiabatic breakdown).
double sector_phase(double e_m, const AnnealSpec& spec);

/// Ancilla generator pair (G_z, G_x) for a supported ancilla dimension.
std::pair<Matrix, Matrix> ancilla_generators(int ancilla_dim);

}  // namespace adiagrover
