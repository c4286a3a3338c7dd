#pragma once

#include "adiagrover/operators.hpp"

namespace adiagrover {

/// n-qubit Ising test Hamiltonian (n-1)eps*I + sum_i eps_i sigma_z^i with
/// eps_i = signs[i]*epsilon. Its ground energy is -epsilon with gap 2*epsilon,
/// and exactly one eigenvalue is negative.
struct IsingSpec {
  int n = 1;
  double epsilon = 1.0;
  std::vector<int> signs;  // each +1 or -1, one per qubit
};

void validate(const IsingSpec& spec);

/// Periodic spin-1 AKLT chain shifted by a chemical potential c0 <= 0.
/// The unshifted chain has a unique gapped ground state at exactly zero
/// energy, so the shifted ground eigenvalue equals c0.
struct AkltSpec {
  int n_sites = 3;
  double c0 = 0.0;
};

HermitianOperator ising_hf(const IsingSpec& spec);

/// c0*I + H_AKLT. For c0 < 0 the construction validates that exactly the
/// ground eigenvalue went negative; |c0| at or above the gap is rejected with
/// a diagnostic reporting the unshifted gap.
HermitianOperator aklt_hf(const AkltSpec& spec);

/// Unshifted spectral gap of the periodic AKLT chain (used to pick c0).
double aklt_gap(int n_sites);

/// a*(H_f (x) S_z) + b*(I (x) S_x) on dim(H_f)*3 dimensions.
HermitianOperator oracle_hamiltonian_spin1(const HermitianOperator& hf, double a, double b);

/// a*H_f (x) (sz_a + sz_b) + b*(sx_a + sx_b) on dim(H_f)*4 dimensions,
/// ancilla a ordered before ancilla b, both after the register.
HermitianOperator oracle_hamiltonian_two_qubit(const HermitianOperator& hf, double a, double b);

/// (n-1)eps*I - eps*sum_i sigma_x^i. All x couplings carry sign -eps so the
/// unique negative eigenstate is |s> = (x)|+> with eigenvalue -eps; annealing
/// against it realizes the diffusion reflection up to a global phase.
HermitianOperator diffusion_hamiltonian(const IsingSpec& spec);

}  // namespace adiagrover
