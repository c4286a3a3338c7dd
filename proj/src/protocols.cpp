#include "adiagrover/protocols.hpp"

#include <cmath>

namespace adiagrover {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// index of the unique negative eigenvalue; rejects zero or multiple negatives
Index require_single_negative(const RealVector& eigenvalues) {
  Index found = -1;
  for (Index m = 0; m < eigenvalues.size(); ++m) {
    if (eigenvalues(m) < 0.0) {
      if (found >= 0)
        throw std::invalid_argument("oracle requires exactly one negative eigenvalue; found several");
      found = m;
    }
  }
  if (found < 0)
    throw std::invalid_argument("oracle requires exactly one negative eigenvalue; found none");
  return found;
}

StateVector trivial_ancilla() {
  Vector v(1);
  v << 1.0;
  return StateVector{std::move(v), {1}};
}

Vector ancilla_zero_x() {
  Vector v(3);
  v << kInvSqrt2, 0.0, -kInvSqrt2;
  return v;
}

// |+>|-> and the two Bell combinations used by the protocols, in the z basis
Vector ancilla_plus_minus() {
  Vector v(4);
  v << 0.5, -0.5, 0.5, -0.5;
  return v;
}

Vector ancilla_bell_pm() {  // (|+->+|-+>)/sqrt(2)
  Vector v(4);
  v << kInvSqrt2, 0.0, 0.0, -kInvSqrt2;
  return v;
}

Vector ancilla_bell_z() {  // (|01>+|10>)/sqrt(2)
  Vector v(4);
  v << 0.0, kInvSqrt2, kInvSqrt2, 0.0;
  return v;
}

// project the joint state onto a fixed ancilla vector; returns the
// unnormalized register amplitudes
Vector project_ancilla(const Vector& joint, const Vector& anc) {
  const Index d = anc.size();
  const Index n = joint.size() / d;
  Vector reg(n);
  for (Index i = 0; i < n; ++i) reg(i) = anc.dot(joint.segment(i * d, d));
  return reg;
}

StateVector normalized_register(Vector reg, std::vector<Index> dims) {
  reg /= reg.norm();
  return StateVector{std::move(reg), std::move(dims)};
}

}  // namespace

StateVector ideal_oracle(const HermitianOperator& hf, const StateVector& phi) {
  if (hf.dim() != phi.dim()) throw std::invalid_argument("ideal_oracle: dimension mismatch");
  Vector out = phi.amplitudes;
  if (is_diagonal(hf.entries)) {
    const RealVector diag = hf.entries.diagonal().real();
    const Index target = require_single_negative(diag);
    out(target) = -out(target);
  } else {
    const Eigensystem es = eigh(hf.entries);
    const Index target = require_single_negative(es.values);
    const Vector mode = es.vectors.col(target);
    out -= 2.0 * mode.dot(phi.amplitudes) * mode;
  }
  return StateVector{std::move(out), phi.subsystem_dims};
}

OracleOutcome spin1_oracle(const HermitianOperator& hf, const StateVector& phi,
                           const AnnealSpec& spec, int threads) {
  const auto sectors = decompose_sectors(hf, phi);
  require_single_negative(sectors.eigenvalues);
  const StateVector chi0{ancilla_zero_x(), {3}};
  const auto evolved = propagate_sectors(sectors, 3, spec, chi0, threads);

  Vector zero_z(3);
  zero_z << 0.0, 1.0, 0.0;
  Vector reg = project_ancilla(evolved.final_state.amplitudes, zero_z);
  const double weight = reg.squaredNorm();
  if (weight < 0.5)
    throw numerical_error("spin1_oracle: ancilla weight on |0_z> is " + std::to_string(weight) +
                          "; non-adiabatic breakdown, increase total_time");
  OracleOutcome out;
  out.register_state = normalized_register(std::move(reg), phi.subsystem_dims);
  out.applied = true;
  out.ancilla_final = StateVector{zero_z, {3}};
  out.branch_weight = weight;
  out.nonadiabatic_budget = 1.0 - weight;
  return out;
}

OracleOutcome protocol1_oracle(const HermitianOperator& hf, const StateVector& phi,
                               const AnnealSpec& spec, RngStream& rng, int threads) {
  const auto sectors = decompose_sectors(hf, phi);
  require_single_negative(sectors.eigenvalues);
  const StateVector anc0{ancilla_plus_minus(), {2, 2}};
  const auto evolved = propagate_sectors(sectors, 4, spec, anc0, threads);
  const Vector& joint = evolved.final_state.amplitudes;

  // adiabatically the ancillas land in span{|01>, |10>}; twice the weight
  // leaked out of that pattern bounds any branch's infidelity to first order
  // (leak amplitudes enter the +/- projections linearly)
  double pattern = 0.0;
  for (Index i = 0; i < phi.dim(); ++i)
    pattern += std::norm(joint(i * 4 + 1)) + std::norm(joint(i * 4 + 2));

  // single-shot measurement of both ancillas in the +/- basis
  const std::pair<int, int> outcomes[4] = {{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}};
  Vector basis[4];
  Vector regs[4];
  double prob[4];
  double total = 0.0;
  for (int o = 0; o < 4; ++o) {
    Vector b(4);
    const double sa = outcomes[o].first, sb = outcomes[o].second;
    b << 0.5, 0.5 * sb, 0.5 * sa, 0.5 * sa * sb;  // |o1>_pm (x) |o2>_pm
    regs[o] = project_ancilla(joint, b);
    prob[o] = regs[o].squaredNorm();
    total += prob[o];
    basis[o] = std::move(b);
  }
  const double u = rng.uniform01() * total;
  int picked = 3;
  double acc = 0.0;
  for (int o = 0; o < 4; ++o) {
    acc += prob[o];
    if (u < acc) {
      picked = o;
      break;
    }
  }

  OracleOutcome out;
  out.register_state = normalized_register(std::move(regs[picked]), phi.subsystem_dims);
  out.applied = outcomes[picked].first == outcomes[picked].second;
  out.measurement_record = outcomes[picked];
  out.ancilla_final = StateVector{basis[picked], {2, 2}};
  out.branch_weight = prob[picked] / total;
  out.nonadiabatic_budget = 2.0 * (1.0 - pattern);
  return out;
}

OracleOutcome protocol2_oracle(const HermitianOperator& hf, const StateVector& phi,
                               const AnnealSpec& spec, int threads) {
  const auto sectors = decompose_sectors(hf, phi);
  require_single_negative(sectors.eigenvalues);
  const StateVector anc0{ancilla_bell_pm(), {2, 2}};
  const auto evolved = propagate_sectors(sectors, 4, spec, anc0, threads);

  const Vector bell = ancilla_bell_z();
  Vector reg = project_ancilla(evolved.final_state.amplitudes, bell);
  // for the pure joint state this projection weight equals the fidelity of
  // the reduced ancilla state with the Bell state
  const double fidelity = reg.squaredNorm();
  if (fidelity < 0.5)
    throw numerical_error("protocol2_oracle: ancilla Bell fidelity " + std::to_string(fidelity) +
                          " < 0.5; non-adiabatic breakdown, increase total_time");
  OracleOutcome out;
  out.register_state = normalized_register(std::move(reg), phi.subsystem_dims);
  out.applied = true;
  out.ancilla_final = StateVector{bell, {2, 2}};
  out.branch_weight = fidelity;
  out.nonadiabatic_budget = 1.0 - fidelity;
  return out;
}

std::string to_string(OracleVariant variant) {
  switch (variant) {
    case OracleVariant::Ideal: return "ideal";
    case OracleVariant::Spin1: return "spin1";
    case OracleVariant::Protocol1: return "p1";
    case OracleVariant::Protocol2: return "p2";
  }
  return "?";
}

OracleVariant oracle_variant_from_string(const std::string& name) {
  if (name == "ideal") return OracleVariant::Ideal;
  if (name == "spin1") return OracleVariant::Spin1;
  if (name == "p1" || name == "protocol1") return OracleVariant::Protocol1;
  if (name == "p2" || name == "protocol2") return OracleVariant::Protocol2;
  throw std::invalid_argument("unknown oracle variant '" + name + "' (expected spin1|p1|p2|ideal)");
}

OracleOutcome apply_oracle(OracleVariant variant, const HermitianOperator& hf,
                           const StateVector& phi, const AnnealSpec& spec, RngStream& rng,
                           int threads) {
  switch (variant) {
    case OracleVariant::Ideal: {
      OracleOutcome out;
      out.register_state = ideal_oracle(hf, phi);
      out.applied = true;
      out.ancilla_final = trivial_ancilla();
      return out;
    }
    case OracleVariant::Spin1:
      return spin1_oracle(hf, phi, spec, threads);
    case OracleVariant::Protocol1:
      return protocol1_oracle(hf, phi, spec, rng, threads);
    case OracleVariant::Protocol2:
      return protocol2_oracle(hf, phi, spec, threads);
  }
  throw std::invalid_argument("unknown oracle variant");
}

OracleOutcome annealed_diffusion(const IsingSpec& spec_ising, const StateVector& phi,
                                 const AnnealSpec& spec, OracleVariant variant, RngStream& rng,
                                 int threads) {
  const auto hf = diffusion_hamiltonian(spec_ising);
  return apply_oracle(variant, hf, phi, spec, rng, threads);
}

}  // namespace adiagrover
