#include "adiagrover/evolver.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "adiagrover/hamiltonians.hpp"

namespace adiagrover {

namespace {

// smallest distance between adjacent distinct eigenvalue clusters
double distinct_gap(const RealVector& sorted_values) {
  const double scale = std::max(std::abs(sorted_values(0)),
                                std::abs(sorted_values(sorted_values.size() - 1)));
  const double cluster_tol = std::max(1e-9, 1e-12 * scale);
  double gap = std::numeric_limits<double>::infinity();
  for (Index k = 1; k < sorted_values.size(); ++k) {
    const double d = sorted_values(k) - sorted_values(k - 1);
    if (d > cluster_tol) gap = std::min(gap, d);
  }
  return std::isfinite(gap) ? gap : 0.0;
}

void check_finite(const Vector& psi) {
  if (!psi.allFinite())
    throw numerical_error("propagation produced non-finite amplitudes");
}

struct SectorTrace {
  Vector chi;
  double min_gap;
  std::vector<double> energy;  // Re<chi|H|chi> per step
};

SectorTrace propagate_one_sector(double e_m, const Matrix& gz, const Matrix& gx,
                                 const AnnealSpec& spec, const Vector& chi0) {
  SectorTrace out{chi0, std::numeric_limits<double>::infinity(), {}};
  out.energy.reserve(std::size_t(spec.steps));
  const double dt = spec.total_time / spec.steps;
  Matrix h(gz.rows(), gz.cols());
  for (int k = 0; k < spec.steps; ++k) {
    const auto ab = eval_schedule(spec, (k + 0.5) * dt);
    h = ab.a * e_m * gz + ab.b * gx;
    out.energy.push_back((out.chi.adjoint() * h * out.chi).value().real());
    const Eigensystem es = eigh(h);
    out.min_gap = std::min(out.min_gap, distinct_gap(es.values));
    Vector coeffs = es.vectors.adjoint() * out.chi;
    for (Index j = 0; j < coeffs.size(); ++j)
      coeffs(j) *= std::exp(Complex{0.0, -es.values(j) * dt});
    out.chi.noalias() = es.vectors * coeffs;
  }
  check_finite(out.chi);
  return out;
}

}  // namespace

EvolutionResult propagate_full(const HamiltonianBuilder& builder, const AnnealSpec& spec,
                               const StateVector& psi0) {
  Vector psi = psi0.amplitudes;
  const double dt = spec.total_time / spec.steps;
  EvolutionResult result;
  result.energy_expectation_trace.reserve(std::size_t(spec.steps));
  double min_gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k < spec.steps; ++k) {
    const auto ab = eval_schedule(spec, (k + 0.5) * dt);
    const Matrix h = builder(ab.a, ab.b);
    if (h.rows() != psi.size())
      throw std::invalid_argument("propagate_full: Hamiltonian/state dimension mismatch");
    result.energy_expectation_trace.push_back((psi.adjoint() * h * psi).value().real());
    const Eigensystem es = eigh(h);
    min_gap = std::min(min_gap, distinct_gap(es.values));
    Vector coeffs = es.vectors.adjoint() * psi;
    for (Index j = 0; j < coeffs.size(); ++j)
      coeffs(j) *= std::exp(Complex{0.0, -es.values(j) * dt});
    psi.noalias() = es.vectors * coeffs;
  }
  check_finite(psi);
  result.norm_drift = std::abs(psi.norm() - 1.0);
  if (result.norm_drift >= 1e-9)
    throw numerical_error("propagate_full: norm drift " + std::to_string(result.norm_drift));
  result.min_instantaneous_gap = std::isfinite(min_gap) ? min_gap : 0.0;
  result.final_state = StateVector{std::move(psi), psi0.subsystem_dims};
  return result;
}

SectorDecomposition decompose_sectors(const HermitianOperator& hf, const StateVector& phi) {
  if (hf.dim() != phi.dim())
    throw std::invalid_argument("decompose_sectors: operator/state dimension mismatch");
  SectorDecomposition out;
  out.register_dims = phi.subsystem_dims;
  if (is_diagonal(hf.entries)) {
    // computational basis is the eigenbasis; keep basis order
    out.eigenvalues = hf.entries.diagonal().real();
    out.eigenvectors = Matrix::Identity(hf.dim(), hf.dim());
    out.input_amplitudes = phi.amplitudes;
  } else {
    Eigensystem es = eigh(hf.entries);
    out.input_amplitudes = es.vectors.adjoint() * phi.amplitudes;
    out.eigenvalues = std::move(es.values);
    out.eigenvectors = std::move(es.vectors);
  }
  return out;
}

std::pair<Matrix, Matrix> ancilla_generators(int ancilla_dim) {
  switch (ancilla_dim) {
    case 2:
      return {pauli(Axis::Z).entries, pauli(Axis::X).entries};
    case 3:
      return {spin1(Axis::Z).entries, spin1(Axis::X).entries};
    case 4: {
      const auto sz = pauli(Axis::Z);
      const auto sx = pauli(Axis::X);
      const auto id2 = identity_operator({2});
      return {kron(sz, id2).entries + kron(id2, sz).entries,
              kron(sx, id2).entries + kron(id2, sx).entries};
    }
    default:
      throw std::invalid_argument("unsupported ancilla dimension " + std::to_string(ancilla_dim));
  }
}

EvolutionResult propagate_sectors(const SectorDecomposition& sectors, int ancilla_dim,
                                  const AnnealSpec& spec, const StateVector& ancilla_init,
                                  int threads) {
  const auto [gz, gx] = ancilla_generators(ancilla_dim);
  if (ancilla_init.dim() != ancilla_dim)
    throw std::invalid_argument("propagate_sectors: ancilla_init dimension mismatch");
  const Index n_sectors = sectors.eigenvalues.size();

  const double scale = std::max(1.0, sectors.eigenvalues.cwiseAbs().maxCoeff());
  for (Index m = 0; m < n_sectors; ++m)
    if (std::abs(sectors.eigenvalues(m)) <= 1e-12 * scale)
      throw numerical_error("propagate_sectors: sector " + std::to_string(m) +
                            " has zero eigenvalue; chemical potential is mis-tuned");

  std::vector<SectorTrace> traces(static_cast<std::size_t>(n_sectors));
  const int n_threads = std::clamp(threads, 1, int(n_sectors));
  if (n_threads == 1) {
    for (Index m = 0; m < n_sectors; ++m)
      traces[std::size_t(m)] = propagate_one_sector(sectors.eigenvalues(m), gz, gx, spec,
                                                    ancilla_init.amplitudes);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(n_threads));
    for (int w = 0; w < n_threads; ++w) {
      pool.emplace_back([&, w] {
        for (Index m = w; m < n_sectors; m += n_threads)
          traces[std::size_t(m)] = propagate_one_sector(sectors.eigenvalues(m), gz, gx, spec,
                                                        ancilla_init.amplitudes);
      });
    }
    for (auto& th : pool) th.join();
  }

  // reassembly in ascending m; deterministic regardless of thread count
  const Index reg_dim = sectors.eigenvectors.rows();
  Vector joint = Vector::Zero(reg_dim * ancilla_dim);
  EvolutionResult result;
  result.energy_expectation_trace.assign(std::size_t(spec.steps), 0.0);
  double min_gap = std::numeric_limits<double>::infinity();
  for (Index m = 0; m < n_sectors; ++m) {
    const auto& tr = traces[std::size_t(m)];
    const Complex c = sectors.input_amplitudes(m);
    const double weight = std::norm(c);
    for (Index i = 0; i < reg_dim; ++i) {
      const Complex reg_amp = c * sectors.eigenvectors(i, m);
      if (reg_amp == Complex{0.0, 0.0}) continue;
      joint.segment(i * ancilla_dim, ancilla_dim) += reg_amp * tr.chi;
    }
    min_gap = std::min(min_gap, tr.min_gap);
    for (int k = 0; k < spec.steps; ++k)
      result.energy_expectation_trace[std::size_t(k)] += weight * tr.energy[std::size_t(k)];
  }
  check_finite(joint);
  result.norm_drift = std::abs(joint.norm() - 1.0);
  if (result.norm_drift >= 1e-9)
    throw numerical_error("propagate_sectors: norm drift " + std::to_string(result.norm_drift));
  result.min_instantaneous_gap = std::isfinite(min_gap) ? min_gap : 0.0;
  std::vector<Index> dims = sectors.register_dims;
  if (ancilla_dim == 4) {
    dims.push_back(2);
    dims.push_back(2);
  } else {
    dims.push_back(ancilla_dim);
  }
  result.final_state = StateVector{std::move(joint), std::move(dims)};
  return result;
}

double infidelity(const StateVector& state, const StateVector& ideal) {
  if (state.dim() != ideal.dim())
    throw std::invalid_argument("infidelity: dimension mismatch");
  const double overlap = std::abs(state.amplitudes.dot(ideal.amplitudes));
  return std::max(0.0, 1.0 - overlap * overlap);
}

double sector_phase(double e_m, const AnnealSpec& spec) {
  if (!(std::abs(e_m) > 0.0)) throw std::invalid_argument("sector_phase: |e_m| must be positive");
  const auto [gz, gx] = ancilla_generators(3);
  Vector chi0(3);
  chi0 << 1.0 / std::sqrt(2.0), 0.0, -1.0 / std::sqrt(2.0);  // |0_x>
  const auto tr = propagate_one_sector(e_m, gz, gx, spec, chi0);
  const Complex overlap = tr.chi(1);  // <0_z|chi(T)>
  if (std::abs(overlap) < 0.5)
    throw numerical_error("sector_phase: |<0_z|chi(T)>| = " + std::to_string(std::abs(overlap)) +
                          " < 0.5; non-adiabatic failure, increase total_time");
  return std::arg(overlap);
}

}  // namespace adiagrover
