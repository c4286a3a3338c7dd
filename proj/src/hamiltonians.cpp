#include "adiagrover/hamiltonians.hpp"

#include <cmath>
#include <sstream>

namespace adiagrover {

void validate(const IsingSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("ising: n must be >= 1");
  if (!(spec.epsilon > 0.0)) throw std::invalid_argument("ising: epsilon must be positive");
  if (spec.signs.size() != std::size_t(spec.n))
    throw std::invalid_argument("ising: need one sign per qubit");
  for (int s : spec.signs)
    if (s != 1 && s != -1) throw std::invalid_argument("ising: signs must be +1 or -1");
}

HermitianOperator ising_hf(const IsingSpec& spec) {
  validate(spec);
  const Index dim = Index{1} << spec.n;
  Matrix m = Matrix::Zero(dim, dim);
  for (Index b = 0; b < dim; ++b) {
    double e = (spec.n - 1) * spec.epsilon;
    for (int i = 0; i < spec.n; ++i) {
      const int bit = int(b >> (spec.n - 1 - i)) & 1;  // leftmost qubit most significant
      e += spec.signs[std::size_t(i)] * spec.epsilon * (bit == 0 ? 1.0 : -1.0);
    }
    m(b, b) = e;
  }
  return HermitianOperator{std::move(m), std::vector<Index>(std::size_t(spec.n), 2)};
}

namespace {

HermitianOperator spin1_y() {
  Matrix m = Matrix::Zero(3, 3);
  const Complex iy{0.0, 1.0 / std::sqrt(2.0)};
  m(0, 1) = -iy;
  m(1, 0) = iy;
  m(1, 2) = -iy;
  m(2, 1) = iy;
  return make_operator(std::move(m), {3});
}

Matrix aklt_unshifted(int n_sites) {
  const std::vector<Index> dims(std::size_t(n_sites), 3);
  const Index dim = detail::product_of(dims);
  const HermitianOperator ops[3] = {spin1(Axis::X), spin1_y(), spin1(Axis::Z)};
  Matrix h = Matrix::Zero(dim, dim);
  for (int i = 0; i < n_sites; ++i) {
    const int j = (i + 1) % n_sites;
    Matrix dot = Matrix::Zero(dim, dim);
    for (const auto& s : ops)
      dot += kron_embed(s, std::size_t(i), dims).entries *
             kron_embed(s, std::size_t(j), dims).entries;
    h += 0.5 * dot + (1.0 / 6.0) * dot * dot + (1.0 / 3.0) * Matrix::Identity(dim, dim);
  }
  return h;
}

}  // namespace

double aklt_gap(int n_sites) {
  const auto es = eigh(aklt_unshifted(n_sites));
  // unshifted ground energy is exactly zero; the gap is the first eigenvalue
  // above the zero cluster
  for (Index k = 0; k < es.values.size(); ++k)
    if (es.values(k) > 1e-9) return es.values(k);
  throw numerical_error("aklt: no eigenvalue above zero found");
}

HermitianOperator aklt_hf(const AkltSpec& spec) {
  if (spec.n_sites < 2) throw std::invalid_argument("aklt: n_sites must be >= 2");
  if (spec.c0 > 0.0) throw std::invalid_argument("aklt: c0 must be <= 0");
  const std::vector<Index> dims(std::size_t(spec.n_sites), 3);
  Matrix h = aklt_unshifted(spec.n_sites);
  h += spec.c0 * Matrix::Identity(h.rows(), h.cols());
  // symmetrize away solver-level roundoff before validating
  h = ((h + h.adjoint()) / 2.0).eval();
  if (spec.c0 < 0.0) {
    const auto es = eigh(h);
    Index negatives = 0;
    while (negatives < es.values.size() && es.values(negatives) < 0.0) ++negatives;
    if (negatives != 1 || !(es.values(1) > 0.0)) {
      const double gap = aklt_gap(spec.n_sites);
      std::ostringstream msg;
      msg << "aklt: shift c0=" << spec.c0 << " does not leave exactly the ground eigenvalue "
          << "negative (found " << negatives << " negative); unshifted gap is " << gap;
      throw std::invalid_argument(msg.str());
    }
  }
  return HermitianOperator{std::move(h), dims};
}

HermitianOperator oracle_hamiltonian_spin1(const HermitianOperator& hf, double a, double b) {
  const auto id = identity_operator(hf.subsystem_dims);
  Matrix m = a * kron(hf, spin1(Axis::Z)).entries + b * kron(id, spin1(Axis::X)).entries;
  std::vector<Index> dims = hf.subsystem_dims;
  dims.push_back(3);
  return HermitianOperator{std::move(m), std::move(dims)};
}

HermitianOperator oracle_hamiltonian_two_qubit(const HermitianOperator& hf, double a, double b) {
  const auto id = identity_operator(hf.subsystem_dims);
  const auto sz = pauli(Axis::Z);
  const auto sx = pauli(Axis::X);
  const auto id2 = identity_operator({2});
  Matrix m = a * (kron(kron(hf, sz), id2).entries + kron(kron(hf, id2), sz).entries) +
             b * (kron(kron(id, sx), id2).entries + kron(kron(id, id2), sx).entries);
  std::vector<Index> dims = hf.subsystem_dims;
  dims.push_back(2);
  dims.push_back(2);
  return HermitianOperator{std::move(m), std::move(dims)};
}

HermitianOperator diffusion_hamiltonian(const IsingSpec& spec) {
  validate(spec);
  const std::vector<Index> dims(std::size_t(spec.n), 2);
  const Index dim = detail::product_of(dims);
  Matrix m = (spec.n - 1) * spec.epsilon * Matrix::Identity(dim, dim);
  const auto sx = pauli(Axis::X);
  for (int i = 0; i < spec.n; ++i)
    m -= spec.epsilon * kron_embed(sx, std::size_t(i), dims).entries;
  return HermitianOperator{std::move(m), dims};
}

}  // namespace adiagrover
