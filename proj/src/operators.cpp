#include "adiagrover/operators.hpp"

#include <cmath>

namespace adiagrover {

namespace detail {

Index product_of(const std::vector<Index>& dims) {
  Index p = 1;
  for (Index d : dims) p *= d;
  return p;
}

}  // namespace detail

HermitianOperator make_operator(Matrix entries, std::vector<Index> subsystem_dims) {
  if (entries.rows() != entries.cols())
    throw std::invalid_argument("operator matrix must be square");
  for (Index d : subsystem_dims)
    if (d <= 0) throw std::invalid_argument("subsystem dimensions must be positive");
  if (detail::product_of(subsystem_dims) != entries.rows())
    throw std::invalid_argument("product of subsystem_dims does not match operator dimension");
  const double dev = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-12)
    throw std::invalid_argument("matrix is not Hermitian (max deviation " + std::to_string(dev) + ")");
  return HermitianOperator{std::move(entries), std::move(subsystem_dims)};
}

StateVector make_state(Vector amplitudes, std::vector<Index> subsystem_dims) {
  for (Index d : subsystem_dims)
    if (d <= 0) throw std::invalid_argument("subsystem dimensions must be positive");
  if (detail::product_of(subsystem_dims) != amplitudes.size())
    throw std::invalid_argument("product of subsystem_dims does not match state dimension");
  const double n = amplitudes.norm();
  if (std::abs(n - 1.0) > 1e-10)
    throw std::invalid_argument("state is not normalized (norm " + std::to_string(n) + ")");
  return StateVector{std::move(amplitudes), std::move(subsystem_dims)};
}

StateVector basis_state(const std::vector<Index>& subsystem_dims, Index index) {
  const Index dim = detail::product_of(subsystem_dims);
  if (index < 0 || index >= dim) throw std::invalid_argument("basis index out of range");
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return make_state(std::move(v), subsystem_dims);
}

StateVector uniform_superposition(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("need at least one qubit");
  const Index dim = Index{1} << n_qubits;
  Vector v = Vector::Constant(dim, Complex{1.0 / std::sqrt(double(dim)), 0.0});
  return make_state(std::move(v), std::vector<Index>(std::size_t(n_qubits), 2));
}

HermitianOperator pauli(Axis axis) {
  Matrix m(2, 2);
  switch (axis) {
    case Axis::X: m << 0, 1, 1, 0; break;
    case Axis::Y: m << 0, Complex{0, -1}, Complex{0, 1}, 0; break;
    case Axis::Z: m << 1, 0, 0, -1; break;
  }
  return make_operator(std::move(m), {2});
}

HermitianOperator spin1(Axis axis) {
  Matrix m = Matrix::Zero(3, 3);
  const double r = 1.0 / std::sqrt(2.0);
  switch (axis) {
    case Axis::X:
      m(0, 1) = m(1, 0) = m(1, 2) = m(2, 1) = r;
      break;
    case Axis::Z:
      m(0, 0) = 1.0;
      m(2, 2) = -1.0;
      break;
    case Axis::Y:
      throw std::invalid_argument("spin1 supports axes x and z only");
  }
  return make_operator(std::move(m), {3});
}

HermitianOperator identity_operator(const std::vector<Index>& subsystem_dims) {
  const Index dim = detail::product_of(subsystem_dims);
  return make_operator(Matrix::Identity(dim, dim), subsystem_dims);
}

HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b) {
  const Index da = a.dim(), db = b.dim();
  Matrix out(da * db, da * db);
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < da; ++j)
      out.block(i * db, j * db, db, db) = a.entries(i, j) * b.entries;
  std::vector<Index> dims = a.subsystem_dims;
  dims.insert(dims.end(), b.subsystem_dims.begin(), b.subsystem_dims.end());
  return HermitianOperator{std::move(out), std::move(dims)};
}

HermitianOperator kron_embed(const HermitianOperator& op, std::size_t site,
                             const std::vector<Index>& site_dims) {
  if (site >= site_dims.size())
    throw std::invalid_argument("kron_embed: site " + std::to_string(site) + " out of range");
  if (op.dim() != site_dims[site])
    throw std::invalid_argument("kron_embed: operator dimension " + std::to_string(op.dim()) +
                                " does not match dimension " + std::to_string(site_dims[site]) +
                                " of site " + std::to_string(site));
  // identity on everything left/right of `site`
  Index left = 1, right = 1;
  for (std::size_t k = 0; k < site; ++k) left *= site_dims[k];
  for (std::size_t k = site + 1; k < site_dims.size(); ++k) right *= site_dims[k];
  const Index d = op.dim();
  Matrix out = Matrix::Zero(left * d * right, left * d * right);
  for (Index l = 0; l < left; ++l)
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) {
        if (op.entries(i, j) == Complex{0.0, 0.0}) continue;
        for (Index r = 0; r < right; ++r)
          out((l * d + i) * right + r, (l * d + j) * right + r) = op.entries(i, j);
      }
  return HermitianOperator{std::move(out), site_dims};
}

Eigensystem eigh(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw numerical_error("Hermitian eigendecomposition failed");
  return Eigensystem{solver.eigenvalues(), solver.eigenvectors()};
}

void apply_step(const Matrix& h, double dt, Vector& psi) {
  const Eigensystem es = eigh(h);
  Vector coeffs = es.vectors.adjoint() * psi;
  for (Index k = 0; k < coeffs.size(); ++k)
    coeffs(k) *= std::exp(Complex{0.0, -es.values(k) * dt});
  psi.noalias() = es.vectors * coeffs;
}

Matrix step_unitary(const Matrix& h, double dt) {
  const Eigensystem es = eigh(h);
  Vector phases(es.values.size());
  for (Index k = 0; k < phases.size(); ++k)
    phases(k) = std::exp(Complex{0.0, -es.values(k) * dt});
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

bool is_diagonal(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != Complex{0.0, 0.0}) return false;
  return true;
}

}  // namespace adiagrover
