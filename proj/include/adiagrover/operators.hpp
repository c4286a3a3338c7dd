#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace adiagrover {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Thrown when a computation fails numerically (non-adiabatic breakdown,
/// integrator blow-up, ill-conditioned spectra). Distinct from
/// std::invalid_argument, which signals a precondition/config violation.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense Hermitian operator on a tensor-product space. The subsystem ordering
/// convention used throughout: computational register first, ancilla(s) last,
/// leftmost subsystem is the most significant index.
struct HermitianOperator {
  Matrix entries;
  std::vector<Index> subsystem_dims;

  Index dim() const { return entries.rows(); }
};

/// Normalized state over the same tensor-product structure.
struct StateVector {
  Vector amplitudes;
  std::vector<Index> subsystem_dims;

  Index dim() const { return amplitudes.size(); }
};

/// Validating constructors. Hermiticity is checked elementwise to 1e-12,
/// state norm to 1e-10; the product of subsystem_dims must equal the
/// matrix/vector dimension.
HermitianOperator make_operator(Matrix entries, std::vector<Index> subsystem_dims);
StateVector make_state(Vector amplitudes, std::vector<Index> subsystem_dims);

/// Computational basis state |index> over the given subsystem dimensions.
StateVector basis_state(const std::vector<Index>& subsystem_dims, Index index);

/// (|0> + |1> + ... )/sqrt(N) over n qubits; this is |s> = (x)|+> in the
/// z basis.
StateVector uniform_superposition(int n_qubits);

enum class Axis { X, Y, Z };

/// Standard 2x2 Pauli matrix.
HermitianOperator pauli(Axis axis);

/// Standard 3x3 spin-1 projection operator with spectrum {-1, 0, +1}.
/// Only X and Z are exposed; Y is not part of any driver Hamiltonian here.
HermitianOperator spin1(Axis axis);

HermitianOperator identity_operator(const std::vector<Index>& subsystem_dims);

/// Kronecker product; subsystem_dims is the concatenation a.dims ++ b.dims.
HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b);

/// identity (x) ... (x) op (x) ... (x) identity with `op` at `site`.
/// Rejects a dimension mismatch between op and site_dims[site].
HermitianOperator kron_embed(const HermitianOperator& op, std::size_t site,
                             const std::vector<Index>& site_dims);

/// Hermitian eigendecomposition, values ascending. This is the single
/// spectral primitive; all spectral queries in the project go through it.
struct Eigensystem {
  RealVector values;
  Matrix vectors;  // orthonormal columns
};
Eigensystem eigh(const Matrix& h);

/// exp(-i h dt) applied to psi, exact via eigendecomposition.
void apply_step(const Matrix& h, double dt, Vector& psi);

/// exp(-i h dt) as a matrix.
Matrix step_unitary(const Matrix& h, double dt);

bool is_diagonal(const Matrix& m);

namespace detail {
Index product_of(const std::vector<Index>& dims);
}

}  // namespace adiagrover
