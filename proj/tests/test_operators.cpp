#include <doctest.h>

#include <random>

#include "adiagrover/operators.hpp"

using namespace adiagrover;

namespace {

Matrix random_hermitian(Index dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist;
  Matrix m(dim, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) m(i, j) = Complex{dist(gen), dist(gen)};
  return (m + Matrix(m.adjoint())) / 2.0;
}

}  // namespace

TEST_CASE("pauli matrices act as defined on their eigenstates") {
  const auto sz = pauli(Axis::Z);
  Vector zero(2);
  zero << 1.0, 0.0;
  CHECK((sz.entries * zero - zero).norm() == doctest::Approx(0.0));

  const auto sx = pauli(Axis::X);
  Vector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CHECK((sx.entries * plus - plus).norm() == doctest::Approx(0.0));

  const auto sy = pauli(Axis::Y);
  CHECK((sy.entries * sy.entries - Matrix::Identity(2, 2)).norm() == doctest::Approx(0.0));
}

TEST_CASE("spin-1 matrices have spectrum {-1, 0, +1}") {
  const auto sz = spin1(Axis::Z);
  CHECK(sz.entries(0, 0).real() == 1.0);
  CHECK(sz.entries(1, 1).real() == 0.0);
  CHECK(sz.entries(2, 2).real() == -1.0);

  const auto sx = spin1(Axis::X);
  const auto es = eigh(sx.entries);
  CHECK(es.values(0) == doctest::Approx(-1.0));
  CHECK(es.values(1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(es.values(2) == doctest::Approx(1.0));

  // the zero eigenvector is analytically (1, 0, -1)/sqrt(2)
  Vector zero_x(3);
  zero_x << 1.0 / std::sqrt(2.0), 0.0, -1.0 / std::sqrt(2.0);
  CHECK((sx.entries * zero_x).norm() < 1e-14);
  CHECK(std::abs(zero_x.dot(es.vectors.col(1))) == doctest::Approx(1.0));

  // [S_x, S_z] is anti-Hermitian and nonzero
  const Matrix comm = sx.entries * sz.entries - sz.entries * sx.entries;
  CHECK((comm + Matrix(comm.adjoint())).norm() < 1e-14);
  CHECK(comm.norm() > 0.1);

  CHECK_THROWS_AS(spin1(Axis::Y), std::invalid_argument);
}

TEST_CASE("kron_embed places operators at the right site") {
  const auto sz = pauli(Axis::Z);
  const std::vector<Index> dims{2, 2};

  // |10> has index 2 (leftmost qubit most significant)
  const auto site0 = kron_embed(sz, 0, dims);
  CHECK(site0.entries(2, 2).real() == doctest::Approx(-1.0));

  const auto site1 = kron_embed(sz, 1, dims);
  const Matrix sum = site0.entries + site1.entries;
  CHECK(sum(0, 0).real() == doctest::Approx(2.0));  // |00>

  CHECK_THROWS_WITH_AS(kron_embed(spin1(Axis::Z), 1, dims) /* 3x3 op at dim-2 site */,
                       doctest::Contains("site 1"), std::invalid_argument);
}

TEST_CASE("kron_embed operators at distinct sites commute") {
  const std::vector<Index> dims{2, 3, 2};
  const auto a = kron_embed(pauli(Axis::X), 0, dims);
  const auto b = kron_embed(spin1(Axis::Z), 1, dims);
  const auto c = kron_embed(pauli(Axis::Y), 2, dims);
  CHECK((a.entries * b.entries - b.entries * a.entries).norm() < 1e-12);
  CHECK((a.entries * c.entries - c.entries * a.entries).norm() < 1e-12);
  CHECK((b.entries * c.entries - c.entries * b.entries).norm() < 1e-12);
}

TEST_CASE("kron of identities and block structure") {
  const auto id2 = identity_operator({2});
  const auto id4 = kron(id2, id2);
  CHECK((id4.entries - Matrix::Identity(4, 4)).norm() == doctest::Approx(0.0));
  CHECK(id4.subsystem_dims == std::vector<Index>{2, 2});

  // kron(diag(E), S_z): block m equals E_m * S_z
  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 0.7;
  diag(1, 1) = -1.3;
  const auto h = kron(make_operator(diag, {2}), spin1(Axis::Z));
  for (Index m = 0; m < 2; ++m) {
    const Matrix block = h.entries.block(m * 3, m * 3, 3, 3);
    CHECK((block - diag(m, m) * spin1(Axis::Z).entries).norm() < 1e-15);
  }
}

TEST_CASE("kron of Hermitian operators is Hermitian") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const auto a = make_operator(random_hermitian(3, seed), {3});
    const auto b = make_operator(random_hermitian(2, seed + 100), {2});
    const auto ab = kron(a, b);
    // (A (x) B)^dagger = A^dagger (x) B^dagger, so the product stays Hermitian
    CHECK((ab.entries - Matrix(ab.entries.adjoint())).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_NOTHROW(make_operator(ab.entries, ab.subsystem_dims));
  }
}

TEST_CASE("operator and state validation") {
  Matrix not_herm(2, 2);
  not_herm << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(make_operator(not_herm, {2}), std::invalid_argument);

  CHECK_THROWS_AS(make_operator(Matrix::Identity(4, 4), {2, 3}), std::invalid_argument);

  Vector unnorm(2);
  unnorm << 1.0, 1.0;
  CHECK_THROWS_AS(make_state(unnorm, {2}), std::invalid_argument);

  const auto s = uniform_superposition(3);
  CHECK(s.dim() == 8);
  CHECK(s.amplitudes.norm() == doctest::Approx(1.0));
}

TEST_CASE("eigendecomposition round-trips the operator") {
  for (Index dim : {4, 9, 16}) {
    const Matrix h = random_hermitian(dim, std::uint64_t(dim) * 31);
    const auto es = eigh(h);
    const Matrix rebuilt =
        es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint();
    CHECK((rebuilt - h).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((es.vectors.adjoint() * es.vectors - Matrix::Identity(dim, dim)).norm() < 1e-10);
  }
}

TEST_CASE("step unitary is the exact exponential") {
  const Matrix h = random_hermitian(5, 77);
  const Matrix u = step_unitary(h, 0.37);
  CHECK((u * u.adjoint() - Matrix::Identity(5, 5)).norm() < 1e-12);

  // against a high-order Taylor sum of exp(-i h dt)
  Matrix taylor = Matrix::Identity(5, 5);
  Matrix term = Matrix::Identity(5, 5);
  for (int k = 1; k < 40; ++k) {
    term = term * (Complex{0.0, -0.37} / double(k)) * h;
    taylor += term;
  }
  CHECK((u - taylor).cwiseAbs().maxCoeff() < 1e-12);

  Vector psi = Vector::Zero(5);
  psi(0) = 1.0;
  Vector applied = psi;
  apply_step(h, 0.37, applied);
  CHECK((applied - u * psi).norm() < 1e-12);
}
