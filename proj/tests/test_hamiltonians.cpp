#include <doctest.h>

#include <random>

#include "adiagrover/hamiltonians.hpp"

using namespace adiagrover;

namespace {

// brute-force diagonal of the Ising Hamiltonian, independent of ising_hf:
// walks every basis state and sums the sign pattern directly
std::vector<double> enumerate_ising_diagonal(int n, double eps, const std::vector<int>& signs) {
  std::vector<double> diag;
  for (long b = 0; b < (1L << n); ++b) {
    double e = (n - 1) * eps;
    for (int i = 0; i < n; ++i) {
      const bool one = (b >> (n - 1 - i)) & 1;
      e += signs[std::size_t(i)] * eps * (one ? -1.0 : 1.0);
    }
    diag.push_back(e);
  }
  return diag;
}

// AKLT chain assembled with explicit index arithmetic (no kron helpers)
Matrix manual_aklt(int n_sites) {
  const Index dim = Index(std::pow(3, n_sites));
  const double r = 1.0 / std::sqrt(2.0);
  Matrix sx = Matrix::Zero(3, 3), sy = Matrix::Zero(3, 3), sz = Matrix::Zero(3, 3);
  sx(0, 1) = sx(1, 0) = sx(1, 2) = sx(2, 1) = r;
  sy(0, 1) = sy(1, 2) = Complex{0, -r};
  sy(1, 0) = sy(2, 1) = Complex{0, r};
  sz(0, 0) = 1.0;
  sz(2, 2) = -1.0;
  const Matrix spin[3] = {sx, sy, sz};

  const auto digit = [&](Index state, int site) {
    Index d = state;
    for (int k = n_sites - 1; k > site; --k) d /= 3;
    return d % 3;
  };
  const auto with_digit = [&](Index state, int site, Index value) {
    Index scale = 1;
    for (int k = n_sites - 1; k > site; --k) scale *= 3;
    return state + (value - digit(state, site)) * scale;
  };

  Matrix h = Matrix::Zero(dim, dim);
  for (int i = 0; i < n_sites; ++i) {
    const int j = (i + 1) % n_sites;
    Matrix dot = Matrix::Zero(dim, dim);
    for (const auto& s : spin) {
      for (Index col = 0; col < dim; ++col) {
        const Index di = digit(col, i), dj = digit(col, j);
        for (Index di2 = 0; di2 < 3; ++di2)
          for (Index dj2 = 0; dj2 < 3; ++dj2) {
            const Complex amp = s(di2, di) * s(dj2, dj);
            if (amp == Complex{0, 0}) continue;
            dot(with_digit(with_digit(col, i, di2), j, dj2), col) += amp;
          }
      }
    }
    h += 0.5 * dot + (1.0 / 6.0) * dot * dot + (1.0 / 3.0) * Matrix::Identity(dim, dim);
  }
  return h;
}

}  // namespace

TEST_CASE("ising diagonal matches the spec cases") {
  const auto h2 = ising_hf({2, 1.0, {1, 1}});
  const RealVector d2 = h2.entries.diagonal().real();
  CHECK(d2(0) == doctest::Approx(3.0));
  CHECK(d2(1) == doctest::Approx(1.0));
  CHECK(d2(2) == doctest::Approx(1.0));
  CHECK(d2(3) == doctest::Approx(-1.0));
  CHECK(d2.minCoeff() == doctest::Approx(-1.0));  // ground is -epsilon

  const auto h1 = ising_hf({1, 1.0, {-1}});
  CHECK(h1.entries(0, 0).real() == doctest::Approx(-1.0));
  CHECK(h1.entries(1, 1).real() == doctest::Approx(1.0));
}

TEST_CASE("ising spectrum against brute-force enumeration") {
  const IsingSpec spec{3, 0.5, {1, -1, 1}};
  const auto h = ising_hf(spec);
  const auto expected = enumerate_ising_diagonal(spec.n, spec.epsilon, spec.signs);
  int negatives = 0;
  double min_e = expected[0];
  for (std::size_t b = 0; b < expected.size(); ++b) {
    CHECK(h.entries(Index(b), Index(b)).real() == doctest::Approx(expected[b]));
    if (expected[b] < 0.0) ++negatives;
    min_e = std::min(min_e, expected[b]);
  }
  CHECK(min_e == doctest::Approx(-0.5));
  CHECK(negatives == 1);
}

TEST_CASE("ising gap structure: exactly one negative eigenvalue, gap 2 epsilon") {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 1 + int(gen() % 4);
    const double eps = 0.25 * (1 + int(gen() % 8));
    std::vector<int> signs;
    for (int i = 0; i < n; ++i) signs.push_back(gen() % 2 ? 1 : -1);
    const auto es = eigh(ising_hf({n, eps, signs}).entries);
    int negatives = 0;
    for (Index i = 0; i < es.values.size(); ++i)
      if (es.values(i) < 0.0) ++negatives;
    CHECK(negatives == 1);
    CHECK(es.values(0) == doctest::Approx(-eps));
    CHECK(es.values(1) - es.values(0) == doctest::Approx(2.0 * eps));
  }
}

TEST_CASE("ising spec validation") {
  CHECK_THROWS_AS(ising_hf({0, 1.0, {}}), std::invalid_argument);
  CHECK_THROWS_AS(ising_hf({2, -1.0, {1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(ising_hf({2, 1.0, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(ising_hf({2, 1.0, {1, 2}}), std::invalid_argument);
}

TEST_CASE("unshifted AKLT ground state sits at zero energy") {
  const auto h3 = aklt_hf({3, 0.0});
  const auto es3 = eigh(h3.entries);
  CHECK(std::abs(es3.values(0)) < 1e-10);

  const auto h2 = aklt_hf({2, 0.0});
  const auto es2 = eigh(h2.entries);
  CHECK(es2.values(0) > -1e-12);  // positive semidefinite
}

TEST_CASE("AKLT matches an independently assembled matrix and its gap") {
  const Matrix manual = manual_aklt(3);
  const auto h = aklt_hf({3, 0.0});
  CHECK((h.entries - manual).cwiseAbs().maxCoeff() < 1e-12);

  const auto es = eigh(manual);
  CHECK(std::abs(es.values(0)) < 1e-10);
  double gap = 0.0;
  for (Index k = 0; k < es.values.size(); ++k)
    if (es.values(k) > 1e-9) {
      gap = es.values(k);
      break;
    }
  // exact diagonalization of the 27x27 chain gives a 5/6 gap
  CHECK(gap == doctest::Approx(5.0 / 6.0).epsilon(1e-9));
  CHECK(aklt_gap(3) == doctest::Approx(gap));

  // c0 = -gap/2 turns exactly the ground eigenvalue negative
  const auto shifted = eigh(aklt_hf({3, -gap / 2.0}).entries);
  int negatives = 0;
  for (Index k = 0; k < shifted.values.size(); ++k)
    if (shifted.values(k) < 0.0) ++negatives;
  CHECK(negatives == 1);
}

TEST_CASE("AKLT shift validation") {
  const double gap = aklt_gap(3);
  // |c0| beyond the gap leaves several negative eigenvalues
  CHECK_THROWS_WITH_AS(aklt_hf({3, -2.0 * gap}), doctest::Contains("gap"),
                       std::invalid_argument);
  CHECK_THROWS_AS(aklt_hf({3, +0.1}), std::invalid_argument);
  CHECK_THROWS_AS(aklt_hf({1, 0.0}), std::invalid_argument);
  // the 2-site periodic ground state is degenerate, so any c0 < 0 is rejected
  CHECK_THROWS_AS(aklt_hf({2, -0.1}), std::invalid_argument);
}

TEST_CASE("spin-1 oracle Hamiltonian endpoints and sector blocks") {
  const auto hf = ising_hf({2, 1.0, {1, 1}});
  const auto id = identity_operator(hf.subsystem_dims);

  const auto driver = oracle_hamiltonian_spin1(hf, 0.0, 1.0);
  CHECK((driver.entries - kron(id, spin1(Axis::X)).entries).norm() < 1e-14);

  const auto problem = oracle_hamiltonian_spin1(hf, 1.0, 0.0);
  CHECK((problem.entries - kron(hf, spin1(Axis::Z)).entries).norm() < 1e-14);

  const double a = 0.3, b = 0.7;
  const auto h = oracle_hamiltonian_spin1(hf, a, b);
  for (Index m = 0; m < hf.dim(); ++m) {
    const Matrix block = h.entries.block(m * 3, m * 3, 3, 3);
    const Matrix expected = a * hf.entries(m, m).real() * spin1(Axis::Z).entries +
                            b * spin1(Axis::X).entries;
    CHECK((block - expected).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("two-qubit oracle Hamiltonian: driver limit, triplet blocks, singlet sector") {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  Matrix diag = Matrix::Zero(4, 4);
  for (Index i = 0; i < 4; ++i) diag(i, i) = dist(gen);
  const auto hf = make_operator(diag, {2, 2});

  const auto driver = oracle_hamiltonian_two_qubit(hf, 0.0, 1.0);
  const auto id = identity_operator(hf.subsystem_dims);
  const auto sx = pauli(Axis::X);
  const auto id2 = identity_operator({2});
  const Matrix anc_only = kron(kron(id, sx), id2).entries + kron(kron(id, id2), sx).entries;
  CHECK((driver.entries - anc_only).norm() < 1e-14);

  // restricted to the ancilla triplet basis the block equals twice the spin-1
  // block: (sz_a + sz_b) acts there as 2 S_z and (sx_a + sx_b) as 2 S_x
  const double a = 0.42, b = 0.58;
  const auto h2q = oracle_hamiltonian_two_qubit(hf, a, b);
  const auto h1 = oracle_hamiltonian_spin1(hf, a, b);
  Matrix triplet = Matrix::Zero(4, 3);  // ancilla-space isometry columns
  triplet(0, 0) = 1.0;
  triplet(1, 1) = triplet(2, 1) = 1.0 / std::sqrt(2.0);
  triplet(3, 2) = 1.0;
  for (Index m = 0; m < hf.dim(); ++m) {
    const Matrix block4 = h2q.entries.block(m * 4, m * 4, 4, 4);
    const Matrix restricted = triplet.adjoint() * block4 * triplet;
    const Matrix block3 = h1.entries.block(m * 3, m * 3, 3, 3);
    CHECK((restricted - 2.0 * block3).cwiseAbs().maxCoeff() < 1e-12);
  }

  // the ancilla singlet is annihilated by both coupling terms for any (a, b)
  Vector singlet(4);
  singlet << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0;
  for (const double aa : {0.0, 0.3, 1.0}) {
    const auto h = oracle_hamiltonian_two_qubit(hf, aa, 1.0 - aa);
    for (Index m = 0; m < hf.dim(); ++m) {
      const Matrix block = h.entries.block(m * 4, m * 4, 4, 4);
      CHECK((block * singlet).norm() < 1e-12);
    }
  }
}

TEST_CASE("diffusion Hamiltonian marks |s> and conjugates to the all-minus Ising") {
  const IsingSpec spec{2, 1.0, {1, 1}};
  const auto h = diffusion_hamiltonian(spec);

  // product +/- states diagonalize it with eigenvalues -1, +1, +1, +3
  Vector plus(2), minus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  const auto tensor = [](const Vector& x, const Vector& y) {
    Vector out(x.size() * y.size());
    for (Index i = 0; i < x.size(); ++i)
      for (Index j = 0; j < y.size(); ++j) out(i * y.size() + j) = x(i) * y(j);
    return out;
  };
  const std::pair<Vector, double> cases[] = {{tensor(plus, plus), -1.0},
                                             {tensor(plus, minus), 1.0},
                                             {tensor(minus, plus), 1.0},
                                             {tensor(minus, minus), 3.0}};
  for (const auto& [v, e] : cases) CHECK((h.entries * v - e * v).norm() < 1e-12);

  // Hadamard conjugation maps it to ising_hf with all-minus signs
  Matrix had1(2, 2);
  had1 << 1, 1, 1, -1;
  had1 /= std::sqrt(2.0);
  const Matrix had = kron(make_operator(had1, {2}), make_operator(had1, {2})).entries;
  const auto ising_minus = ising_hf({2, 1.0, {-1, -1}});
  CHECK((had * h.entries * had - ising_minus.entries).cwiseAbs().maxCoeff() < 1e-12);
}
