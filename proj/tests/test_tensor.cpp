#include <doctest.h>

#include <cmath>
#include <numbers>

#include "scd/tensor.hpp"

using namespace scd;

namespace {

ComplexMatrix psi_minus_projector() {
  const double r = 1 / std::sqrt(2.0);
  const CVector psi{0, r, -r, 0};
  return ComplexMatrix::outer(psi, {2, 2});
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

}  // namespace

TEST_SUITE("tensor-core") {
  TEST_CASE("pauli algebra") {
    using namespace pauli;
    CHECK(max_abs_diff(x() * y(), cplx(0, 1) * z()) < 1e-15);
    CHECK(max_abs_diff(x() * x(), id()) < 1e-15);
    CHECK(std::abs(z().trace()) == 0.0);
  }

  TEST_CASE("kron and dims") {
    const ComplexMatrix k = kron(pauli::z(), pauli::id());
    CHECK(k.dim() == 4);
    CHECK(k(0, 0) == cplx(1));
    CHECK(k(2, 2) == cplx(-1));
    const CVector a{1, 0}, b{0, 1};
    const CVector ab = kron(a, b);
    CHECK(ab[1] == cplx(1));
  }

  TEST_CASE("spin operators obey su(2)") {
    for (std::size_t d : {2u, 3u, 4u, 5u}) {
      const auto s = spin_operators(d);
      CHECK(max_abs_diff(commutator(s.x, s.y), cplx(0, 1) * s.z) < 1e-12);
      const double j = (static_cast<double>(d) - 1) / 2;
      const ComplexMatrix casimir = s.x * s.x + s.y * s.y + s.z * s.z;
      CHECK(max_abs_diff(casimir, cplx(j * (j + 1)) * ComplexMatrix::identity(d)) < 1e-12);
      CHECK(s.z(0, 0).real() == doctest::Approx(j));
    }
  }

  TEST_CASE("eigensolver reconstructs random Hermitian matrices") {
    Rng rng(7);
    for (std::size_t d : {2u, 3u, 4u, 8u, 9u}) {
      const ComplexMatrix a = random_hermitian(d, rng);
      const Spectrum s = hermitian_eig(a);
      for (std::size_t k = 1; k < d; ++k) CHECK(s.eigenvalues[k - 1] <= s.eigenvalues[k]);
      const ComplexMatrix& v = s.eigenvectors;
      CHECK(max_abs_diff(v * v.adjoint(), ComplexMatrix::identity(d)) < 1e-12);
      const ComplexMatrix back = v * ComplexMatrix::diagonal(s.eigenvalues) * v.adjoint();
      CHECK(max_abs_diff(back, a) < 1e-11);
      const auto only = hermitian_eigenvalues(a);
      for (std::size_t k = 0; k < d; ++k) CHECK(only[k] == doctest::Approx(s.eigenvalues[k]).epsilon(1e-12));
    }
  }

  TEST_CASE("eigensolver known spectra and degeneracy") {
    auto ev = hermitian_eigenvalues(pauli::y());
    CHECK(ev[0] == doctest::Approx(-1));
    CHECK(ev[1] == doctest::Approx(1));
    ev = hermitian_eigenvalues(ComplexMatrix::identity(5));
    for (double e : ev) CHECK(e == doctest::Approx(1));
  }

  TEST_CASE("non-Hermitian input is rejected") {
    ComplexMatrix a(2, {0, 1, 0, 0});
    CHECK_THROWS_AS(hermitian_eig(a), std::invalid_argument);
  }

  TEST_CASE("partial transpose of the singlet") {
    const auto ev = hermitian_eigenvalues(partial_transpose(psi_minus_projector(), 0));
    CHECK(ev[0] == doctest::Approx(-0.5));
    for (int k = 1; k < 4; ++k) CHECK(ev[k] == doctest::Approx(0.5));
    // transposing either side gives the same spectrum
    const auto ev1 = hermitian_eigenvalues(partial_transpose(psi_minus_projector(), 1));
    CHECK(ev1[0] == doctest::Approx(-0.5));
  }

  TEST_CASE("partial trace") {
    Rng rng(3);
    ComplexMatrix a = random_hermitian(2, rng), b = random_hermitian(3, rng);
    a = a * a;
    b = b * b;
    a *= 1.0 / a.trace().real();
    b *= 1.0 / b.trace().real();
    ComplexMatrix ab = kron(a, b);
    ab.set_subsystem_dims({2, 3});
    CHECK(max_abs_diff(partial_trace(ab, {0}), a) < 1e-14);
    CHECK(max_abs_diff(partial_trace(ab, {1}), b) < 1e-14);
    CHECK(std::abs(partial_trace(ab, {0, 1}).trace() - 1.0) < 1e-14);

    const auto single = partial_trace(psi_minus_projector(), {1});
    CHECK(max_abs_diff(single, 0.5 * ComplexMatrix::identity(2)) < 1e-15);

    CHECK_THROWS(partial_trace(ComplexMatrix::identity(4), {0}));
    CHECK_THROWS(partial_trace(ab, {}));
    CHECK_THROWS(partial_trace(ab, {2}));
  }

  TEST_CASE("partial trace on three qubits keeps order") {
    // |0>|1>|0> keep {0, 2} -> |00><00|
    CVector v(8, 0);
    v[2] = 1;
    const auto r = partial_trace(ComplexMatrix::outer(v, {2, 2, 2}), {0, 2});
    CHECK(r(0, 0) == cplx(1));
    const auto r1 = partial_trace(ComplexMatrix::outer(v, {2, 2, 2}), {1});
    CHECK(r1(1, 1) == cplx(1));
  }

  TEST_CASE("Haar unitaries") {
    Rng rng(11);
    const std::size_t d = 3, n = 20000;
    double m2 = 0, m4 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const ComplexMatrix u = haar_unitary(d, rng);
      REQUIRE(max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(d)) < 1e-12);
      const double p = std::norm(u(0, 0));
      m2 += p;
      m4 += p * p;
    }
    m2 /= n;
    m4 /= n;
    // |U_00|^2 ~ Beta(1, d - 1): mean 1/d, second moment 2/(d(d+1))
    CHECK(m2 == doctest::Approx(1.0 / 3).epsilon(0.02));
    CHECK(m4 == doctest::Approx(2.0 / 12).epsilon(0.04));
    CHECK(std::abs(std::abs(determinant(haar_unitary(4, rng))) - 1) < 1e-12);
  }

  TEST_CASE("embed places operators on the right site") {
    const Dims dims{2, 2, 2};
    const ComplexMatrix z1 = embed(pauli::z(), 1, dims);
    CHECK(max_abs_diff(z1, kron(kron(pauli::id(), pauli::z()), pauli::id())) < 1e-15);
    const ComplexMatrix xx = embed_pair(pauli::x(), 0, pauli::x(), 2, dims);
    CHECK(max_abs_diff(xx, kron(kron(pauli::x(), pauli::id()), pauli::x())) < 1e-15);
  }

  TEST_CASE("spectral function") {
    const ComplexMatrix e = spectral_function(pauli::x(), [](double x) { return std::exp(x); });
    CHECK(e(0, 0).real() == doctest::Approx(std::cosh(1.0)));
    CHECK(e(0, 1).real() == doctest::Approx(std::sinh(1.0)));
  }

  TEST_CASE("determinant") {
    CHECK(std::abs(determinant(pauli::x()) + 1.0) < 1e-15);
    CHECK(std::abs(determinant(ComplexMatrix(2, {1, 2, 3, 4})) + 2.0) < 1e-14);
  }
}
