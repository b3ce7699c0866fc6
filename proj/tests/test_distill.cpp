#include <doctest.h>

#include <cmath>

#include "scd/distill.hpp"

using namespace scd;

namespace {

QuantumState werner(double p) {
  ComplexMatrix rho = p * target_state(TargetName::PsiMinus).density() + (1 - p) * 0.25 * ComplexMatrix::identity(4);
  rho.set_subsystem_dims({2, 2});
  return QuantumState::mixed(rho);
}

QuantumState product00() { return QuantumState::pure({1, 0, 0, 0}, {2, 2}); }

}  // namespace

TEST_SUITE("distill-core") {
  TEST_CASE("singlet is distillable with witness -1/2") {
    const auto v = is_distillable(target_state(TargetName::PsiMinus));
    CHECK(v.verdict == Verdict::Distillable);
    CHECK(*v.min_pt_eigenvalue == doctest::Approx(-0.5));
    CHECK(*v.schmidt_rank == 2);
    // same answer from the density-matrix representation
    const auto m = is_distillable(QuantumState::mixed(target_state(TargetName::PsiMinus).density()));
    CHECK(m.verdict == Verdict::Distillable);
    CHECK(*m.min_pt_eigenvalue == doctest::Approx(-0.5));
  }

  TEST_CASE("Werner family: NPPT iff p > 1/3") {
    for (double p : {0.0, 0.2, 0.3, 0.34, 0.5, 0.9}) {
      const auto v = is_distillable(werner(p));
      CHECK(*v.min_pt_eigenvalue == doctest::Approx((1 - 3 * p) / 4));
      CHECK((v.verdict == Verdict::Distillable) == (p > 1.0 / 3));
    }
  }

  TEST_CASE("product states are undistillable") {
    CHECK(is_distillable(product00()).verdict == Verdict::Undistillable);
    CHECK(*is_distillable(product00()).schmidt_rank == 1);
    CHECK(is_distillable(QuantumState::pure({0, 0, 0, 0, 1, 0, 0, 0, 0}, {3, 3})).verdict == Verdict::Undistillable);
  }

  TEST_CASE("two qutrits: pure uses Schmidt rank, mixed NPPT stays open") {
    CHECK(is_distillable(target_state(TargetName::PhiD, 3)).verdict == Verdict::Distillable);
    ComplexMatrix mm = (1.0 / 9) * ComplexMatrix::identity(9);
    mm.set_subsystem_dims({3, 3});
    CHECK(is_distillable(QuantumState::mixed(mm)).verdict == Verdict::Undistillable);
    ComplexMatrix noisy = 0.8 * target_state(TargetName::PhiD, 3).density() + 0.2 * mm;
    noisy.set_subsystem_dims({3, 3});
    CHECK(is_distillable(QuantumState::mixed(noisy, 9)).verdict == Verdict::Unknown);
  }

  TEST_CASE("qubit-qutrit mixed states are decided by the partial transpose") {
    CVector v(6, 0);
    v[0] = v[4] = 1 / std::sqrt(2.0);  // |00> + |11>
    ComplexMatrix rho = 0.9 * ComplexMatrix::outer(v, {2, 3}) + (0.1 / 6) * ComplexMatrix::identity(6, {2, 3});
    CHECK(is_distillable(QuantumState::mixed(rho, 6)).verdict == Verdict::Distillable);
  }

  TEST_CASE("three-qubit pure states") {
    CHECK(is_distillable(target_state(TargetName::Ghz3)).verdict == Verdict::Distillable);
    CHECK(is_distillable(target_state(TargetName::W3)).verdict == Verdict::Distillable);
    CVector prod(8, 0);
    prod[0] = 1;
    CHECK(is_distillable(QuantumState::pure(prod, {2, 2, 2})).verdict == Verdict::Undistillable);
    // |0> (x) singlet: entangled, but not across the first cut
    const CVector bisep = kron(CVector{1, 0}, target_state(TargetName::PsiMinus).amplitudes());
    CHECK(is_distillable(QuantumState::pure(bisep, {2, 2, 2})).verdict == Verdict::Undistillable);
    Rng rng(8);
    for (int i = 0; i < 50; ++i) CHECK(is_distillable(ghz_class_sample(rng)).verdict == Verdict::Distillable);
  }

  TEST_CASE("SCD decisions") {
    const ModelSpec s = ModelSpec::transverse_xy(1, 10);
    const EnergyRange tr{-1, 1};
    CHECK(average_energy(target_state(TargetName::PsiMinus), s) == doctest::Approx(-1));
    CHECK(is_scd(target_state(TargetName::PsiMinus), s, tr) == ScdVerdict::SCD);
    CHECK(is_scd(product00(), s, tr) == ScdVerdict::NotSCD);

    // a hot thermal state is separable but meets the constraint
    const ModelSpec t = ModelSpec::transverse_xy(1, 2);
    const QuantumState hot = thermal_state(t, 0.05);
    CHECK(concurrence(hot) == 0.0);
    CHECK(wcec_satisfied(hot, t, tr));
    CHECK(is_scd(hot, t, tr) == ScdVerdict::NotSCD);

    ComplexMatrix noisy = 0.8 * target_state(TargetName::PhiD, 3).density() +
                          (0.2 / 9) * ComplexMatrix::identity(9);
    noisy.set_subsystem_dims({3, 3});
    const ModelSpec q = ModelSpec::bilinear_biquadratic(0.3, 0.0);
    CHECK(is_scd(QuantumState::mixed(noisy, 9), q, EnergyRange{-100, 100}) == ScdVerdict::Unknown);
  }

  TEST_CASE("energy membership tolerance") {
    const EnergyRange r{-1, 1};
    CHECK(wcec_satisfied(1 + 5e-10, r));
    CHECK(!wcec_satisfied(1 + 5e-9, r));
  }

  TEST_CASE("concurrence") {
    CHECK(concurrence(target_state(TargetName::PsiMinus)) == doctest::Approx(1));
    CHECK(concurrence(product00()) == doctest::Approx(0).epsilon(1e-12));
    for (double p : {0.1, 0.33, 0.5, 0.8, 1.0})
      CHECK(concurrence(werner(p)) == doctest::Approx(std::max(0.0, (3 * p - 1) / 2)).epsilon(1e-9));
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
      const double c = concurrence(random_mixed({2, 2}, 2, rng));
      CHECK(c >= 0);
      CHECK(c <= 1 + 1e-12);
    }
    CHECK_THROWS(concurrence(target_state(TargetName::Ghz3)));
  }
}
