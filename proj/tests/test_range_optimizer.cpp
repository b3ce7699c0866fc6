#include <doctest.h>

#include <cmath>
#include <numbers>

#include "scd/range_optimizer.hpp"

using namespace scd;

TEST_SUITE("range-optimizer") {
  TEST_CASE("simplex search on the Rosenbrock valley") {
    const auto rosen = [](std::span<const double> x) {
      return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
    };
    const NelderMeadResult r = nelder_mead(rosen, {-1.2, 1.0});
    CHECK(r.converged);
    CHECK(r.x[0] == doctest::Approx(1).epsilon(1e-4));
    CHECK(r.x[1] == doctest::Approx(1).epsilon(1e-4));
  }

  TEST_CASE("parametrized unitaries are unitary") {
    const ComplexMatrix u = qubit_unitary(0.3, 1.1, -2.0);
    CHECK(max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(2)) < 1e-14);
    std::vector<double> p{0.1, -0.4, 0.2, 0.5, 0.3, -0.7, 0.9, 0.2, 1.3};
    const ComplexMatrix g = unitary_from_generator(3, p);
    CHECK(max_abs_diff(g * g.adjoint(), ComplexMatrix::identity(3)) < 1e-12);
    std::vector<double> zero(9, 0.0);
    CHECK(max_abs_diff(unitary_from_generator(3, zero), ComplexMatrix::identity(3)) < 1e-14);
  }

  TEST_CASE("GHZ rotation traces 1 + 2 sin(theta)") {
    const ModelSpec ring = ModelSpec::ring_xy(3, 1.0, 0.0);
    const QuantumState ghz = target_state(TargetName::Ghz3);
    for (double th : {0.0, 0.4, std::numbers::pi / 2, 2.0, std::numbers::pi, 4.0, 3 * std::numbers::pi / 2}) {
      const LocalUnitarySet us = LocalUnitarySet::ghz_rotation(th);
      CHECK(us.unitarity_defect() < 1e-15);
      CHECK(std::abs(target_energy(ring, ghz, us) - (1 + 2 * std::sin(th))) < 1e-12);
    }
    // the field part never contributes for this family of unitaries
    const ModelSpec fielded = ModelSpec::ring_xy(3, 1.0, 1.7);
    CHECK(std::abs(target_energy(fielded, ghz, LocalUnitarySet::ghz_rotation(0.9)) - (1 + 2 * std::sin(0.9))) < 1e-12);
  }

  TEST_CASE("full-angle first factor doubles the angle") {
    const ModelSpec ring = ModelSpec::ring_xy(3, 1.0, 0.0);
    const double th = 0.3, r = 1 / std::sqrt(2.0);
    const ComplexMatrix v(2, {r, r, -r, r});
    LocalUnitarySet us{{ComplexMatrix(2, {std::cos(th), std::sin(th), -std::sin(th), std::cos(th)}), v, v}};
    CHECK(std::abs(target_energy(ring, target_state(TargetName::Ghz3), us) - (1 + 2 * std::sin(2 * th))) < 1e-12);
  }

  TEST_CASE("optimizer recovers the analytic XY and XXZ ranges") {
    for (double gamma : {0.5, 1.0, 2.0}) {
      const ModelSpec s = ModelSpec::transverse_xy(gamma, 0.8);
      const RangeResult r = target_energy_range(s, target_state(TargetName::PsiMinus));
      CHECK(r.converged);
      const double eps = std::max(1.0, gamma);
      CHECK(std::abs(r.range.lo + eps) < 1e-6);
      CHECK(std::abs(r.range.hi - eps) < 1e-6);
    }
    const ModelSpec x = ModelSpec::xxz(0.5, 1.2);
    const RangeResult r = target_energy_range(x, target_state(TargetName::PsiMinus));
    CHECK(std::abs(r.range.lo + 1.25) < 1e-6);
    CHECK(std::abs(r.range.hi - 0.75) < 1e-6);
  }

  TEST_CASE("one-sided search matches the full search for a maximally entangled target") {
    const ModelSpec s = ModelSpec::longitudinal_xy(1.5, 0.6);
    RangeOptions one;
    one.one_sided = true;
    const RangeResult a = target_energy_range(s, target_state(TargetName::PsiMinus), one);
    const RangeResult b = target_energy_range(s, target_state(TargetName::PsiMinus));
    CHECK(std::abs(a.range.lo - b.range.lo) < 1e-6);
    CHECK(std::abs(a.range.hi - b.range.hi) < 1e-6);
  }

  TEST_CASE("qudit targets") {
    const ModelSpec s = ModelSpec::minimal_interaction(3, {0, 0, 1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, 0.5);
    RangeOptions o;
    o.one_sided = true;
    const RangeResult r = target_energy_range(s, target_state(TargetName::PhiD, 3), o);
    CHECK(r.converged);
    CHECK(std::abs(r.range.hi - 2.0 / 3) < 1e-6);
    CHECK(std::abs(r.range.lo + 2.0 / 3) < 1e-6);
  }

  TEST_CASE("serial and parallel restarts agree exactly") {
    const ModelSpec ring = ModelSpec::ring_xy(3, 1.0, 0.5);
    RangeOptions o;
    o.restarts = 8;
    o.serial = true;
    const RangeResult a = target_energy_range(ring, target_state(TargetName::W3), o);
    o.serial = false;
    const RangeResult b = target_energy_range(ring, target_state(TargetName::W3), o);
    CHECK(a.range.lo == b.range.lo);
    CHECK(a.range.hi == b.range.hi);
  }

  TEST_CASE("W-state range lies strictly inside the spectrum") {
    const auto pts = w_class_target_range(ModelSpec::ring_xy(3, 1.0, 0.0), {0.5, 1.0, 2.0});
    for (const auto& p : pts) {
      CHECK(p.result.converged);
      CHECK(p.strict_subset);
      CHECK(p.state_bounds.contains(p.result.range, 1e-9));
    }
  }

  TEST_CASE("resolve prefers closed forms") {
    const EnergyRange r = resolve_target_range(ModelSpec::ring_xy(3, 1.0, 2.0), TargetName::Ghz3);
    CHECK(r.lo == -1);
    CHECK(r.hi == 3);
  }
}
