// Acceptance checks, one line each:  criterion N  PASS|FAIL  <what was measured>
// Usage: acceptance [--criterion N]   (no flag runs all ten)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "scd/estimators.hpp"
#include "scd/range_optimizer.hpp"
#include "scd/thermal.hpp"

using namespace scd;

namespace {

// pinned tolerances
constexpr double kEtaTol = 0.005;
constexpr double kEta4 = 0.756, kEta3 = 0.928, kEta2Min = 0.999;
constexpr double kSpectrumTol = 1e-10;
constexpr double kRangeTol = 1e-6;
constexpr double kCurveTol = 1e-12;
constexpr double kPropIVMin = 0.999;
constexpr double kSigmaGap = 5.0;
constexpr double kIndependenceDeviation = 0.05;
constexpr std::uint64_t kWellPopulated = 10000;
constexpr double kAgreementSigmas = 3.0;
constexpr double kTanhTol = 1e-10;
constexpr double kBoundaryResidual = 1e-6;
constexpr double kWClassTol = 1e-3;
constexpr double kMonotoneSigmas = 2.0;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
    if (!ok) {
      pass = false;
      detail += " [x]";
    }
  }
};

McOptions mc(std::size_t n, std::uint64_t seed) {
  McOptions o;
  o.n_samples = n;
  o.seed = seed;
  return o;
}

Vec3 random_unit(Rng& rng) {
  Vec3 v{rng.normal(), rng.normal(), rng.normal()};
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  for (auto& x : v) x /= n;
  return v;
}

MonteCarloReport p_of(const ModelSpec& s, const StateSampler& smp, TargetName t, std::size_t n, std::uint64_t seed) {
  return estimate_p(smp, s, resolve_target_range(s, t), mc(n, seed));
}

double combined(const MonteCarloReport& a, const MonteCarloReport& b) { return std::hypot(a.std_error, b.std_error); }

// Adjacent pairs may rise by at most `sigmas` combined standard errors.
bool non_increasing(const std::vector<MonteCarloReport>& curve, double sigmas, std::string& worst) {
  bool ok = true;
  double worst_z = -1e300;
  for (std::size_t k = 1; k < curve.size(); ++k) {
    const double s = combined(curve[k], curve[k - 1]);
    const double rise = curve[k].estimate - curve[k - 1].estimate;
    const double z = s > 0 ? rise / s : (rise > 0 ? 1e300 : 0);
    worst_z = std::max(worst_z, z);
    if (rise > sigmas * s) ok = false;
  }
  worst = fmt::format("{:.2f}", worst_z);
  return ok;
}

Outcome criterion1() {
  Outcome o;
  const std::size_t n = 1000000;
  const auto r4 = estimate_df(4, mc(n, 101));
  const auto r3 = estimate_df(3, mc(n, 102));
  const auto r2 = estimate_df(2, mc(n, 103));
  o.require(std::abs(r4.estimate - kEta4) <= kEtaTol, fmt::format("eta(4)={:.4f}", r4.estimate));
  o.require(std::abs(r3.estimate - kEta3) <= kEtaTol, fmt::format("eta(3)={:.4f}", r3.estimate));
  o.require(r2.estimate >= kEta2Min, fmt::format("eta(2)={:.6f}", r2.estimate));
  return o;
}

Outcome criterion2() {
  Outcome o;
  Rng rng(202);
  double worst_xy = 0, worst_xxz = 0;
  for (int i = 0; i < 100; ++i) {
    const double gamma = rng.uniform(0, 3), g = rng.uniform(0, 3);
    const auto ev = hermitian_eigenvalues(build(ModelSpec::transverse_xy(gamma, g)));
    const double r = std::sqrt(4 * g * g + gamma * gamma);
    std::vector<double> cf{-1, 1, -r, r};
    std::sort(cf.begin(), cf.end());
    for (int k = 0; k < 4; ++k) worst_xy = std::max(worst_xy, std::abs(ev[k] - cf[k]));

    const double d = rng.uniform(-3, 3), h = rng.uniform(0, 3);
    const auto ex = hermitian_eigenvalues(build(ModelSpec::xxz(d, h)));
    std::vector<double> cx{-1 - d / 2, 1 - d / 2, -2 * h + d / 2, 2 * h + d / 2};
    std::sort(cx.begin(), cx.end());
    for (int k = 0; k < 4; ++k) worst_xxz = std::max(worst_xxz, std::abs(ex[k] - cx[k]));
  }
  o.require(worst_xy <= kSpectrumTol, fmt::format("XY max err {:.1e}", worst_xy));
  o.require(worst_xxz <= kSpectrumTol, fmt::format("XXZ max err {:.1e}", worst_xxz));
  return o;
}

Outcome criterion3() {
  Outcome o;
  const QuantumState psi = target_state(TargetName::PsiMinus);
  double worst = 0;
  for (double gamma : {0.5, 1.0, 2.0})
    for (double g : {0.0, 0.7, 2.0}) {
      const RangeResult r = target_energy_range(ModelSpec::transverse_xy(gamma, g), psi);
      const double eps = gamma < 1 ? 1.0 : gamma;
      worst = std::max({worst, std::abs(r.range.lo + eps), std::abs(r.range.hi - eps)});
      o.pass &= r.converged;
    }
  o.require(worst <= kRangeTol, fmt::format("XY gap {:.1e}", worst));
  worst = 0;
  for (double d : {0.5, 2.0, 3.0})
    for (double g : {0.0, 0.7, 2.0}) {
      const RangeResult r = target_energy_range(ModelSpec::xxz(d, g), psi);
      const double e1 = -(1 + d / 2), e2 = d < 1 ? 1 - d / 2 : d / 2;
      worst = std::max({worst, std::abs(r.range.lo - e1), std::abs(r.range.hi - e2)});
      o.pass &= r.converged;
    }
  o.require(worst <= kRangeTol, fmt::format("XXZ gap {:.1e}", worst));
  const RangeResult ghz = target_energy_range(ModelSpec::ring_xy(3, 1.0, 0.6), target_state(TargetName::Ghz3));
  o.require(std::abs(ghz.range.lo + 1) <= kRangeTol && std::abs(ghz.range.hi - 3) <= kRangeTol && ghz.converged,
            fmt::format("GHZ [{:.9f}, {:.9f}]", ghz.range.lo, ghz.range.hi));
  double curve = 0;
  const ModelSpec ring = ModelSpec::ring_xy(3, 1.0, 0.0);
  for (double th : {0.0, std::numbers::pi / 2, std::numbers::pi})
    curve = std::max(curve, std::abs(target_energy(ring, target_state(TargetName::Ghz3),
                                                   LocalUnitarySet::ghz_rotation(th)) -
                                     (1 + 2 * std::sin(th))));
  o.require(curve <= kCurveTol, fmt::format("1+2sin curve err {:.1e}", curve));
  return o;
}

Outcome criterion4() {
  Outcome o;
  Rng rng(404);
  std::uint64_t hits = 0;
  for (int i = 0; i < 20; ++i) {
    const ModelSpec s = ModelSpec::non_interacting(2, random_unit(rng), random_unit(rng), 1.0);
    hits += p_of(s, StateSampler::pure({2, 2}), TargetName::PsiMinus, 100000, 4000 + i).hits;
  }
  o.require(hits == 0, fmt::format("non-interacting SCD hits {}", hits));
  for (double g : {0.1, 1.0, 10.0}) {
    const ModelSpec s =
        ModelSpec::minimal_interaction(2, random_unit(rng), random_unit(rng), random_unit(rng), random_unit(rng), g);
    const auto r = p_of(s, StateSampler::pure({2, 2}), TargetName::PsiMinus, 100000, 4100);
    o.require(r.estimate > 0, fmt::format("minimal g={} p={:.4f}", g, r.estimate));
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  const StateSampler pure = StateSampler::pure({2, 2});
  const auto small = p_of(ModelSpec::transverse_xy(1, 1e-3), pure, TargetName::PsiMinus, 100000, 501);
  o.require(small.estimate >= kPropIVMin, fmt::format("p(g=1e-3)={:.5f}", small.estimate));
  const auto p05 = p_of(ModelSpec::transverse_xy(1, 0.5), pure, TargetName::PsiMinus, 100000, 502);
  const auto p3 = p_of(ModelSpec::transverse_xy(1, 3.0), pure, TargetName::PsiMinus, 100000, 503);
  const double z = (p05.estimate - p3.estimate) / combined(p05, p3);
  o.require(z > kSigmaGap, fmt::format("p(0.5)={:.4f} p(3)={:.4f} gap {:.1f} sigma", p05.estimate, p3.estimate, z));
  return o;
}

Outcome criterion6() {
  Outcome o;
  Rng rng(606);
  const StateSampler bd = StateSampler::bell_diagonal();
  std::vector<QuantumState> states;
  for (int i = 0; i < 10000; ++i) states.push_back(bd.sample(rng));
  for (double gamma : {0.5, 1.0, 2.0}) {
    const ModelSpec s = ModelSpec::transverse_xy(gamma, 1.0);
    const ComplexMatrix h = build(s);
    const EnergyRange tr = resolve_target_range(s, TargetName::PsiMinus);
    std::size_t bad = 0;
    for (const auto& st : states) bad += !wcec_satisfied(st, h, tr);
    o.require(bad == 0, fmt::format("gamma={} violations {}", gamma, bad));
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  const ModelSpec s = ModelSpec::transverse_xy(1, 1);
  const IndependenceTable t = independence_check(4, s, 20, mc(1000000, 701), kWellPopulated);
  o.require(t.max_deviation < kIndependenceDeviation,
            fmt::format("eta={:.4f} max bin deviation {:.4f}", t.eta, t.max_deviation));
  const EnergyRange tr = resolve_target_range(s, TargetName::PsiMinus);
  const auto direct = estimate_p(StateSampler::mixed({2, 2}, 4), s, tr, mc(1000000, 702));
  const IndependenceComparison c = compare_independence(t, direct, tr);
  const double z = std::abs(c.p_independence - c.p_direct) / c.combined_sigma;
  o.require(z <= kAgreementSigmas, fmt::format("p_indep={:.5f} p_direct={:.5f} ({:.2f} sigma)", c.p_independence,
                                               c.p_direct, z));
  return o;
}

Outcome criterion8() {
  Outcome o;
  const ModelSpec zero = ModelSpec::transverse_xy(1, 0);
  const auto none = thermal_boundary(zero, {0.0});
  double worst = 0;
  for (double b : {0.5, 1.0, 2.0}) {
    worst = std::max(worst, std::abs(thermal_energy(zero, b) + std::tanh(b)));
    worst = std::max(worst, std::abs(average_energy(thermal_state(zero, b), zero) + std::tanh(b)));
  }
  o.require(!none[0].beta_star, "g=0 no boundary");
  o.require(worst <= kTanhTol, fmt::format("-tanh err {:.1e}", worst));
  const auto at2 = thermal_boundary(zero, {2.0});
  const bool found = at2[0].beta_star.has_value();
  const double res = found ? std::abs(thermal_energy(ModelSpec::transverse_xy(1, 2), *at2[0].beta_star) + 1) : 1.0;
  o.require(found && res < kBoundaryResidual,
            fmt::format("g=2 beta*={:.6f} residual {:.1e}", at2[0].beta_star.value_or(-1), res));
  return o;
}

Outcome criterion9() {
  Outcome o;
  const StateSampler w = StateSampler::w_class();
  for (double g : {0.25, 0.5, 1.0}) {
    const auto r = p_of(ModelSpec::ring_xy(3, 1, g), w, TargetName::W3, 100000, 901);
    o.require(r.estimate >= 1 - kWClassTol, fmt::format("W p({})={:.5f}", g, r.estimate));
  }
  const auto r2 = p_of(ModelSpec::ring_xy(3, 1, 2.0), w, TargetName::W3, 100000, 901);
  o.require(r2.estimate < 1 - kWClassTol, fmt::format("W p(2)={:.4f}", r2.estimate));

  std::vector<MonteCarloReport> ghz;
  for (double g = 0; g <= 3.0 + 1e-9; g += 0.25)
    ghz.push_back(p_of(ModelSpec::ring_xy(3, 1, g), StateSampler::ghz_class(), TargetName::Ghz3, 100000, 902));
  std::string worst;
  const bool mono = non_increasing(ghz, kMonotoneSigmas, worst);
  o.require(mono, fmt::format("GHZ p {:.4f}..{:.4f}, largest rise {} sigma", ghz.front().estimate,
                              ghz.back().estimate, worst));
  return o;
}

Outcome criterion10() {
  Outcome o;
  const std::size_t n = 100000;
  const StateSampler pure = StateSampler::pure({2, 2});
  std::string worst;

  // monotone curves with common random numbers along g
  std::vector<MonteCarloReport> xy, mixed4, xxz;
  for (double g = 0; g <= 3.0 + 1e-9; g += 0.5) {
    xy.push_back(p_of(ModelSpec::transverse_xy(1, g), pure, TargetName::PsiMinus, n, 1001));
    mixed4.push_back(p_of(ModelSpec::transverse_xy(1, g), StateSampler::mixed({2, 2}, 4), TargetName::PsiMinus, n, 1002));
    xxz.push_back(p_of(ModelSpec::xxz(0.5, g), pure, TargetName::PsiMinus, n, 1003));
  }
  bool ok = non_increasing(xy, kMonotoneSigmas, worst) && xy.front().estimate >= kPropIVMin;
  o.require(ok, fmt::format("XY pure {:.3f}->{:.3f} (rise {})", xy.front().estimate, xy.back().estimate, worst));
  ok = non_increasing(mixed4, kMonotoneSigmas, worst);
  o.require(ok, fmt::format("XY rank-4 {:.3f}->{:.3f} (rise {})", mixed4.front().estimate, mixed4.back().estimate,
                            worst));
  ok = non_increasing(xxz, kMonotoneSigmas, worst);
  o.require(ok, fmt::format("XXZ pure {:.3f}->{:.3f} (rise {})", xxz.front().estimate, xxz.back().estimate, worst));

  // longitudinal model: the decay rate changes at g = 1
  const double h = 0.25;
  auto pl = [&](double g) { return p_of(ModelSpec::longitudinal_xy(1, g), pure, TargetName::PsiMinus, n, 1004); };
  const auto a = pl(1 - h), b = pl(1.0), c = pl(1 + h);
  const double left = (b.estimate - a.estimate) / h, right = (c.estimate - b.estimate) / h;
  const double kink_sigma = std::sqrt(a.std_error * a.std_error + 4 * b.std_error * b.std_error +
                                      c.std_error * c.std_error) / h;
  const double kink_z = std::abs(right - left) / kink_sigma;
  o.require(kink_z > kSigmaGap, fmt::format("longitudinal slopes {:.3f} | {:.3f} ({:.1f} sigma)", left, right, kink_z));

  // delta p changes sign on (0, 3)
  double zmax = -1e300, zmin = 1e300;
  for (double g = 0.25; g < 3.0; g += 0.25) {
    const DeltaPReport d = delta_p(1.0, g, mc(n, 1005));
    if (d.std_error == 0) continue;
    zmax = std::max(zmax, d.delta / d.std_error);
    zmin = std::min(zmin, d.delta / d.std_error);
  }
  o.require(zmax > kAgreementSigmas && zmin < -kAgreementSigmas,
            fmt::format("delta p z-range [{:.1f}, {:.1f}]", zmin, zmax));

  // two qutrits: p at zero field depends on theta and drops with g
  const StateSampler q = StateSampler::pure({3, 3});
  std::vector<MonteCarloReport> at0;
  for (double th = 0; th < 2 * std::numbers::pi; th += std::numbers::pi / 4)
    at0.push_back(p_of(ModelSpec::bilinear_biquadratic(th, 0), q, TargetName::PhiD, 20000, 1006));
  const auto [lo, hi] = std::minmax_element(at0.begin(), at0.end(), [](const auto& x, const auto& y) {
    return x.estimate < y.estimate;
  });
  const double theta_z = (hi->estimate - lo->estimate) / combined(*hi, *lo);
  o.require(theta_z > kSigmaGap, fmt::format("qutrit p(g=0) over theta {:.3f}..{:.3f}", lo->estimate, hi->estimate));
  std::vector<MonteCarloReport> qg;
  for (double g : {0.0, 1.0, 2.0, 3.0})
    qg.push_back(p_of(ModelSpec::bilinear_biquadratic(1.0, g), q, TargetName::PhiD, 20000, 1007));
  ok = non_increasing(qg, kMonotoneSigmas, worst) &&
       (qg.front().estimate - qg.back().estimate) / combined(qg.front(), qg.back()) > kSigmaGap;
  o.require(ok, fmt::format("qutrit theta=1: {:.3f}->{:.3f} (rise {})", qg.front().estimate, qg.back().estimate,
                            worst));

  // determinism: fixed seed, serial reference vs parallel, repeated
  const ModelSpec s = ModelSpec::transverse_xy(1, 1);
  const EnergyRange tr = resolve_target_range(s, TargetName::PsiMinus);
  McOptions ser = mc(20000, 1008), par = ser;
  ser.exec = Exec::Serial;
  const auto r1 = estimate_p(StateSampler::mixed({2, 2}, 3), s, tr, ser);
  const auto r2 = estimate_p(StateSampler::mixed({2, 2}, 3), s, tr, par);
  const auto r3 = estimate_p(StateSampler::mixed({2, 2}, 3), s, tr, par);
  o.require(r1.hits == r2.hits && r2.hits == r3.hits && r1.histogram.counts == r3.histogram.counts &&
                r1.mean_energy == r3.mean_energy,
            "seeded runs identical");
  return o;
}

const std::vector<std::pair<const char*, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<const char*, std::function<Outcome()>>> list = {
      {"distillability factor", criterion1},
      {"closed-form spectra", criterion2},
      {"optimizer vs analytic ranges", criterion3},
      {"non-interacting and minimal models", criterion4},
      {"vanishing field limit", criterion5},
      {"Bell-diagonal sweep", criterion6},
      {"independence diagnostic", criterion7},
      {"thermal boundary", criterion8},
      {"three-qubit classes", criterion9},
      {"qualitative curve properties", criterion10},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  if (only < 0 || only > static_cast<int>(criteria().size())) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  bool all = true;
  for (std::size_t k = 0; k < criteria().size(); ++k) {
    if (only && static_cast<int>(k) + 1 != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria()[k].second();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("threw: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2zu  %s  %s: %s  (%.1fs)\n", k + 1, out.pass ? "PASS" : "FAIL", criteria()[k].first,
                out.detail.c_str(), dt);
    std::fflush(stdout);
    all &= out.pass;
  }
  return all ? 0 : 1;
}
