#include "scd/thermal.hpp"

#include <cmath>
#include <stdexcept>

#include "scd/distill.hpp"
#include "scd/range_optimizer.hpp"

namespace scd {

namespace {

double energy_from_levels(const std::vector<double>& levels, double beta) {
  const double e0 = levels.front();
  double z = 0, num = 0;
  for (double e : levels) {
    const double w = std::exp(-beta * (e - e0));
    z += w;
    num += w * e;
  }
  return num / z;
}

}  // namespace

double thermal_energy(const ModelSpec& spec, double beta) {
  if (!(beta >= 0) || !std::isfinite(beta)) throw std::invalid_argument("thermal_energy: beta must be finite and >= 0");
  return energy_from_levels(hermitian_eigenvalues(build(spec)), beta);
}

std::vector<ThermalBoundaryPoint> thermal_boundary(const ModelSpec& base, const std::vector<double>& g_grid,
                                                   const ThermalBoundaryOptions& opts) {
  if (base.family != Family::TransverseXY && base.family != Family::XXZ)
    throw std::invalid_argument("thermal_boundary: supports TransverseXY and XXZ");
  std::vector<ThermalBoundaryPoint> out;
  for (double g : g_grid) {
    ModelSpec spec = base;
    spec.g = g;
    ThermalBoundaryPoint pt;
    pt.g = g;
    pt.target = resolve_target_range(spec, TargetName::PsiMinus);
    const auto levels = hermitian_eigenvalues(build(spec));
    const double eps1 = pt.target.lo;
    // beta = 0 gives tr(H)/dim = 0, which must satisfy the constraint.
    if (!wcec_satisfied(energy_from_levels(levels, 0.0), pt.target))
      throw std::logic_error("infinite-temperature state violates the energy constraint");
    if (levels.front() >= eps1 - kEnergyTolerance) {
      out.push_back(pt);
      continue;
    }
    auto f = [&](double beta) { return energy_from_levels(levels, beta) - eps1; };
    double lo = 0.0, hi = 1.0;
    while (f(hi) > 0 && hi < opts.beta_ceiling) {
      lo = hi;
      hi *= 2;
    }
    double mid = hi;
    for (int it = 0; it < 200; ++it) {
      mid = 0.5 * (lo + hi);
      const double fm = f(mid);
      if (std::abs(fm) < 0.1 * opts.energy_tolerance) break;
      (fm > 0 ? lo : hi) = mid;
    }
    pt.beta_star = mid;
    pt.residual = std::abs(f(mid));
    out.push_back(pt);
  }
  return out;
}

}  // namespace scd
