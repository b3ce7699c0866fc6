#pragma once

// Thermal states against the energy constraint: the temperature below which
// tr(H rho_th) leaves the target range ("SCD temperature").

#include <optional>
#include <vector>

#include "scd/hamiltonians.hpp"

namespace scd {

/// tr(H rho_th(beta)) from the spectrum, ground-energy shifted.
double thermal_energy(const ModelSpec& spec, double beta);

struct ThermalBoundaryPoint {
  double g = 0.0;
  EnergyRange target;
  std::optional<double> beta_star;  // nullopt: no boundary, the WCEC holds for every beta
  double residual = 0.0;            // |tr(H rho_th(beta*)) - eps1|
};

struct ThermalBoundaryOptions {
  double energy_tolerance = 1e-6;
  double beta_ceiling = 1e6;  // bracket expansion stops here
};

/// For each g, bisection on beta solving tr(H rho_th(beta)) = eps1.
/// `base` must be TransverseXY or XXZ; its g is replaced by each grid value.
std::vector<ThermalBoundaryPoint> thermal_boundary(const ModelSpec& base, const std::vector<double>& g_grid,
                                                   const ThermalBoundaryOptions& opts = {});

}  // namespace scd
