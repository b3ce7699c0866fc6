#pragma once

// Spin Hamiltonians, always stored divided by the coupling J, and split as
// H = H_int + g * H_l with g = h / J.

#include <array>
#include <optional>
#include <string_view>

#include "scd/tensor.hpp"
#include "scd/types.hpp"

namespace scd {

enum class Family {
  NonInteracting,
  MinimalInteraction,
  TransverseXY,
  LongitudinalXY,
  XXZ,
  BilinearBiquadratic,
  RingXY,
};

std::string_view to_string(Family f);
Family parse_family(std::string_view s);

using Vec3 = std::array<double, 3>;

struct ModelSpec {
  Family family = Family::TransverseXY;
  double gamma = 1.0;   // XY anisotropy
  double g = 0.0;       // field ratio h/J
  double delta = 0.0;   // XXZ z-anisotropy
  double theta = 0.0;   // bilinear/biquadratic mixing angle, radians
  std::size_t n_sites = 2;
  std::size_t local_dim = 2;
  Vec3 alpha{0, 0, 1};  // local field directions (generic families)
  Vec3 beta{0, 0, 1};
  Vec3 n1{0, 0, 1};     // interaction directions (MinimalInteraction)
  Vec3 n2{0, 0, 1};

  static ModelSpec transverse_xy(double gamma, double g);
  static ModelSpec longitudinal_xy(double gamma, double g);
  static ModelSpec xxz(double delta, double g);
  static ModelSpec bilinear_biquadratic(double theta, double g);
  static ModelSpec ring_xy(std::size_t n, double gamma, double g);
  static ModelSpec non_interacting(std::size_t d, Vec3 alpha, Vec3 beta, double g = 1.0);
  static ModelSpec minimal_interaction(std::size_t d, Vec3 n1, Vec3 n2, Vec3 alpha, Vec3 beta, double g);
};

/// Throws std::invalid_argument when the parameter combination is unsupported.
void validate(const ModelSpec& spec);

/// Local dimensions of every site.
Dims site_dims(const ModelSpec& spec);

ComplexMatrix build(const ModelSpec& spec);
ComplexMatrix interaction_part(const ModelSpec& spec);
/// The field operator multiplied by g in `build`.
ComplexMatrix local_part(const ModelSpec& spec);

/// [min, max] eigenvalue of H/J. Uses the closed form where one exists and
/// cross-checks it against the numerical spectrum (throws std::logic_error on disagreement).
EnergyRange state_energy_bounds(const ModelSpec& spec);
std::optional<EnergyRange> state_energy_bounds_closed_form(const ModelSpec& spec);
EnergyRange state_energy_bounds_numeric(const ModelSpec& spec);

/// Closed-form reachable range of <target~|H|target~> over local unitaries.
/// nullopt means no formula is known and the range optimizer has to be used.
std::optional<EnergyRange> target_energy_bounds_analytic(const ModelSpec& spec, TargetName target);

/// The natural distillation target for a family (psi_minus for qubit pairs,
/// phi_d for qudit pairs, ghz3 for the three-site ring).
TargetName default_target(const ModelSpec& spec);

}  // namespace scd
