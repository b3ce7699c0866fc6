#pragma once

// Reachable interval of <target~|H|target~> over product (local) unitaries.

#include <array>
#include <cstdint>
#include <vector>

#include "scd/hamiltonians.hpp"
#include "scd/nelder_mead.hpp"
#include "scd/states.hpp"

namespace scd {

/// One unitary per site. Qubit sites built from angles use
///   [[cos t e^{i p1},  sin t e^{i p2}], [-sin t e^{-i p2}, cos t e^{-i p1}]].
struct LocalUnitarySet {
  std::vector<ComplexMatrix> factors;

  static LocalUnitarySet identity(const Dims& dims);
  /// (theta, phi1, phi2) per qubit.
  static LocalUnitarySet from_qubit_angles(const std::vector<std::array<double, 3>>& angles);
  /// U1 = [[c, s], [-s, c]] with c = cos(theta/2), s = sin(theta/2), U2 = U3 = [[1, 1], [-1, 1]]/sqrt2.
  /// On the GHZ state under the gamma = 1 ring this gives energy 1 + 2 sin(theta).
  static LocalUnitarySet ghz_rotation(double theta);

  /// Largest |U U^dagger - I| entry over the factors.
  double unitarity_defect() const;
};

ComplexMatrix qubit_unitary(double theta, double phi1, double phi2);
/// exp(i G) for the Hermitian G whose d^2 real parameters are the diagonal
/// followed by (re, im) of each strictly upper entry.
ComplexMatrix unitary_from_generator(std::size_t d, std::span<const double> params);

/// (U_1 (x) ... (x) U_n)|psi>, applied site by site.
CVector apply_local(const LocalUnitarySet& us, const QuantumState& target);

/// <target|(xU)^dagger H (xU)|target> with H = build(spec).
double target_energy(const ModelSpec& spec, const QuantumState& target, const LocalUnitarySet& us);

struct RangeOptions {
  int restarts = 32;
  double tolerance = 1e-8;
  int max_iterations = 5000;   // per restart
  double agreement = 1e-6;     // best three restarts must agree this closely
  std::uint64_t seed = 0x5cd;  // restart k starts from derive_seed(seed, k)
  /// Vary only the first site's unitary. Exact for maximally entangled
  /// bipartite targets since (U1 (x) U2)|Phi> = (U1 U2^T (x) I)|Phi>.
  bool one_sided = false;
  /// Serial restart loop (reference path); results are identical either way.
  bool serial = false;
};

struct RangeResult {
  EnergyRange range;
  LocalUnitarySet argmin;
  LocalUnitarySet argmax;
  int restarts_used = 0;
  bool converged = false;
};

/// Multi-start simplex search for min and max of target_energy.
/// Throws std::logic_error if the result escapes the spectrum of H.
RangeResult target_energy_range(const ModelSpec& spec, const QuantumState& target, const RangeOptions& opts = {});

struct WRangePoint {
  double g = 0.0;
  RangeResult result;
  EnergyRange state_bounds;
  bool strict_subset = false;  // strictly inside the spectrum on at least one side
};

/// W-state target range of the three-site ring for each field value.
std::vector<WRangePoint> w_class_target_range(const ModelSpec& ring, const std::vector<double>& g_grid,
                                              const RangeOptions& opts = {});

/// Analytic range when available, otherwise the optimizer (throws NonConvergenceError if it did not converge).
EnergyRange resolve_target_range(const ModelSpec& spec, TargetName target, const RangeOptions& opts = {});

}  // namespace scd
