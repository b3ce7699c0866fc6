#pragma once

// Per-state decisions: energy, the weak canonical energy constraint,
// distillability, special canonical distillability, concurrence.

#include <optional>

#include "scd/hamiltonians.hpp"
#include "scd/states.hpp"
#include "scd/types.hpp"

namespace scd {

/// Absolute slack on interval membership of energies.
inline constexpr double kEnergyTolerance = 1e-9;

enum class Verdict { Distillable, Undistillable, Unknown };

struct DistillabilityVerdict {
  Verdict verdict = Verdict::Unknown;
  std::optional<double> min_pt_eigenvalue;  // witness for 2 (x) d states
  std::optional<std::size_t> schmidt_rank;  // witness for pure bipartite states
};

enum class ScdVerdict { SCD, NotSCD, Unknown };

std::string_view to_string(Verdict v);
std::string_view to_string(ScdVerdict v);

/// tr(H rho) for an already-built H/J.
double average_energy(const QuantumState& state, const ComplexMatrix& h);
double average_energy(const QuantumState& state, const ModelSpec& spec);

bool wcec_satisfied(double energy, const EnergyRange& target_range);
bool wcec_satisfied(const QuantumState& state, const ComplexMatrix& h, const EnergyRange& target_range);
bool wcec_satisfied(const QuantumState& state, const ModelSpec& spec, const EnergyRange& target_range);

/// Pure bipartite: Schmidt rank >= 2. Any 2 (x) d state: negative partial transpose.
/// Three-qubit pure: entangled across every single-site cut. Mixed d (x) d with
/// d > 2: PPT means undistillable, NPPT is Unknown.
DistillabilityVerdict is_distillable(const QuantumState& state);

ScdVerdict is_scd(const QuantumState& state, const ComplexMatrix& h, const EnergyRange& target_range);
ScdVerdict is_scd(const QuantumState& state, const ModelSpec& spec, const EnergyRange& target_range);

/// Wootters concurrence of a two-qubit state.
double concurrence(const QuantumState& state);

}  // namespace scd
