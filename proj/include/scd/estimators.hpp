#pragma once

// Monte Carlo estimators: distillability factor, energy histograms, the SCD
// probability p (direct count and via the independence assumption),
// per-energy-bin distillability, and the transverse/longitudinal difference.

#include <cstdint>
#include <vector>

#include "scd/distill.hpp"
#include "scd/monte_carlo.hpp"

namespace scd {

/// Uniform bins over [lo, hi]; out-of-range values are clamped into the end bins.
struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<std::uint64_t> counts;

  Histogram() = default;
  Histogram(double lo_, double hi_, std::size_t bins);

  std::size_t bins() const noexcept { return counts.size(); }
  double width() const noexcept { return (hi - lo) / static_cast<double>(counts.size()); }
  double edge(std::size_t k) const noexcept { return lo + width() * static_cast<double>(k); }
  std::size_t bin_of(double x) const noexcept;
  void add(double x) { ++counts[bin_of(x)]; }
  std::uint64_t total() const noexcept;
  /// Probability density per bin (integrates to 1).
  std::vector<double> density() const;
  /// Fraction of samples inside [range.lo, range.hi], partial end bins by linear interpolation.
  double mass_in(const EnergyRange& range) const;
  void merge(const Histogram& o);
};

struct MonteCarloReport {
  std::size_t n_samples = 0;
  std::uint64_t hits = 0;      // samples counted by the estimator (proportions)
  double estimate = 0.0;
  double std_error = 0.0;
  Histogram histogram;         // energies when the estimator evaluates them
  double mean_energy = 0.0;
  double energy_variance = 0.0;
  std::uint64_t seed = 0;
  double elapsed_seconds = 0.0;
};

/// sqrt(p (1 - p) / n)
double binomial_std_error(double p, std::size_t n);

/// Fraction of rank-r two-qubit induced-measure states that are distillable.
MonteCarloReport estimate_df(std::size_t rank, const McOptions& opts);

/// Histogram of average energies over [E1, E2] of the model. `estimate` is the mean energy.
MonteCarloReport energy_histogram(const StateSampler& sampler, const ModelSpec& spec, std::size_t bins,
                                  const McOptions& opts);

/// Direct fraction of SCD samples. Throws UnknownVerdictError if any sample has no verdict.
MonteCarloReport estimate_p(const StateSampler& sampler, const ModelSpec& spec, const EnergyRange& target_range,
                            const McOptions& opts, std::size_t bins = 200);

/// eta times the histogram mass inside the target range.
double p_via_independence(double eta, const Histogram& hist, const EnergyRange& target_range);

struct IndependenceBin {
  double lo = 0.0, hi = 0.0;
  std::uint64_t count = 0;
  std::uint64_t distillable = 0;
  double fraction = 0.0;       // NaN for empty bins
  bool empty = true;
  bool well_populated = false;
};

struct IndependenceTable {
  std::vector<IndependenceBin> bins;
  double eta = 0.0;
  double eta_std_error = 0.0;
  double max_deviation = 0.0;  // over well-populated bins
  std::uint64_t min_count = 0; // threshold for well-populated
  std::size_t n_samples = 0;
};

IndependenceTable independence_check(std::size_t rank, const ModelSpec& spec, std::size_t bins, const McOptions& opts,
                                     std::uint64_t min_count = 10000);

struct IndependenceComparison {
  double p_direct = 0.0;
  double p_direct_std_error = 0.0;
  double p_independence = 0.0;
  double p_independence_std_error = 0.0;  // delta method over eta and the in-range mass
  double combined_sigma = 0.0;
  double eta = 0.0;
  double mass_in_range = 0.0;
};

/// Histogram mass of the table's energy bins inside the target range, times eta.
Histogram histogram_of(const IndependenceTable& table);

/// p from the independence assumption (table) against a direct count (report); the two
/// should come from independent sample streams.
IndependenceComparison compare_independence(const IndependenceTable& table, const MonteCarloReport& direct,
                                            const EnergyRange& target_range);

struct DeltaPReport {
  double p_transverse = 0.0;
  double p_longitudinal = 0.0;
  double delta = 0.0;
  double std_error = 0.0;  // of the paired difference
  std::size_t n_samples = 0;
};

/// p(transverse XY) - p(longitudinal XY) on the same pure-state stream.
DeltaPReport delta_p(double gamma, double g, const McOptions& opts);

}  // namespace scd
