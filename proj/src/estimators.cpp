#include "scd/estimators.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "scd/range_optimizer.hpp"

namespace scd {

Histogram::Histogram(double lo_, double hi_, std::size_t bins) : lo(lo_), hi(hi_), counts(bins, 0) {
  if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
  if (!(hi > lo)) hi = lo + 1e-12;
}

std::size_t Histogram::bin_of(double x) const noexcept {
  const double t = (x - lo) / (hi - lo) * static_cast<double>(counts.size());
  if (!(t > 0)) return 0;
  return std::min(counts.size() - 1, static_cast<std::size_t>(t));
}

std::uint64_t Histogram::total() const noexcept {
  std::uint64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

std::vector<double> Histogram::density() const {
  const double n = static_cast<double>(total());
  std::vector<double> d(counts.size(), 0.0);
  if (n == 0) return d;
  for (std::size_t k = 0; k < counts.size(); ++k) d[k] = static_cast<double>(counts[k]) / (n * width());
  return d;
}

double Histogram::mass_in(const EnergyRange& range) const {
  const double n = static_cast<double>(total());
  if (n == 0) return 0.0;
  double mass = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double a = edge(k), b = edge(k + 1);
    const double overlap = std::min(b, range.hi) - std::max(a, range.lo);
    if (overlap <= 0) continue;
    mass += static_cast<double>(counts[k]) * std::min(1.0, overlap / (b - a));
  }
  return mass / n;
}

void Histogram::merge(const Histogram& o) {
  if (counts.empty()) {
    *this = o;
    return;
  }
  if (o.counts.empty()) return;
  if (o.counts.size() != counts.size() || o.lo != lo || o.hi != hi)
    throw std::invalid_argument("histogram merge: binning differs");
  for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += o.counts[k];
}

double binomial_std_error(double p, std::size_t n) {
  if (n == 0) return 0.0;
  return std::sqrt(std::max(0.0, p * (1 - p)) / static_cast<double>(n));
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct CountAcc {
  std::uint64_t hits = 0;
  std::uint64_t unknown = 0;
  Histogram hist;
  double sum = 0.0;
  double sum_sq = 0.0;

  void merge(const CountAcc& o) {
    hits += o.hits;
    unknown += o.unknown;
    hist.merge(o.hist);
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
};

void finish_energy_stats(MonteCarloReport& r, const CountAcc& acc) {
  const double n = static_cast<double>(r.n_samples);
  if (n == 0) return;
  r.mean_energy = acc.sum / n;
  r.energy_variance = n > 1 ? std::max(0.0, (acc.sum_sq - n * r.mean_energy * r.mean_energy) / (n - 1)) : 0.0;
  r.histogram = acc.hist;
}

}  // namespace

MonteCarloReport estimate_df(std::size_t rank, const McOptions& opts) {
  if (rank < 1 || rank > 4) throw std::invalid_argument("estimate_df: two-qubit rank must be in [1, 4]");
  const auto t0 = Clock::now();
  const StateSampler sampler = StateSampler::mixed({2, 2}, rank);
  const CountAcc acc = run_chunks(opts, CountAcc{}, [&](Rng& rng, std::size_t begin, std::size_t end) {
    CountAcc a;
    for (std::size_t i = begin; i < end; ++i)
      if (is_distillable(sampler.sample(rng)).verdict == Verdict::Distillable) ++a.hits;
    return a;
  });
  MonteCarloReport r;
  r.n_samples = opts.n_samples;
  r.hits = acc.hits;
  r.estimate = static_cast<double>(acc.hits) / static_cast<double>(opts.n_samples);
  r.std_error = binomial_std_error(r.estimate, opts.n_samples);
  r.seed = opts.seed;
  r.elapsed_seconds = seconds_since(t0);
  return r;
}

MonteCarloReport energy_histogram(const StateSampler& sampler, const ModelSpec& spec, std::size_t bins,
                                  const McOptions& opts) {
  if (bins < 10) throw std::invalid_argument("energy_histogram: need at least 10 bins");
  const auto t0 = Clock::now();
  const ComplexMatrix h = build(spec);
  const EnergyRange bounds = state_energy_bounds(spec);
  CountAcc init;
  init.hist = Histogram(bounds.lo, bounds.hi, bins);
  const CountAcc acc = run_chunks(opts, init, [&](Rng& rng, std::size_t begin, std::size_t end) {
    CountAcc a = init;
    for (std::size_t i = begin; i < end; ++i) {
      const double e = average_energy(sampler.sample(rng), h);
      a.hist.add(e);
      a.sum += e;
      a.sum_sq += e * e;
    }
    return a;
  });
  MonteCarloReport r;
  r.n_samples = opts.n_samples;
  r.seed = opts.seed;
  finish_energy_stats(r, acc);
  r.estimate = r.mean_energy;
  r.std_error = std::sqrt(r.energy_variance / static_cast<double>(std::max<std::size_t>(r.n_samples, 1)));
  r.elapsed_seconds = seconds_since(t0);
  return r;
}

MonteCarloReport estimate_p(const StateSampler& sampler, const ModelSpec& spec, const EnergyRange& target_range,
                            const McOptions& opts, std::size_t bins) {
  if (sampler.dims != site_dims(spec)) throw std::invalid_argument("estimate_p: sampler dims do not match the model");
  const auto t0 = Clock::now();
  const ComplexMatrix h = build(spec);
  const EnergyRange bounds = state_energy_bounds(spec);
  CountAcc init;
  init.hist = Histogram(bounds.lo, bounds.hi, bins);
  const CountAcc acc = run_chunks(opts, init, [&](Rng& rng, std::size_t begin, std::size_t end) {
    CountAcc a = init;
    for (std::size_t i = begin; i < end; ++i) {
      const QuantumState s = sampler.sample(rng);
      const double e = average_energy(s, h);
      a.hist.add(e);
      a.sum += e;
      a.sum_sq += e * e;
      if (!wcec_satisfied(e, target_range)) continue;
      switch (is_distillable(s).verdict) {
        case Verdict::Distillable:
          ++a.hits;
          break;
        case Verdict::Unknown:
          ++a.unknown;
          break;
        case Verdict::Undistillable:
          break;
      }
    }
    return a;
  });
  if (acc.unknown > 0)
    throw UnknownVerdictError("estimate_p: " + std::to_string(acc.unknown) +
                              " samples have no distillability verdict for this sampler family");
  MonteCarloReport r;
  r.n_samples = opts.n_samples;
  r.hits = acc.hits;
  r.estimate = static_cast<double>(acc.hits) / static_cast<double>(opts.n_samples);
  r.std_error = binomial_std_error(r.estimate, opts.n_samples);
  r.seed = opts.seed;
  finish_energy_stats(r, acc);
  r.elapsed_seconds = seconds_since(t0);
  return r;
}

double p_via_independence(double eta, const Histogram& hist, const EnergyRange& target_range) {
  return eta * hist.mass_in(target_range);
}

IndependenceTable independence_check(std::size_t rank, const ModelSpec& spec, std::size_t bins, const McOptions& opts,
                                     std::uint64_t min_count) {
  if (site_dims(spec) != Dims{2, 2}) throw std::invalid_argument("independence_check: needs a two-qubit model");
  if (rank < 2 || rank > 4) throw std::invalid_argument("independence_check: rank must be 2, 3 or 4");
  const ComplexMatrix h = build(spec);
  const EnergyRange bounds = state_energy_bounds(spec);
  const StateSampler sampler = StateSampler::mixed({2, 2}, rank);

  struct Acc {
    Histogram all, distillable;
    void merge(const Acc& o) {
      all.merge(o.all);
      distillable.merge(o.distillable);
    }
  };
  const Acc init{Histogram(bounds.lo, bounds.hi, bins), Histogram(bounds.lo, bounds.hi, bins)};
  const Acc acc = run_chunks(opts, init, [&](Rng& rng, std::size_t begin, std::size_t end) {
    Acc a = init;
    for (std::size_t i = begin; i < end; ++i) {
      const QuantumState s = sampler.sample(rng);
      const double e = average_energy(s, h);
      a.all.add(e);
      if (is_distillable(s).verdict == Verdict::Distillable) a.distillable.add(e);
    }
    return a;
  });

  IndependenceTable t;
  t.n_samples = opts.n_samples;
  t.min_count = min_count;
  t.eta = static_cast<double>(acc.distillable.total()) / static_cast<double>(opts.n_samples);
  t.eta_std_error = binomial_std_error(t.eta, opts.n_samples);
  for (std::size_t k = 0; k < bins; ++k) {
    IndependenceBin b;
    b.lo = acc.all.edge(k);
    b.hi = acc.all.edge(k + 1);
    b.count = acc.all.counts[k];
    b.distillable = acc.distillable.counts[k];
    b.empty = b.count == 0;
    b.fraction = b.empty ? std::numeric_limits<double>::quiet_NaN()
                         : static_cast<double>(b.distillable) / static_cast<double>(b.count);
    b.well_populated = b.count >= min_count;
    if (b.well_populated) t.max_deviation = std::max(t.max_deviation, std::abs(b.fraction - t.eta));
    t.bins.push_back(b);
  }
  return t;
}

Histogram histogram_of(const IndependenceTable& table) {
  if (table.bins.empty()) return {};
  Histogram h(table.bins.front().lo, table.bins.back().hi, table.bins.size());
  for (std::size_t k = 0; k < table.bins.size(); ++k) h.counts[k] = table.bins[k].count;
  return h;
}

IndependenceComparison compare_independence(const IndependenceTable& table, const MonteCarloReport& direct,
                                            const EnergyRange& target_range) {
  IndependenceComparison c;
  const Histogram h = histogram_of(table);
  c.eta = table.eta;
  c.mass_in_range = h.mass_in(target_range);
  c.p_independence = p_via_independence(table.eta, h, target_range);
  const double mass_se = binomial_std_error(c.mass_in_range, table.n_samples);
  c.p_independence_std_error = std::hypot(c.mass_in_range * table.eta_std_error, table.eta * mass_se);
  c.p_direct = direct.estimate;
  c.p_direct_std_error = direct.std_error;
  c.combined_sigma = std::hypot(c.p_direct_std_error, c.p_independence_std_error);
  return c;
}

DeltaPReport delta_p(double gamma, double g, const McOptions& opts) {
  const ModelSpec transverse = ModelSpec::transverse_xy(gamma, g);
  const ModelSpec longitudinal = ModelSpec::longitudinal_xy(gamma, g);
  const ComplexMatrix ht = build(transverse), hl = build(longitudinal);
  const EnergyRange rt = resolve_target_range(transverse, TargetName::PsiMinus);
  const EnergyRange rl = resolve_target_range(longitudinal, TargetName::PsiMinus);
  const StateSampler sampler = StateSampler::pure({2, 2});

  struct Acc {
    std::uint64_t t = 0, l = 0, both = 0;
    void merge(const Acc& o) {
      t += o.t;
      l += o.l;
      both += o.both;
    }
  };
  const Acc acc = run_chunks(opts, Acc{}, [&](Rng& rng, std::size_t begin, std::size_t end) {
    Acc a;
    for (std::size_t i = begin; i < end; ++i) {
      const QuantumState s = sampler.sample(rng);
      const bool in_t = wcec_satisfied(average_energy(s, ht), rt);
      const bool in_l = wcec_satisfied(average_energy(s, hl), rl);
      if (!in_t && !in_l) continue;
      if (is_distillable(s).verdict != Verdict::Distillable) continue;
      a.t += in_t;
      a.l += in_l;
      a.both += in_t && in_l;
    }
    return a;
  });
  DeltaPReport r;
  const double n = static_cast<double>(opts.n_samples);
  r.n_samples = opts.n_samples;
  r.p_transverse = static_cast<double>(acc.t) / n;
  r.p_longitudinal = static_cast<double>(acc.l) / n;
  r.delta = r.p_transverse - r.p_longitudinal;
  // paired differences d_i in {-1, 0, 1}; E[d^2] = P(exactly one)
  const double mean_sq = static_cast<double>(acc.t + acc.l - 2 * acc.both) / n;
  r.std_error = n > 1 ? std::sqrt(std::max(0.0, mean_sq - r.delta * r.delta) / n) : 0.0;
  return r;
}

}  // namespace scd
