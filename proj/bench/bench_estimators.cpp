// Serial reference loop vs OpenMP chunks on the same estimators.
// Prints wall time per path and checks the two results agree bit for bit.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include <omp.h>

#include "scd/estimators.hpp"
#include "scd/range_optimizer.hpp"

using namespace scd;

namespace {

double time_it(const std::function<void()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200000;
  std::printf("threads available: %d, samples: %zu\n", omp_get_max_threads(), n);
  bool all_equal = true;

  McOptions serial;
  serial.n_samples = n;
  serial.exec = Exec::Serial;
  McOptions parallel = serial;
  parallel.exec = Exec::Parallel;

  MonteCarloReport a, b;
  double ts = time_it([&] { a = estimate_df(4, serial); });
  double tp = time_it([&] { b = estimate_df(4, parallel); });
  std::printf("estimate_df(rank 4)      serial %.3fs  parallel %.3fs  speedup %.2f  eta %.5f %s\n", ts, tp, ts / tp,
              a.estimate, a.hits == b.hits ? "match" : "MISMATCH");
  all_equal &= a.hits == b.hits;

  const ModelSpec xy = ModelSpec::transverse_xy(1.0, 1.0);
  const EnergyRange tr = resolve_target_range(xy, TargetName::PsiMinus);
  ts = time_it([&] { a = estimate_p(StateSampler::pure({2, 2}), xy, tr, serial); });
  tp = time_it([&] { b = estimate_p(StateSampler::pure({2, 2}), xy, tr, parallel); });
  std::printf("estimate_p(pure, XY g=1) serial %.3fs  parallel %.3fs  speedup %.2f  p %.5f %s\n", ts, tp, ts / tp,
              a.estimate, a.hits == b.hits && a.histogram.counts == b.histogram.counts ? "match" : "MISMATCH");
  all_equal &= a.hits == b.hits && a.histogram.counts == b.histogram.counts;

  RangeOptions ro;
  ro.serial = true;
  RangeResult ra, rb;
  const ModelSpec ring = ModelSpec::ring_xy(3, 1.0, 0.5);
  const QuantumState w = target_state(TargetName::W3);
  ts = time_it([&] { ra = target_energy_range(ring, w, ro); });
  ro.serial = false;
  tp = time_it([&] { rb = target_energy_range(ring, w, ro); });
  const bool same = ra.range.lo == rb.range.lo && ra.range.hi == rb.range.hi;
  std::printf("target_energy_range(W3)  serial %.3fs  parallel %.3fs  speedup %.2f  %s\n", ts, tp, ts / tp,
              same ? "match" : "MISMATCH");
  all_equal &= same;
  return all_equal ? 0 : 1;
}
