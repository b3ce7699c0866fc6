#pragma once

// Chunked sample loops. Sample i always belongs to chunk i / chunk_size and
// chunk c always draws from Rng(derive_seed(seed, c)), so the result is fixed
// by (seed, n, chunk_size) whatever the worker count. Partial results are
// folded in chunk order.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <omp.h>

#include "scd/rng.hpp"

namespace scd {

enum class Exec { Serial, Parallel };

struct McOptions {
  std::size_t n_samples = 100000;
  std::uint64_t seed = 1;
  Exec exec = Exec::Parallel;
  int workers = 0;  // 0: OpenMP default
  std::size_t chunk_size = 4096;
};

/// `kernel(rng, begin, end)` returns a partial accumulator; `Acc::merge` must be associative.
template <class Acc, class Kernel>
Acc run_chunks(const McOptions& opts, Acc init, Kernel&& kernel) {
  const std::size_t chunk = std::max<std::size_t>(opts.chunk_size, 1);
  const std::size_t n_chunks = (opts.n_samples + chunk - 1) / chunk;
  std::vector<Acc> partial(n_chunks, init);
  auto one = [&](std::size_t c) {
    Rng rng(derive_seed(opts.seed, c));
    const std::size_t begin = c * chunk;
    const std::size_t end = std::min(opts.n_samples, begin + chunk);
    partial[c] = kernel(rng, begin, end);
  };
  if (opts.exec == Exec::Serial) {
    for (std::size_t c = 0; c < n_chunks; ++c) one(c);
  } else {
    const int threads = opts.workers > 0 ? opts.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::size_t c = 0; c < n_chunks; ++c) one(c);
  }
  Acc total = init;
  for (const auto& p : partial) total.merge(p);
  return total;
}

}  // namespace scd
