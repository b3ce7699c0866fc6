#include "scd/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace scd {

namespace {

struct Simplex {
  std::vector<std::vector<double>> points;
  std::vector<double> values;
};

// One simplex run; returns iterations spent.
int run_simplex(const Objective& f, Simplex& s, double tol, int budget, bool& converged) {
  const std::size_t n = s.points.front().size();
  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto eval_along = [&](double t, std::vector<double>& out, std::size_t worst) {
    for (std::size_t i = 0; i < n; ++i) out[i] = centroid[i] + t * (s.points[worst][i] - centroid[i]);
    return f(out);
  };
  converged = false;
  int it = 0;
  for (; it < budget; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
    if (std::abs(s.values[worst] - s.values[best]) <= tol) {
      converged = true;
      break;
    }
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k <= n; ++k)
      if (k != worst)
        for (std::size_t i = 0; i < n; ++i) centroid[i] += s.points[k][i] / static_cast<double>(n);

    const double fr = eval_along(-1.0, trial, worst);
    if (fr < s.values[best]) {
      const double fe = eval_along(-2.0, trial2, worst);
      if (fe < fr) {
        s.points[worst] = trial2;
        s.values[worst] = fe;
      } else {
        s.points[worst] = trial;
        s.values[worst] = fr;
      }
      continue;
    }
    if (fr < s.values[second]) {
      s.points[worst] = trial;
      s.values[worst] = fr;
      continue;
    }
    const bool outside = fr < s.values[worst];
    const double fc = eval_along(outside ? -0.5 : 0.5, trial2, worst);
    if (fc < (outside ? fr : s.values[worst])) {
      s.points[worst] = trial2;
      s.values[worst] = fc;
      continue;
    }
    // shrink towards the best vertex
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == best) continue;
      for (std::size_t i = 0; i < n; ++i) s.points[k][i] = s.points[best][i] + 0.5 * (s.points[k][i] - s.points[best][i]);
      s.values[k] = f(s.points[k]);
    }
  }
  return it;
}

Simplex simplex_around(const Objective& f, const std::vector<double>& x0, double step) {
  Simplex s;
  s.points.push_back(x0);
  for (std::size_t i = 0; i < x0.size(); ++i) {
    auto p = x0;
    p[i] += step;
    s.points.push_back(std::move(p));
  }
  for (const auto& p : s.points) s.values.push_back(f(p));
  return s;
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opts) {
  NelderMeadResult result;
  result.x = std::move(x0);
  result.value = f(result.x);
  if (result.x.empty()) {
    result.converged = true;
    return result;
  }
  double step = opts.initial_step;
  for (int round = 0; round <= opts.max_refinements; ++round) {
    const int budget = opts.max_iterations - result.iterations;
    if (budget <= 0) break;
    Simplex s = simplex_around(f, result.x, step);
    bool simplex_converged = false;
    result.iterations += run_simplex(f, s, opts.tolerance, budget, simplex_converged);
    const auto best = static_cast<std::size_t>(std::min_element(s.values.begin(), s.values.end()) - s.values.begin());
    const double improvement = result.value - s.values[best];
    if (s.values[best] < result.value) {
      result.value = s.values[best];
      result.x = s.points[best];
    }
    if (!simplex_converged) break;
    if (round > 0 && improvement <= opts.tolerance) {
      result.converged = true;
      break;
    }
    step = std::max(0.1 * step, 1e-4);
  }
  return result;
}

}  // namespace scd
