#pragma once

#include <functional>
#include <span>
#include <vector>

namespace scd {

struct NelderMeadOptions {
  double tolerance = 1e-8;     // spread of simplex values at convergence
  int max_iterations = 5000;   // total over all refinement rounds
  double initial_step = 0.5;
  int max_refinements = 8;     // fresh simplices re-seeded at the incumbent
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Minimizes `f` from `x0`. After each converged simplex a new one is built
/// around the incumbent; this stops when a round improves by less than the tolerance.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opts = {});

}  // namespace scd
