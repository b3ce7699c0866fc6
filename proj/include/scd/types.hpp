#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scd {

/// Closed interval of dimensionless energies (Hamiltonian divided by J).
struct EnergyRange {
  double lo = 0.0;
  double hi = 0.0;

  EnergyRange() = default;
  EnergyRange(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo <= hi)) throw std::invalid_argument("EnergyRange: lo must not exceed hi");
  }

  double width() const noexcept { return hi - lo; }
  bool contains(double e, double tol = 0.0) const noexcept { return e >= lo - tol && e <= hi + tol; }
  bool contains(const EnergyRange& o, double tol = 0.0) const noexcept {
    return o.lo >= lo - tol && o.hi <= hi + tol;
  }
};

/// Target states that distillation aims at.
enum class TargetName { PsiMinus, PhiD, Ghz3, W3 };

std::string_view to_string(TargetName t);
TargetName parse_target(std::string_view s);

/// Raised when a Monte Carlo estimate would need a distillability verdict we cannot give.
class UnknownVerdictError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by callers that require a converged optimizer result.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace scd
