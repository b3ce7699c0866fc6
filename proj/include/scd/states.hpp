#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "scd/hamiltonians.hpp"
#include "scd/rng.hpp"
#include "scd/tensor.hpp"
#include "scd/types.hpp"

namespace scd {

/// A user-supplied parameter tuple that does not describe a positive semidefinite state.
class InvalidStateError : public std::invalid_argument {
 public:
  InvalidStateError(const std::string& what, double offending_eigenvalue)
      : std::invalid_argument(what), eigenvalue_(offending_eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

/// Pure amplitude vector or density matrix over a tensor-product space.
class QuantumState {
 public:
  /// Validates unit norm within 1e-12.
  static QuantumState pure(CVector amplitudes, Dims dims);
  /// Validates trace 1 within 1e-12 and smallest eigenvalue >= -1e-10.
  static QuantumState mixed(ComplexMatrix rho, std::optional<std::size_t> rank_hint = std::nullopt);
  /// Skips validation; for samplers whose construction guarantees the invariants.
  static QuantumState pure_unchecked(CVector amplitudes, Dims dims);
  static QuantumState mixed_unchecked(ComplexMatrix rho, std::optional<std::size_t> rank_hint = std::nullopt);

  bool is_pure() const noexcept { return pure_; }
  const Dims& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return product(dims_); }
  std::optional<std::size_t> rank_hint() const noexcept { return rank_hint_; }

  /// Throws std::logic_error for a density-matrix representation.
  const CVector& amplitudes() const;
  /// The density matrix; formed on demand for pure states.
  ComplexMatrix density() const;

 private:
  bool pure_ = true;
  Dims dims_;
  CVector amplitudes_;
  ComplexMatrix rho_;
  std::optional<std::size_t> rank_hint_;
};

/// Haar pure state: normalized complex Gaussian amplitude vector.
QuantumState random_pure(const Dims& dims, Rng& rng);

/// Induced-measure state of the given rank: a Haar pure state on
/// system (x) ancilla(rank) with the ancilla traced out.
QuantumState random_mixed(const Dims& dims, std::size_t rank, Rng& rng);

/// (I + sum_a c_aa sigma^a (x) sigma^a) / 4.
QuantumState bell_diagonal(double cxx, double cyy, double czz);
/// Bell-basis eigenvalues (1 +- cxx +- cyy +- czz)/4 ordered psi-, phi+, phi-, psi+.
std::array<double, 4> bell_diagonal_eigenvalues(double cxx, double cyy, double czz);

/// Bell-diagonal state plus z magnetizations m1, m2 on the two qubits.
QuantumState magnetized_state(double cxx, double cyy, double czz, double m1, double m2);
/// Operator form of the above without the positivity check; used for classification scans.
ComplexMatrix magnetized_operator(double cxx, double cyy, double czz, double m1, double m2);

/// exp(-beta H/J) / Z, computed with a ground-energy shift so large beta stays finite.
QuantumState thermal_state(const ModelSpec& spec, double beta);

/// (a1 |000> + a2 |phi1 phi2 phi3>) / M.
QuantumState ghz_class_state(cplx a1, cplx a2, const std::array<std::array<cplx, 2>, 3>& phis);
/// a|001> + b|010> + c|100> + d|000>, normalized.
QuantumState w_class_state(cplx a, cplx b, cplx c, cplx d);

/// Complex Gaussian a1, a2 and independent Haar single-qubit phi_i; draws with M < 1e-8 are redrawn.
QuantumState ghz_class_sample(Rng& rng);
/// Complex Gaussian (a, b, c, d), normalized.
QuantumState w_class_sample(Rng& rng);

QuantumState target_state(TargetName name, std::size_t d = 2);

/// Sampler description; value type, cheap to copy into each worker.
struct StateSampler {
  enum class Kind { Pure, Mixed, GhzClass, WClass, BellDiagonal };
  Kind kind = Kind::Pure;
  Dims dims{2, 2};
  std::size_t rank = 1;

  static StateSampler pure(Dims dims) { return {Kind::Pure, std::move(dims), 1}; }
  static StateSampler mixed(Dims dims, std::size_t rank) { return {Kind::Mixed, std::move(dims), rank}; }
  static StateSampler ghz_class() { return {Kind::GhzClass, {2, 2, 2}, 1}; }
  static StateSampler w_class() { return {Kind::WClass, {2, 2, 2}, 1}; }
  /// Uniform over the physical tetrahedron of correlator triples.
  static StateSampler bell_diagonal() { return {Kind::BellDiagonal, {2, 2}, 4}; }

  QuantumState sample(Rng& rng) const;
  /// Target state a sample of this family is distilled towards.
  TargetName natural_target() const;
};

std::string_view to_string(StateSampler::Kind k);
StateSampler::Kind parse_sampler_kind(std::string_view s);

}  // namespace scd
