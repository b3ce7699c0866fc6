#include "scd/distill.hpp"

#include <algorithm>
#include <cmath>

namespace scd {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Distillable:
      return "distillable";
    case Verdict::Undistillable:
      return "undistillable";
    case Verdict::Unknown:
      break;
  }
  return "unknown";
}

std::string_view to_string(ScdVerdict v) {
  switch (v) {
    case ScdVerdict::SCD:
      return "SCD";
    case ScdVerdict::NotSCD:
      return "not-SCD";
    case ScdVerdict::Unknown:
      break;
  }
  return "unknown";
}

double average_energy(const QuantumState& state, const ComplexMatrix& h) {
  if (state.dim() != h.dim()) throw std::invalid_argument("average_energy: state and Hamiltonian dimensions differ");
  if (state.is_pure()) return expectation(h, state.amplitudes()).real();
  return trace_product(h, state.density()).real();
}

double average_energy(const QuantumState& state, const ModelSpec& spec) {
  if (state.dims() != site_dims(spec)) throw std::invalid_argument("average_energy: state dims do not match the model");
  return average_energy(state, build(spec));
}

bool wcec_satisfied(double energy, const EnergyRange& target_range) {
  return target_range.contains(energy, kEnergyTolerance);
}

bool wcec_satisfied(const QuantumState& state, const ComplexMatrix& h, const EnergyRange& target_range) {
  return wcec_satisfied(average_energy(state, h), target_range);
}

bool wcec_satisfied(const QuantumState& state, const ModelSpec& spec, const EnergyRange& target_range) {
  return wcec_satisfied(average_energy(state, spec), target_range);
}

namespace {

constexpr double kWitnessTolerance = 1e-10;

// Coefficient matrix C with psi = sum_ij C_ij |i>|j>; reduced state on the first factor is C C^dagger.
ComplexMatrix reduced_first(const CVector& psi, std::size_t da, std::size_t db) {
  ComplexMatrix r(da);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = i; j < da; ++j) {
      cplx acc = 0;
      for (std::size_t k = 0; k < db; ++k) acc += psi[i * db + k] * std::conj(psi[j * db + k]);
      r(i, j) = acc;
      r(j, i) = std::conj(acc);
    }
  for (std::size_t i = 0; i < da; ++i) r(i, i) = r(i, i).real();
  return r;
}

DistillabilityVerdict pure_bipartite(const CVector& psi, const Dims& dims) {
  // Schmidt probabilities from the smaller reduced state.
  std::vector<double> lambdas;
  if (dims[0] <= dims[1]) {
    lambdas = hermitian_eigenvalues(reduced_first(psi, dims[0], dims[1]));
  } else {
    CVector swapped(psi.size());
    for (std::size_t i = 0; i < dims[0]; ++i)
      for (std::size_t j = 0; j < dims[1]; ++j) swapped[j * dims[0] + i] = psi[i * dims[1] + j];
    lambdas = hermitian_eigenvalues(reduced_first(swapped, dims[1], dims[0]));
  }
  std::sort(lambdas.rbegin(), lambdas.rend());
  const double top = std::max(lambdas[0], 0.0);
  std::size_t rank = 0;
  for (double l : lambdas)
    if (std::sqrt(top * std::max(l, 0.0)) > kWitnessTolerance) ++rank;
  DistillabilityVerdict v;
  v.schmidt_rank = rank;
  // For a pure state the partial transpose has eigenvalues +-sqrt(l_i l_j); the most negative pairs the top two.
  v.min_pt_eigenvalue = -std::sqrt(top * std::max(lambdas[1], 0.0));
  v.verdict = rank >= 2 ? Verdict::Distillable : Verdict::Undistillable;
  return v;
}

DistillabilityVerdict three_qubit_pure(const CVector& psi) {
  const QuantumState s = QuantumState::pure_unchecked(psi, {2, 2, 2});
  const ComplexMatrix rho = s.density();
  DistillabilityVerdict v;
  v.verdict = Verdict::Distillable;
  for (std::size_t site = 0; site < 3; ++site) {
    const ComplexMatrix r = partial_trace(rho, {site});
    const double purity = trace_product(r, r).real();
    if (purity > 1.0 - 1e-10) v.verdict = Verdict::Undistillable;
  }
  return v;
}

}  // namespace

DistillabilityVerdict is_distillable(const QuantumState& state) {
  const Dims& dims = state.dims();
  std::optional<CVector> psi;
  if (state.is_pure()) {
    psi = state.amplitudes();
  } else if (state.rank_hint() == 1 || [&] {
               const ComplexMatrix rho = state.density();
               return trace_product(rho, rho).real() > 1.0 - 1e-10;
             }()) {
    const Spectrum s = hermitian_eig(state.density());
    CVector v(state.dim());
    for (std::size_t r = 0; r < v.size(); ++r) v[r] = s.eigenvectors(r, v.size() - 1);
    psi = std::move(v);
  }

  if (dims.size() == 2) {
    if (psi) return pure_bipartite(*psi, dims);
    DistillabilityVerdict v;
    v.min_pt_eigenvalue = hermitian_eigenvalues(partial_transpose(state.density(), 0)).front();
    const bool nppt = *v.min_pt_eigenvalue < -kWitnessTolerance;
    if (std::min(dims[0], dims[1]) == 2)
      v.verdict = nppt ? Verdict::Distillable : Verdict::Undistillable;
    else
      v.verdict = nppt ? Verdict::Unknown : Verdict::Undistillable;
    return v;
  }
  if (dims == Dims{2, 2, 2} && psi) return three_qubit_pure(*psi);
  return {};
}

ScdVerdict is_scd(const QuantumState& state, const ComplexMatrix& h, const EnergyRange& target_range) {
  if (!wcec_satisfied(state, h, target_range)) return ScdVerdict::NotSCD;
  switch (is_distillable(state).verdict) {
    case Verdict::Distillable:
      return ScdVerdict::SCD;
    case Verdict::Undistillable:
      return ScdVerdict::NotSCD;
    case Verdict::Unknown:
      break;
  }
  return ScdVerdict::Unknown;
}

ScdVerdict is_scd(const QuantumState& state, const ModelSpec& spec, const EnergyRange& target_range) {
  if (state.dims() != site_dims(spec)) throw std::invalid_argument("is_scd: state dims do not match the model");
  return is_scd(state, build(spec), target_range);
}

double concurrence(const QuantumState& state) {
  if (state.dims() != Dims{2, 2}) throw std::invalid_argument("concurrence: needs a two-qubit state");
  const ComplexMatrix rho = state.density();
  const ComplexMatrix yy = kron(pauli::y(), pauli::y());
  ComplexMatrix conj_rho(4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) conj_rho(r, c) = std::conj(rho(r, c));
  const ComplexMatrix flipped = yy * conj_rho * yy;
  // sqrt(rho) flipped sqrt(rho) is Hermitian with the same spectrum as rho * flipped.
  const ComplexMatrix root = spectral_function(rho, [](double x) { return std::sqrt(std::max(x, 0.0)); });
  ComplexMatrix m = root * flipped * root;
  m = 0.5 * (m + m.adjoint());
  auto ev = hermitian_eigenvalues(m);
  std::vector<double> l;
  for (double e : ev) l.push_back(std::sqrt(std::max(e, 0.0)));
  std::sort(l.rbegin(), l.rend());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

}  // namespace scd
