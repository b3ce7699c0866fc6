#include "scd/states.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace scd {

QuantumState QuantumState::pure(CVector amplitudes, Dims dims) {
  if (product(dims) != amplitudes.size()) throw std::invalid_argument("pure state: dims do not match amplitude count");
  if (std::abs(norm(amplitudes) - 1.0) > 1e-12) throw std::invalid_argument("pure state: amplitudes are not normalized");
  return pure_unchecked(std::move(amplitudes), std::move(dims));
}

QuantumState QuantumState::pure_unchecked(CVector amplitudes, Dims dims) {
  QuantumState s;
  s.pure_ = true;
  s.dims_ = std::move(dims);
  s.amplitudes_ = std::move(amplitudes);
  s.rank_hint_ = 1;
  return s;
}

QuantumState QuantumState::mixed(ComplexMatrix rho, std::optional<std::size_t> rank_hint) {
  if (rho.subsystem_dims().empty()) throw std::invalid_argument("mixed state: subsystem dims required");
  if (std::abs(rho.trace() - cplx(1.0)) > 1e-12) throw std::invalid_argument("mixed state: trace is not 1");
  const auto ev = hermitian_eigenvalues(rho);
  if (ev.front() < -1e-10)
    throw InvalidStateError(fmt::format("mixed state: negative eigenvalue {:.3e}", ev.front()), ev.front());
  return mixed_unchecked(std::move(rho), rank_hint);
}

QuantumState QuantumState::mixed_unchecked(ComplexMatrix rho, std::optional<std::size_t> rank_hint) {
  QuantumState s;
  s.pure_ = false;
  s.dims_ = rho.subsystem_dims();
  s.rho_ = std::move(rho);
  s.rank_hint_ = rank_hint;
  return s;
}

const CVector& QuantumState::amplitudes() const {
  if (!pure_) throw std::logic_error("state is stored as a density matrix");
  return amplitudes_;
}

ComplexMatrix QuantumState::density() const {
  if (pure_) return ComplexMatrix::outer(amplitudes_, dims_);
  return rho_;
}

namespace {

void normalize(CVector& v) {
  const double n = norm(v);
  for (auto& x : v) x /= n;
}

}  // namespace

QuantumState random_pure(const Dims& dims, Rng& rng) {
  for (auto d : dims)
    if (d < 2) throw std::invalid_argument("random_pure: every dimension must be >= 2");
  CVector v(product(dims));
  for (auto& x : v) x = rng.complex_normal();
  normalize(v);
  return QuantumState::pure_unchecked(std::move(v), dims);
}

QuantumState random_mixed(const Dims& dims, std::size_t rank, Rng& rng) {
  const std::size_t n = product(dims);
  if (rank < 1 || rank > n) throw std::invalid_argument("random_mixed: rank must lie in [1, dim]");
  // Row i of g holds the ancilla amplitudes of system basis state i, so
  // tracing out the ancilla is rho = g g^dagger.
  std::vector<cplx> g(n * rank);
  for (auto& x : g) x = rng.complex_normal();
  ComplexMatrix rho(n, dims);
  double tr = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      cplx acc = 0;
      for (std::size_t k = 0; k < rank; ++k) acc += g[i * rank + k] * std::conj(g[j * rank + k]);
      rho(i, j) = acc;
      rho(j, i) = std::conj(acc);
    }
    rho(i, i) = rho(i, i).real();
    tr += rho(i, i).real();
  }
  rho *= 1.0 / tr;
  return QuantumState::mixed_unchecked(std::move(rho), rank);
}

std::array<double, 4> bell_diagonal_eigenvalues(double cxx, double cyy, double czz) {
  return {(1 - cxx - cyy - czz) / 4, (1 + cxx - cyy + czz) / 4, (1 - cxx + cyy + czz) / 4,
          (1 + cxx + cyy - czz) / 4};
}

ComplexMatrix magnetized_operator(double cxx, double cyy, double czz, double m1, double m2) {
  const auto x = pauli::x(), y = pauli::y(), z = pauli::z(), id = pauli::id();
  ComplexMatrix rho = kron(id, id) + cxx * kron(x, x) + cyy * kron(y, y) + czz * kron(z, z) + m1 * kron(z, id) +
                      m2 * kron(id, z);
  rho *= 0.25;
  rho.set_subsystem_dims({2, 2});
  return rho;
}

QuantumState bell_diagonal(double cxx, double cyy, double czz) {
  for (double c : {cxx, cyy, czz})
    if (!(std::abs(c) <= 1.0)) throw std::invalid_argument("bell_diagonal: correlators must lie in [-1, 1]");
  const auto ev = bell_diagonal_eigenvalues(cxx, cyy, czz);
  const double lowest = *std::min_element(ev.begin(), ev.end());
  if (lowest < -1e-12)
    throw InvalidStateError(
        fmt::format("correlators ({}, {}, {}) lie outside the physical tetrahedron: eigenvalue {}", cxx, cyy, czz, lowest),
        lowest);
  return QuantumState::mixed_unchecked(magnetized_operator(cxx, cyy, czz, 0, 0));
}

QuantumState magnetized_state(double cxx, double cyy, double czz, double m1, double m2) {
  for (double c : {cxx, cyy, czz, m1, m2})
    if (!(std::abs(c) <= 1.0)) throw std::invalid_argument("magnetized_state: parameters must lie in [-1, 1]");
  ComplexMatrix rho = magnetized_operator(cxx, cyy, czz, m1, m2);
  const double lowest = hermitian_eigenvalues(rho).front();
  if (lowest < -1e-12)
    throw InvalidStateError(fmt::format("magnetized state is not positive: eigenvalue {}", lowest), lowest);
  return QuantumState::mixed_unchecked(std::move(rho));
}

QuantumState thermal_state(const ModelSpec& spec, double beta) {
  if (!(beta >= 0) || !std::isfinite(beta)) throw std::invalid_argument("thermal_state: beta must be finite and >= 0");
  const ComplexMatrix h = build(spec);
  if (beta == 0.0) {
    ComplexMatrix rho = ComplexMatrix::identity(h.dim(), h.subsystem_dims());
    rho *= 1.0 / static_cast<double>(h.dim());
    return QuantumState::mixed_unchecked(std::move(rho));
  }
  const Spectrum s = hermitian_eig(h);
  const double e0 = s.eigenvalues.front();
  double z = 0;
  for (double e : s.eigenvalues) z += std::exp(-beta * (e - e0));
  ComplexMatrix rho = spectral_function(s, [&](double e) { return std::exp(-beta * (e - e0)) / z; });
  rho.set_subsystem_dims(h.subsystem_dims());
  return QuantumState::mixed_unchecked(std::move(rho));
}

namespace {

CVector ghz_amplitudes(cplx a1, cplx a2, const std::array<std::array<cplx, 2>, 3>& phis) {
  CVector v(8);
  v[0] = a1;
  for (std::size_t idx = 0; idx < 8; ++idx) {
    cplx amp = a2;
    for (std::size_t site = 0; site < 3; ++site) amp *= phis[site][(idx >> (2 - site)) & 1];
    v[idx] += amp;
  }
  return v;
}

}  // namespace

QuantumState ghz_class_state(cplx a1, cplx a2, const std::array<std::array<cplx, 2>, 3>& phis) {
  CVector v = ghz_amplitudes(a1, a2, phis);
  const double m = norm(v);
  if (m < 1e-8) throw std::invalid_argument("ghz_class_state: degenerate coefficients");
  for (auto& x : v) x /= m;
  return QuantumState::pure_unchecked(std::move(v), {2, 2, 2});
}

QuantumState w_class_state(cplx a, cplx b, cplx c, cplx d) {
  CVector v(8);
  v[0b001] = a;
  v[0b010] = b;
  v[0b100] = c;
  v[0b000] = d;
  const double m = norm(v);
  if (m == 0.0) throw std::invalid_argument("w_class_state: all coefficients vanish");
  for (auto& x : v) x /= m;
  return QuantumState::pure_unchecked(std::move(v), {2, 2, 2});
}

QuantumState ghz_class_sample(Rng& rng) {
  while (true) {
    const cplx a1 = rng.complex_normal(), a2 = rng.complex_normal();
    std::array<std::array<cplx, 2>, 3> phis;
    for (auto& phi : phis) {
      phi = {rng.complex_normal(), rng.complex_normal()};
      const double n = std::sqrt(std::norm(phi[0]) + std::norm(phi[1]));
      phi[0] /= n;
      phi[1] /= n;
    }
    if (norm(ghz_amplitudes(a1, a2, phis)) >= 1e-8) return ghz_class_state(a1, a2, phis);
  }
}

QuantumState w_class_sample(Rng& rng) {
  const cplx a = rng.complex_normal(), b = rng.complex_normal(), c = rng.complex_normal(), d = rng.complex_normal();
  return w_class_state(a, b, c, d);
}

QuantumState target_state(TargetName name, std::size_t d) {
  switch (name) {
    case TargetName::PsiMinus: {
      const double r = 1.0 / std::sqrt(2.0);
      return QuantumState::pure_unchecked({0.0, r, -r, 0.0}, {2, 2});
    }
    case TargetName::PhiD: {
      if (d < 2) throw std::invalid_argument("phi_d needs d >= 2");
      CVector v(d * d);
      for (std::size_t i = 0; i < d; ++i) v[i * d + i] = 1.0 / std::sqrt(static_cast<double>(d));
      return QuantumState::pure_unchecked(std::move(v), {d, d});
    }
    case TargetName::Ghz3: {
      CVector v(8);
      v[0] = v[7] = 1.0 / std::sqrt(2.0);
      return QuantumState::pure_unchecked(std::move(v), {2, 2, 2});
    }
    case TargetName::W3: {
      CVector v(8);
      v[1] = v[2] = v[4] = 1.0 / std::sqrt(3.0);
      return QuantumState::pure_unchecked(std::move(v), {2, 2, 2});
    }
  }
  throw std::invalid_argument("unknown target state");
}

QuantumState StateSampler::sample(Rng& rng) const {
  switch (kind) {
    case Kind::Pure:
      return random_pure(dims, rng);
    case Kind::Mixed:
      return random_mixed(dims, rank, rng);
    case Kind::GhzClass:
      return ghz_class_sample(rng);
    case Kind::WClass:
      return w_class_sample(rng);
    case Kind::BellDiagonal:
      while (true) {
        const double cxx = rng.uniform(-1, 1), cyy = rng.uniform(-1, 1), czz = rng.uniform(-1, 1);
        const auto ev = bell_diagonal_eigenvalues(cxx, cyy, czz);
        if (*std::min_element(ev.begin(), ev.end()) >= 0) return scd::bell_diagonal(cxx, cyy, czz);
      }
  }
  throw std::invalid_argument("unknown sampler kind");
}

TargetName StateSampler::natural_target() const {
  switch (kind) {
    case Kind::GhzClass:
      return TargetName::Ghz3;
    case Kind::WClass:
      return TargetName::W3;
    default:
      return dims.size() == 2 && dims[0] == 2 && dims[1] == 2 ? TargetName::PsiMinus : TargetName::PhiD;
  }
}

namespace {
constexpr std::array<std::pair<StateSampler::Kind, std::string_view>, 5> kSamplerNames{{
    {StateSampler::Kind::Pure, "pure"},
    {StateSampler::Kind::Mixed, "mixed"},
    {StateSampler::Kind::GhzClass, "ghz_class"},
    {StateSampler::Kind::WClass, "w_class"},
    {StateSampler::Kind::BellDiagonal, "bell_diagonal"},
}};
constexpr std::array<std::pair<TargetName, std::string_view>, 4> kTargetNames{{
    {TargetName::PsiMinus, "psi_minus"},
    {TargetName::PhiD, "phi_d"},
    {TargetName::Ghz3, "ghz3"},
    {TargetName::W3, "w3"},
}};
}  // namespace

std::string_view to_string(StateSampler::Kind k) {
  for (const auto& [kind, name] : kSamplerNames)
    if (kind == k) return name;
  return "?";
}

StateSampler::Kind parse_sampler_kind(std::string_view s) {
  for (const auto& [kind, name] : kSamplerNames)
    if (name == s) return kind;
  throw std::invalid_argument("unknown sampler '" + std::string(s) + "'");
}

std::string_view to_string(TargetName t) {
  for (const auto& [target, name] : kTargetNames)
    if (target == t) return name;
  return "?";
}

TargetName parse_target(std::string_view s) {
  for (const auto& [target, name] : kTargetNames)
    if (name == s) return target;
  throw std::invalid_argument("unknown target state '" + std::string(s) + "'");
}

}  // namespace scd
