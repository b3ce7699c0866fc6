#include "scd/hamiltonians.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace scd {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 7> kFamilyNames{{
    {Family::NonInteracting, "NonInteracting"},
    {Family::MinimalInteraction, "MinimalInteraction"},
    {Family::TransverseXY, "TransverseXY"},
    {Family::LongitudinalXY, "LongitudinalXY"},
    {Family::XXZ, "XXZ"},
    {Family::BilinearBiquadratic, "BilinearBiquadratic"},
    {Family::RingXY, "RingXY"},
}};

bool is_unit(const Vec3& v) {
  return std::abs(std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]) - 1.0) <= 1e-12;
}

ComplexMatrix directed_spin(const SpinOperators& s, const Vec3& n) {
  return n[0] * s.x + n[1] * s.y + n[2] * s.z;
}

// (1+gamma)/2 XX + (1-gamma)/2 YY on sites (i, j).
ComplexMatrix xy_bond(double gamma, std::size_t i, std::size_t j, const Dims& dims) {
  const auto x = pauli::x(), y = pauli::y();
  return 0.5 * (1.0 + gamma) * embed_pair(x, i, x, j, dims) + 0.5 * (1.0 - gamma) * embed_pair(y, i, y, j, dims);
}

ComplexMatrix field_sum(const ComplexMatrix& op, const Dims& dims) {
  ComplexMatrix h(product(dims), dims);
  for (std::size_t k = 0; k < dims.size(); ++k) h += embed(op, k, dims);
  return h;
}

}  // namespace

std::string_view to_string(Family f) {
  for (const auto& [fam, name] : kFamilyNames)
    if (fam == f) return name;
  return "?";
}

Family parse_family(std::string_view s) {
  for (const auto& [fam, name] : kFamilyNames)
    if (name == s) return fam;
  throw std::invalid_argument("unknown model family '" + std::string(s) + "'");
}

ModelSpec ModelSpec::transverse_xy(double gamma, double g) {
  ModelSpec s;
  s.family = Family::TransverseXY;
  s.gamma = gamma;
  s.g = g;
  return s;
}

ModelSpec ModelSpec::longitudinal_xy(double gamma, double g) {
  ModelSpec s = transverse_xy(gamma, g);
  s.family = Family::LongitudinalXY;
  return s;
}

ModelSpec ModelSpec::xxz(double delta, double g) {
  ModelSpec s;
  s.family = Family::XXZ;
  s.delta = delta;
  s.g = g;
  return s;
}

ModelSpec ModelSpec::bilinear_biquadratic(double theta, double g) {
  ModelSpec s;
  s.family = Family::BilinearBiquadratic;
  s.theta = theta;
  s.g = g;
  s.local_dim = 3;
  return s;
}

ModelSpec ModelSpec::ring_xy(std::size_t n, double gamma, double g) {
  ModelSpec s;
  s.family = Family::RingXY;
  s.n_sites = n;
  s.gamma = gamma;
  s.g = g;
  return s;
}

ModelSpec ModelSpec::non_interacting(std::size_t d, Vec3 alpha, Vec3 beta, double g) {
  ModelSpec s;
  s.family = Family::NonInteracting;
  s.local_dim = d;
  s.alpha = alpha;
  s.beta = beta;
  s.g = g;
  return s;
}

ModelSpec ModelSpec::minimal_interaction(std::size_t d, Vec3 n1, Vec3 n2, Vec3 alpha, Vec3 beta, double g) {
  ModelSpec s = non_interacting(d, alpha, beta, g);
  s.family = Family::MinimalInteraction;
  s.n1 = n1;
  s.n2 = n2;
  return s;
}

void validate(const ModelSpec& spec) {
  for (double v : {spec.gamma, spec.g, spec.delta, spec.theta})
    if (!std::isfinite(v)) throw std::invalid_argument("model parameters must be finite");
  switch (spec.family) {
    case Family::NonInteracting:
    case Family::MinimalInteraction:
      if (spec.local_dim < 2) throw std::invalid_argument("local dimension must be >= 2");
      if (!is_unit(spec.alpha) || !is_unit(spec.beta)) throw std::invalid_argument("alpha and beta must be unit vectors");
      if (spec.family == Family::MinimalInteraction && (!is_unit(spec.n1) || !is_unit(spec.n2)))
        throw std::invalid_argument("n1 and n2 must be unit vectors");
      break;
    case Family::RingXY:
      // N = 2 would count the single bond twice on a ring.
      if (spec.n_sites < 3 || spec.n_sites > 10) throw std::invalid_argument("RingXY needs 3 <= N <= 10");
      break;
    default:
      break;
  }
}

Dims site_dims(const ModelSpec& spec) {
  switch (spec.family) {
    case Family::NonInteracting:
    case Family::MinimalInteraction:
      return {spec.local_dim, spec.local_dim};
    case Family::BilinearBiquadratic:
      return {3, 3};
    case Family::RingXY:
      return Dims(spec.n_sites, 2);
    default:
      return {2, 2};
  }
}

ComplexMatrix interaction_part(const ModelSpec& spec) {
  validate(spec);
  const Dims dims = site_dims(spec);
  switch (spec.family) {
    case Family::NonInteracting:
      return ComplexMatrix(product(dims), dims);
    case Family::MinimalInteraction: {
      const auto s = spin_operators(spec.local_dim);
      ComplexMatrix h = kron(directed_spin(s, spec.n1), directed_spin(s, spec.n2));
      h.set_subsystem_dims(dims);
      return h;
    }
    case Family::TransverseXY:
    case Family::LongitudinalXY:
      return xy_bond(spec.gamma, 0, 1, dims);
    case Family::XXZ: {
      const auto x = pauli::x(), y = pauli::y(), z = pauli::z();
      return 0.5 * (kron(x, x) + kron(y, y) + spec.delta * kron(z, z));
    }
    case Family::BilinearBiquadratic: {
      const auto s = spin_operators(3);
      ComplexMatrix dot = kron(s.x, s.x) + kron(s.y, s.y) + kron(s.z, s.z);
      ComplexMatrix h = std::cos(spec.theta) * dot + std::sin(spec.theta) * (dot * dot);
      h.set_subsystem_dims(dims);
      return h;
    }
    case Family::RingXY: {
      ComplexMatrix h(product(dims), dims);
      for (std::size_t i = 0; i < spec.n_sites; ++i) h += xy_bond(spec.gamma, i, (i + 1) % spec.n_sites, dims);
      return h;
    }
  }
  throw std::invalid_argument("unsupported model family");
}

ComplexMatrix local_part(const ModelSpec& spec) {
  validate(spec);
  const Dims dims = site_dims(spec);
  switch (spec.family) {
    case Family::NonInteracting:
    case Family::MinimalInteraction: {
      const auto s = spin_operators(spec.local_dim);
      return embed(directed_spin(s, spec.alpha), 0, dims) + embed(directed_spin(s, spec.beta), 1, dims);
    }
    case Family::LongitudinalXY:
      return field_sum(pauli::x(), dims);
    case Family::BilinearBiquadratic:
      return field_sum(spin_operators(3).z, dims);
    default:
      return field_sum(pauli::z(), dims);
  }
}

ComplexMatrix build(const ModelSpec& spec) {
  ComplexMatrix h = interaction_part(spec);
  h += spec.g * local_part(spec);
  h.set_subsystem_dims(site_dims(spec));
  return h;
}

std::optional<EnergyRange> state_energy_bounds_closed_form(const ModelSpec& spec) {
  validate(spec);
  const double g = spec.g;
  switch (spec.family) {
    case Family::TransverseXY: {
      const double e = std::max(1.0, std::sqrt(4 * g * g + spec.gamma * spec.gamma));
      return EnergyRange{-e, e};
    }
    case Family::LongitudinalXY:
      // Piecewise form holds for the Ising point with a non-negative field;
      // the level crossing sits at g = 1.
      if (spec.gamma != 1.0 || g < 0) return std::nullopt;
      if (g < 1.0) return EnergyRange{-1.0, 2 * g + 1};
      return EnergyRange{-2 * g + 1, 2 * g + 1};
    case Family::XXZ: {
      const double d = spec.delta;
      const std::array<double, 4> levels{-1 - d / 2, 1 - d / 2, -2 * g + d / 2, 2 * g + d / 2};
      return EnergyRange{*std::min_element(levels.begin(), levels.end()),
                         *std::max_element(levels.begin(), levels.end())};
    }
    case Family::BilinearBiquadratic: {
      const double c = std::cos(spec.theta), s = std::sin(spec.theta);
      const std::array<double, 9> levels{c + s,          -c + s,         -2 * c + 4 * s,
                                         -g - c + s,     g - c + s,      -2 * g + c + s,
                                         -g + c + s,     g + c + s,      2 * g + c + s};
      return EnergyRange{*std::min_element(levels.begin(), levels.end()),
                         *std::max_element(levels.begin(), levels.end())};
    }
    case Family::NonInteracting: {
      const double e = (static_cast<double>(spec.local_dim) - 1.0) * std::abs(g);
      return EnergyRange{-e, e};
    }
    default:
      return std::nullopt;
  }
}

EnergyRange state_energy_bounds_numeric(const ModelSpec& spec) {
  const auto ev = hermitian_eigenvalues(build(spec));
  return {ev.front(), ev.back()};
}

EnergyRange state_energy_bounds(const ModelSpec& spec) {
  const EnergyRange numeric = state_energy_bounds_numeric(spec);
  if (const auto closed = state_energy_bounds_closed_form(spec)) {
    if (std::abs(closed->lo - numeric.lo) > 1e-10 || std::abs(closed->hi - numeric.hi) > 1e-10)
      throw std::logic_error("closed-form energy bounds disagree with the numerical spectrum for " +
                             std::string(to_string(spec.family)));
    return *closed;
  }
  return numeric;
}

std::optional<EnergyRange> target_energy_bounds_analytic(const ModelSpec& spec, TargetName target) {
  validate(spec);
  switch (spec.family) {
    case Family::TransverseXY:
    case Family::LongitudinalXY: {
      // Both share the same interaction; maximally entangled targets see no field.
      if (target != TargetName::PsiMinus || spec.gamma < 0) return std::nullopt;
      const double eps = spec.gamma < 1.0 ? 1.0 : spec.gamma;
      return EnergyRange{-eps, eps};
    }
    case Family::XXZ: {
      if (target != TargetName::PsiMinus || spec.delta < 0) return std::nullopt;
      const double d = spec.delta;
      return EnergyRange{-(1 + d / 2), d < 1.0 ? 1 - d / 2 : d / 2};
    }
    case Family::RingXY:
      if (target == TargetName::Ghz3 && spec.n_sites == 3 && spec.gamma == 1.0) return EnergyRange{-1.0, 3.0};
      return std::nullopt;
    case Family::MinimalInteraction: {
      if (target != TargetName::PhiD && !(target == TargetName::PsiMinus && spec.local_dim == 2)) return std::nullopt;
      const double j = (static_cast<double>(spec.local_dim) - 1.0) / 2.0;
      const double eps = j * (j + 1) / 3.0;
      return EnergyRange{-eps, eps};
    }
    case Family::NonInteracting:
      if (target == TargetName::PhiD || (target == TargetName::PsiMinus && spec.local_dim == 2))
        return EnergyRange{0.0, 0.0};
      return std::nullopt;
    case Family::BilinearBiquadratic:
      return std::nullopt;
  }
  return std::nullopt;
}

TargetName default_target(const ModelSpec& spec) {
  switch (spec.family) {
    case Family::RingXY:
      return TargetName::Ghz3;
    case Family::BilinearBiquadratic:
      return TargetName::PhiD;
    case Family::NonInteracting:
    case Family::MinimalInteraction:
      return spec.local_dim == 2 ? TargetName::PsiMinus : TargetName::PhiD;
    default:
      return TargetName::PsiMinus;
  }
}

}  // namespace scd
