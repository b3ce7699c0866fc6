#include "scd/range_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace scd {

ComplexMatrix qubit_unitary(double theta, double phi1, double phi2) {
  const double c = std::cos(theta), s = std::sin(theta);
  return ComplexMatrix(2, {c * std::polar(1.0, phi1), s * std::polar(1.0, phi2), -s * std::polar(1.0, -phi2),
                           c * std::polar(1.0, -phi1)});
}

ComplexMatrix unitary_from_generator(std::size_t d, std::span<const double> params) {
  if (params.size() != d * d) throw std::invalid_argument("unitary_from_generator: need d^2 parameters");
  ComplexMatrix g(d);
  std::size_t k = 0;
  for (std::size_t i = 0; i < d; ++i) g(i, i) = params[k++];
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      g(i, j) = cplx(params[k], params[k + 1]);
      g(j, i) = std::conj(g(i, j));
      k += 2;
    }
  const Spectrum s = hermitian_eig(g);
  ComplexMatrix u(d);
  for (std::size_t m = 0; m < d; ++m) {
    const cplx phase = std::polar(1.0, s.eigenvalues[m]);
    for (std::size_t r = 0; r < d; ++r) {
      const cplx vr = phase * s.eigenvectors(r, m);
      for (std::size_t c = 0; c < d; ++c) u(r, c) += vr * std::conj(s.eigenvectors(c, m));
    }
  }
  return u;
}

LocalUnitarySet LocalUnitarySet::identity(const Dims& dims) {
  LocalUnitarySet us;
  for (auto d : dims) us.factors.push_back(ComplexMatrix::identity(d));
  return us;
}

LocalUnitarySet LocalUnitarySet::from_qubit_angles(const std::vector<std::array<double, 3>>& angles) {
  LocalUnitarySet us;
  for (const auto& a : angles) us.factors.push_back(qubit_unitary(a[0], a[1], a[2]));
  return us;
}

LocalUnitarySet LocalUnitarySet::ghz_rotation(double theta) {
  // half angle: the full-angle rotation traces 1 + 2 sin(2 theta) instead
  const double c = std::cos(theta / 2), s = std::sin(theta / 2), r = 1.0 / std::sqrt(2.0);
  const ComplexMatrix hadamard_like(2, {r, r, -r, r});
  return {{ComplexMatrix(2, {c, s, -s, c}), hadamard_like, hadamard_like}};
}

double LocalUnitarySet::unitarity_defect() const {
  double worst = 0;
  for (const auto& u : factors)
    worst = std::max(worst, max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(u.dim())));
  return worst;
}

namespace {

void apply_site(CVector& v, const Dims& dims, std::size_t site, const ComplexMatrix& u, CVector& scratch) {
  const std::size_t d = dims[site];
  std::size_t inner = 1;
  for (std::size_t k = site + 1; k < dims.size(); ++k) inner *= dims[k];
  const std::size_t outer = v.size() / (d * inner);
  scratch.resize(d);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t i = 0; i < inner; ++i) {
      const std::size_t base = o * d * inner + i;
      for (std::size_t a = 0; a < d; ++a) scratch[a] = v[base + a * inner];
      for (std::size_t a = 0; a < d; ++a) {
        cplx acc = 0;
        for (std::size_t b = 0; b < d; ++b) acc += u(a, b) * scratch[b];
        v[base + a * inner] = acc;
      }
    }
}

double real_expectation(const ComplexMatrix& h, const CVector& v) { return expectation(h, v).real(); }

// Maps a flat parameter vector to one unitary per varied site.
struct Parametrization {
  Dims dims;
  std::size_t varied_sites = 0;
  std::vector<ComplexMatrix> anchors;  // qudit sites: U = anchor * exp(iG)

  std::size_t params_for(std::size_t site) const { return dims[site] == 2 ? 3 : dims[site] * dims[site]; }
  std::size_t size() const {
    std::size_t n = 0;
    for (std::size_t k = 0; k < varied_sites; ++k) n += params_for(k);
    return n;
  }

  LocalUnitarySet realize(std::span<const double> x) const {
    LocalUnitarySet us;
    std::size_t off = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (k >= varied_sites) {
        us.factors.push_back(ComplexMatrix::identity(dims[k]));
        continue;
      }
      const std::size_t n = params_for(k);
      if (dims[k] == 2)
        us.factors.push_back(qubit_unitary(x[off], x[off + 1], x[off + 2]));
      else
        us.factors.push_back(anchors[k] * unitary_from_generator(dims[k], x.subspan(off, n)));
      off += n;
    }
    return us;
  }
};

struct RestartOutcome {
  double value;
  std::vector<double> x;
  Parametrization param;
};

RestartOutcome run_restart(const ComplexMatrix& h, const QuantumState& target, const RangeOptions& opts,
                           std::size_t varied, int index, double sign) {
  Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(index)));
  Parametrization p{target.dims(), varied, {}};
  std::vector<double> x0;
  for (std::size_t k = 0; k < p.dims.size(); ++k) {
    const std::size_t d = p.dims[k];
    if (k >= varied) {
      p.anchors.push_back(ComplexMatrix::identity(d));
      continue;
    }
    if (d == 2) {
      // Haar on SU(2): |U00|^2 uniform, phases uniform.
      x0.push_back(std::acos(std::sqrt(rng.uniform())));
      x0.push_back(rng.uniform(0, 2 * std::numbers::pi));
      x0.push_back(rng.uniform(0, 2 * std::numbers::pi));
      p.anchors.push_back(ComplexMatrix::identity(d));
    } else {
      p.anchors.push_back(haar_unitary(d, rng));
      x0.insert(x0.end(), d * d, 0.0);
    }
  }
  const CVector& psi = target.amplitudes();
  CVector work, scratch;
  auto objective = [&](std::span<const double> x) {
    const LocalUnitarySet us = p.realize(x);
    work = psi;
    for (std::size_t k = 0; k < varied; ++k) apply_site(work, p.dims, k, us.factors[k], scratch);
    return sign * real_expectation(h, work);
  };
  NelderMeadOptions nm;
  nm.tolerance = opts.tolerance;
  nm.max_iterations = opts.max_iterations;
  const NelderMeadResult r = nelder_mead(objective, std::move(x0), nm);
  return {sign * r.value, r.x, std::move(p)};
}

}  // namespace

CVector apply_local(const LocalUnitarySet& us, const QuantumState& target) {
  const Dims& dims = target.dims();
  if (us.factors.size() != dims.size()) throw std::invalid_argument("local unitary set does not match the site count");
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (us.factors[k].dim() != dims[k]) throw std::invalid_argument("local unitary dimension mismatch");
  CVector v = target.amplitudes();
  CVector scratch;
  for (std::size_t k = 0; k < dims.size(); ++k) apply_site(v, dims, k, us.factors[k], scratch);
  return v;
}

double target_energy(const ModelSpec& spec, const QuantumState& target, const LocalUnitarySet& us) {
  if (!target.is_pure()) throw std::invalid_argument("target_energy: target must be pure");
  if (site_dims(spec) != target.dims()) throw std::invalid_argument("target_energy: target dims do not match the model");
  return real_expectation(build(spec), apply_local(us, target));
}

RangeResult target_energy_range(const ModelSpec& spec, const QuantumState& target, const RangeOptions& opts) {
  if (!target.is_pure()) throw std::invalid_argument("target_energy_range: target must be pure");
  if (site_dims(spec) != target.dims())
    throw std::invalid_argument("target_energy_range: target dims do not match the model");
  if (opts.restarts < 1) throw std::invalid_argument("target_energy_range: need at least one restart");
  const ComplexMatrix h = build(spec);
  const std::size_t varied = opts.one_sided ? 1 : target.dims().size();

  const int n = opts.restarts;
  std::vector<RestartOutcome> mins(n), maxs(n);
  auto body = [&](int k) {
    mins[k] = run_restart(h, target, opts, varied, k, +1.0);
    maxs[k] = run_restart(h, target, opts, varied, k, -1.0);
  };
  if (opts.serial) {
    for (int k = 0; k < n; ++k) body(k);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < n; ++k) body(k);
  }

  // First-found wins among equal values.
  auto best_of = [&](const std::vector<RestartOutcome>& v, bool want_min) {
    std::size_t b = 0;
    for (std::size_t k = 1; k < v.size(); ++k)
      if (want_min ? v[k].value < v[b].value : v[k].value > v[b].value) b = k;
    return b;
  };
  auto agree = [&](const std::vector<RestartOutcome>& v, bool want_min) {
    std::vector<double> vals;
    for (const auto& o : v) vals.push_back(o.value);
    std::sort(vals.begin(), vals.end());
    if (!want_min) std::reverse(vals.begin(), vals.end());
    if (vals.size() < 3) return false;
    return std::abs(vals[2] - vals[0]) <= opts.agreement;
  };
  const std::size_t bmin = best_of(mins, true), bmax = best_of(maxs, false);

  RangeResult result;
  result.range = EnergyRange(mins[bmin].value, std::max(mins[bmin].value, maxs[bmax].value));
  result.argmin = mins[bmin].param.realize(mins[bmin].x);
  result.argmax = maxs[bmax].param.realize(maxs[bmax].x);
  result.restarts_used = n;
  result.converged = agree(mins, true) && agree(maxs, false);

  const auto ev = hermitian_eigenvalues(h);
  const double tol = 1e-9 * std::max(1.0, h.max_abs());
  if (result.range.lo < ev.front() - tol || result.range.hi > ev.back() + tol)
    throw std::logic_error("target energy range escapes the spectrum of H");
  return result;
}

std::vector<WRangePoint> w_class_target_range(const ModelSpec& ring, const std::vector<double>& g_grid,
                                              const RangeOptions& opts) {
  if (ring.family != Family::RingXY || ring.n_sites != 3)
    throw std::invalid_argument("w_class_target_range: needs the three-site RingXY model");
  const QuantumState w = target_state(TargetName::W3);
  std::vector<WRangePoint> out;
  for (double g : g_grid) {
    ModelSpec spec = ring;
    spec.g = g;
    WRangePoint pt;
    pt.g = g;
    pt.result = target_energy_range(spec, w, opts);
    pt.state_bounds = state_energy_bounds(spec);
    if (!pt.state_bounds.contains(pt.result.range, 1e-9))
      throw std::logic_error("W target range is not contained in the spectrum");
    pt.strict_subset =
        pt.result.range.lo > pt.state_bounds.lo + 1e-6 || pt.result.range.hi < pt.state_bounds.hi - 1e-6;
    out.push_back(std::move(pt));
  }
  return out;
}

EnergyRange resolve_target_range(const ModelSpec& spec, TargetName target, const RangeOptions& opts) {
  if (const auto analytic = target_energy_bounds_analytic(spec, target)) return *analytic;
  const Dims dims = site_dims(spec);
  RangeOptions o = opts;
  o.one_sided = (target == TargetName::PsiMinus || target == TargetName::PhiD) && dims.size() == 2;
  const RangeResult r = target_energy_range(spec, target_state(target, dims.front()), o);
  if (!r.converged)
    throw NonConvergenceError("target range optimizer did not converge for " + std::string(to_string(spec.family)));
  return r.range;
}

}  // namespace scd
