#include "experiments.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include <fmt/format.h>

#include "scd/estimators.hpp"
#include "scd/range_optimizer.hpp"
#include "scd/spec_io.hpp"
#include "scd/thermal.hpp"

namespace scd::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = [] {
    std::set<std::string> k = {
        "family", "gamma", "g", "delta", "theta", "n_sites", "local_dim", "sampler", "rank", "dims", "target",
        "n_samples", "bins", "seed", "workers", "chunk_size", "restarts", "with_delta_p", "ranks", "min_count",
        "cyy", "czz", "fixed_cxx", "fixed_m1", "axis_steps", "witness_samples", "max_witnesses", "planes",
        "energy_tolerance"};
    for (const char* v : {"alpha", "beta", "n1", "n2"})
      for (const char* a : {"_x", "_y", "_z"}) k.insert(std::string(v) + a);
    for (const char* grid : {"g", "gamma", "delta", "theta", "beta"})
      for (const char* suffix : {"_min", "_max", "_steps", "_values"}) k.insert(std::string(grid) + suffix);
    return k;
  }();
  return keys;
}

template <class T>
T get_or(const json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config key '" + key + "': " + e.what());
  }
}

// Inclusive grid by default; periodic grids (theta) drop the endpoint.
std::vector<double> grid(const json& j, const std::string& name, double lo, double hi, std::size_t steps,
                         bool inclusive = true) {
  if (j.contains(name + "_values")) {
    auto v = get_or<std::vector<double>>(j, name + "_values", {});
    if (v.empty()) throw ConfigError(name + "_values must not be empty");
    return v;
  }
  lo = get_or(j, name + "_min", lo);
  hi = get_or(j, name + "_max", hi);
  steps = get_or(j, name + "_steps", steps);
  if (steps == 0 || !(hi >= lo)) throw ConfigError("bad " + name + " grid");
  std::vector<double> out;
  const double denom = inclusive ? static_cast<double>(steps > 1 ? steps - 1 : 1) : static_cast<double>(steps);
  for (std::size_t k = 0; k < steps; ++k) out.push_back(lo + (hi - lo) * static_cast<double>(k) / denom);
  return out;
}

ModelSpec model_of(const RunConfig& cfg, Family fallback) {
  json j = cfg.params;
  if (!j.contains("family")) j["family"] = std::string(to_string(fallback));
  try {
    return model_from_json(j);
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

StateSampler sampler_of(const RunConfig& cfg, const ModelSpec& model) {
  try {
    StateSampler s = sampler_from_json(cfg.params, model);
    if (s.dims != site_dims(model)) throw ConfigError("sampler dims do not match the model");
    return s;
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

RangeOptions range_options(const RunConfig& cfg) {
  RangeOptions o;
  o.restarts = get_or(cfg.params, "restarts", o.restarts);
  o.seed = derive_seed(cfg.seed, 0x7a);
  return o;
}

std::string num(double x) { return fmt::format("{:.12g}", x); }

class Csv {
 public:
  Csv(fs::path path, const std::vector<std::string>& header) : path_(std::move(path)), out_(path_) {
    if (!out_) throw std::runtime_error("cannot write " + path_.string());
    row(header);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) out_ << (k ? "," : "") << cells[k];
    out_ << '\n';
  }
  fs::path finish() {
    out_.close();
    return path_;
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

const char* primary_param(Family f) {
  switch (f) {
    case Family::TransverseXY:
    case Family::LongitudinalXY:
    case Family::RingXY:
      return "gamma";
    case Family::XXZ:
      return "delta";
    case Family::BilinearBiquadratic:
      return "theta";
    default:
      return nullptr;
  }
}

double& param_ref(ModelSpec& s, const std::string& name) {
  if (name == "gamma") return s.gamma;
  if (name == "delta") return s.delta;
  return s.theta;
}

// Closed-form eigenvalue sets, used as a consistency column.
std::optional<std::vector<double>> closed_form_spectrum(const ModelSpec& s) {
  std::vector<double> v;
  if (s.family == Family::TransverseXY) {
    const double r = std::sqrt(4 * s.g * s.g + s.gamma * s.gamma);
    v = {-1, 1, -r, r};
  } else if (s.family == Family::XXZ) {
    v = {-1 - s.delta / 2, 1 - s.delta / 2, s.delta / 2 - 2 * s.g, s.delta / 2 + 2 * s.g};
  } else {
    return std::nullopt;
  }
  std::sort(v.begin(), v.end());
  return v;
}

TargetName target_of(const RunConfig& cfg, const ModelSpec& model, const StateSampler& sampler) {
  if (cfg.params.contains("target")) {
    try {
      return parse_target(get_or<std::string>(cfg.params, "target", ""));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (sampler.kind == StateSampler::Kind::GhzClass || sampler.kind == StateSampler::Kind::WClass)
    return sampler.natural_target();
  return default_target(model);
}

}  // namespace

McOptions RunConfig::mc(std::size_t default_samples) const {
  McOptions o;
  o.n_samples = get_or(params, "n_samples", default_samples);
  o.chunk_size = get_or(params, "chunk_size", o.chunk_size);
  if (o.n_samples == 0) throw ConfigError("n_samples must be positive");
  o.seed = seed;
  o.workers = workers;
  return o;
}

RunConfig load_config(const std::string& command, const std::optional<fs::path>& file,
                      std::optional<std::uint64_t> seed, std::optional<int> workers, const fs::path& out_dir) {
  RunConfig cfg;
  cfg.command = command;
  cfg.out_dir = out_dir;
  if (file) {
    std::ifstream in(*file);
    if (!in) throw ConfigError("cannot open config " + file->string());
    try {
      cfg.params = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!cfg.params.is_object()) throw ConfigError("config must be a JSON object");
  }
  for (const auto& [key, value] : cfg.params.items()) {
    if (!known_keys().count(key)) throw ConfigError("unknown config key '" + key + "'");
    if (value.is_object()) throw ConfigError("config must be flat; '" + key + "' is an object");
  }
  cfg.seed = seed ? *seed : get_or<std::uint64_t>(cfg.params, "seed", 1);
  cfg.workers = workers ? *workers : get_or(cfg.params, "workers", 0);
  if (cfg.workers < 0) throw ConfigError("workers must be >= 0");
  cfg.params.erase("seed");
  cfg.params.erase("workers");
  return cfg;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"spectrum", "p-curve",      "hist", "thermal", "bell-volume",
                                                 "qutrit",   "df", "independence", "prange"};
  return names;
}

CommandResult run_command(const RunConfig& cfg) {
  fs::create_directories(cfg.out_dir);
  const std::string& c = cfg.command;
  if (c == "spectrum") return cmd_spectrum(cfg);
  if (c == "p-curve") return cmd_p_curve(cfg);
  if (c == "hist") return cmd_hist(cfg);
  if (c == "thermal") return cmd_thermal(cfg);
  if (c == "bell-volume") return cmd_bell_volume(cfg);
  if (c == "qutrit") return cmd_qutrit(cfg);
  if (c == "df") return cmd_df(cfg);
  if (c == "independence") return cmd_independence(cfg);
  if (c == "prange") return cmd_prange(cfg);
  throw ConfigError("unknown command '" + c + "'");
}

CommandResult cmd_spectrum(const RunConfig& cfg) {
  const ModelSpec base = model_of(cfg, Family::TransverseXY);
  const char* pname = primary_param(base.family);
  std::vector<double> pvals{0.0};
  if (pname) {
    ModelSpec copy = base;
    const double current = param_ref(copy, pname);
    pvals = grid(cfg.params, pname, current, current, 1);
  }
  const auto gvals = grid(cfg.params, "g", 0, 3, 13);
  const std::size_t dim = product(site_dims(base));

  std::vector<std::string> header;
  if (pname) header.push_back(pname);
  header.push_back("g");
  for (std::size_t k = 1; k <= dim; ++k) header.push_back(fmt::format("lambda_{}", k));
  const bool closed = closed_form_spectrum(base).has_value();
  if (closed) header.push_back("closed_form_max_err");
  Csv csv(cfg.out_dir / "spectrum.csv", header);

  double worst = 0;
  for (double p : pvals)
    for (double g : gvals) {
      ModelSpec s = base;
      if (pname) param_ref(s, pname) = p;
      s.g = g;
      try {
        validate(s);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      const auto ev = hermitian_eigenvalues(build(s));
      std::vector<std::string> row;
      if (pname) row.push_back(num(p));
      row.push_back(num(g));
      for (double e : ev) row.push_back(num(e));
      if (auto cf = closed_form_spectrum(s)) {
        double err = 0;
        for (std::size_t k = 0; k < ev.size(); ++k) err = std::max(err, std::abs(ev[k] - (*cf)[k]));
        worst = std::max(worst, err);
        row.push_back(fmt::format("{:.3e}", err));
      }
      csv.row(row);
    }
  CommandResult r;
  r.files.push_back(csv.finish());
  r.results["rows"] = pvals.size() * gvals.size();
  if (closed) r.results["closed_form_max_err"] = worst;
  return r;
}

CommandResult cmd_p_curve(const RunConfig& cfg) {
  const ModelSpec base = model_of(cfg, Family::TransverseXY);
  const StateSampler sampler = sampler_of(cfg, base);
  const TargetName target = target_of(cfg, base, sampler);
  const auto gvals = grid(cfg.params, "g", 0, 3, 13);
  const McOptions mc = cfg.mc(100000);
  const RangeOptions ro = range_options(cfg);
  const bool with_dp = get_or(cfg.params, "with_delta_p", false);
  if (with_dp && (sampler.kind != StateSampler::Kind::Pure ||
                  (base.family != Family::TransverseXY && base.family != Family::LongitudinalXY)))
    throw ConfigError("with_delta_p needs an XY family and the pure sampler");

  std::vector<std::string> header = {"g", "eps1", "eps2", "E1", "E2", "p", "stderr", "hits", "n", "mean_energy"};
  if (with_dp) header.insert(header.end(), {"delta_p", "delta_p_stderr"});
  Csv csv(cfg.out_dir / "p_curve.csv", header);
  json points = json::array();
  for (double g : gvals) {
    ModelSpec s = base;
    s.g = g;
    const EnergyRange tr = resolve_target_range(s, target, ro);
    const EnergyRange sb = state_energy_bounds(s);
    // same stream at every g: common random numbers keep the curve smooth
    const MonteCarloReport rep = estimate_p(sampler, s, tr, mc);
    std::vector<std::string> row = {num(g),           num(tr.lo),           num(tr.hi),
                                    num(sb.lo),       num(sb.hi),           num(rep.estimate),
                                    num(rep.std_error), std::to_string(rep.hits), std::to_string(rep.n_samples),
                                    num(rep.mean_energy)};
    json pt = {{"g", g}, {"p", rep.estimate}, {"stderr", rep.std_error}};
    if (with_dp) {
      const DeltaPReport dp = delta_p(s.gamma, g, mc);
      row.push_back(num(dp.delta));
      row.push_back(num(dp.std_error));
      pt["delta_p"] = dp.delta;
    }
    csv.row(row);
    points.push_back(pt);
  }
  CommandResult r;
  r.files.push_back(csv.finish());
  r.results["family"] = to_string(base.family);
  r.results["sampler"] = to_string(sampler.kind);
  r.results["target"] = to_string(target);
  r.results["points"] = points;
  return r;
}

CommandResult cmd_hist(const RunConfig& cfg) {
  const ModelSpec spec = model_of(cfg, Family::TransverseXY);
  const StateSampler sampler = sampler_of(cfg, spec);
  const std::size_t bins = get_or<std::size_t>(cfg.params, "bins", 200);
  if (bins < 10) throw ConfigError("hist needs at least 10 bins");
  const MonteCarloReport rep = energy_histogram(sampler, spec, bins, cfg.mc(100000));
  Csv csv(cfg.out_dir / "hist.csv", {"bin_lo", "bin_hi", "count", "density", "mass"});
  const auto dens = rep.histogram.density();
  const double n = static_cast<double>(rep.histogram.total());
  for (std::size_t k = 0; k < bins; ++k)
    csv.row({num(rep.histogram.edge(k)), num(rep.histogram.edge(k + 1)), std::to_string(rep.histogram.counts[k]),
             num(dens[k]), num(static_cast<double>(rep.histogram.counts[k]) / n)});
  CommandResult r;
  r.files.push_back(csv.finish());
  r.results = {{"mean_energy", rep.mean_energy},
               {"energy_variance", rep.energy_variance},
               {"mean_std_error", rep.std_error},
               {"n_samples", rep.n_samples},
               {"E1", rep.histogram.lo},
               {"E2", rep.histogram.hi}};
  return r;
}

CommandResult cmd_thermal(const RunConfig& cfg) {
  const ModelSpec base = model_of(cfg, Family::TransverseXY);
  if (base.family != Family::TransverseXY && base.family != Family::XXZ)
    throw ConfigError("thermal supports TransverseXY and XXZ");
  const auto gvals = grid(cfg.params, "g", 0, 3, 31);
  const auto betas = grid(cfg.params, "beta", 0, 5, 51);
  ThermalBoundaryOptions to;
  to.energy_tolerance = get_or(cfg.params, "energy_tolerance", to.energy_tolerance);
  const auto boundary = thermal_boundary(base, gvals, to);

  Csv bcsv(cfg.out_dir / "thermal_boundary.csv", {"g", "eps1", "eps2", "beta_star", "residual"});
  for (const auto& p : boundary)
    bcsv.row({num(p.g), num(p.target.lo), num(p.target.hi), p.beta_star ? num(*p.beta_star) : "none",
              num(p.residual)});

  Csv gcsv(cfg.out_dir / "thermal_grid.csv", {"g", "beta", "energy", "concurrence", "wcec"});
  std::size_t separable_inside = 0, cells = 0;
  for (std::size_t k = 0; k < gvals.size(); ++k) {
    ModelSpec s = base;
    s.g = gvals[k];
    const ComplexMatrix h = build(s);
    for (double b : betas) {
      const QuantumState rho = thermal_state(s, b);
      const double e = average_energy(rho, h);
      const double c = concurrence(rho);
      const bool ok = wcec_satisfied(e, boundary[k].target);
      if (ok && c == 0.0) ++separable_inside;
      ++cells;
      gcsv.row({num(gvals[k]), num(b), num(e), num(c), ok ? "1" : "0"});
    }
  }
  CommandResult r;
  r.files.push_back(bcsv.finish());
  r.files.push_back(gcsv.finish());
  std::size_t with_boundary = 0;
  for (const auto& p : boundary) with_boundary += p.beta_star.has_value();
  r.results = {{"grid_points", gvals.size()},
               {"with_boundary", with_boundary},
               {"cells", cells},
               {"separable_but_wcec", separable_inside}};
  return r;
}

namespace {

enum class Plane { CxxM2, M1M2 };

struct BellPoint {
  double cxx, m1, m2;
};

struct BellSetup {
  double cyy, czz;
  ComplexMatrix h;
  EnergyRange target;
};

enum class BellLabel { Invalid, Undistillable, DistillableNotScd, Scd };

const char* label_name(BellLabel l) {
  switch (l) {
    case BellLabel::Invalid:
      return "invalid-state";
    case BellLabel::Undistillable:
      return "undistillable";
    case BellLabel::DistillableNotScd:
      return "distillable-not-SCD";
    case BellLabel::Scd:
      break;
  }
  return "SCD";
}

BellLabel classify(const BellSetup& b, const BellPoint& p) {
  ComplexMatrix rho = magnetized_operator(p.cxx, b.cyy, b.czz, p.m1, p.m2);
  if (hermitian_eigenvalues(rho).front() < -1e-12) return BellLabel::Invalid;
  const QuantumState s = QuantumState::mixed_unchecked(std::move(rho));
  if (is_distillable(s).verdict != Verdict::Distillable) return BellLabel::Undistillable;
  return wcec_satisfied(s, b.h, b.target) ? BellLabel::Scd : BellLabel::DistillableNotScd;
}

BellPoint on_plane(Plane pl, double x, double y, double fixed_cxx, double fixed_m1) {
  return pl == Plane::CxxM2 ? BellPoint{x, fixed_m1, y} : BellPoint{fixed_cxx, x, y};
}

}  // namespace

CommandResult cmd_bell_volume(const RunConfig& cfg) {
  const ModelSpec base = model_of(cfg, Family::TransverseXY);
  if (base.family != Family::TransverseXY) throw ConfigError("bell-volume uses the TransverseXY model");
  const auto gvals = grid(cfg.params, "g", 1, 2, 2);
  const double cyy = get_or(cfg.params, "cyy", 0.2), czz = get_or(cfg.params, "czz", 0.3);
  const double fixed_cxx = get_or(cfg.params, "fixed_cxx", -0.8), fixed_m1 = get_or(cfg.params, "fixed_m1", 0.0);
  const std::size_t steps = get_or<std::size_t>(cfg.params, "axis_steps", 101);
  const std::size_t witness_samples = get_or<std::size_t>(cfg.params, "witness_samples", 100000);
  const std::size_t max_witnesses = get_or<std::size_t>(cfg.params, "max_witnesses", 10);
  const auto plane_names = get_or<std::vector<std::string>>(cfg.params, "planes", {"cxx_m2", "m1_m2"});
  if (steps < 2) throw ConfigError("axis_steps must be >= 2");
  for (double c : {cyy, czz, fixed_cxx, fixed_m1})
    if (!(std::abs(c) <= 1)) throw ConfigError("correlators and magnetizations must lie in [-1, 1]");

  Csv csv(cfg.out_dir / "bell_volume.csv", {"g", "plane", "x", "y", "label"});
  Csv wcsv(cfg.out_dir / "bell_volume_witness.csv",
           {"g", "plane", "x1", "y1", "x2", "y2", "x_mix", "y_mix", "E1", "E2", "E_mix"});
  json summary = json::array();
  for (std::size_t gi = 0; gi < gvals.size(); ++gi) {
    ModelSpec s = base;
    s.g = gvals[gi];
    const BellSetup setup{cyy, czz, build(s), resolve_target_range(s, TargetName::PsiMinus)};
    for (const auto& pname : plane_names) {
      Plane pl;
      if (pname == "cxx_m2")
        pl = Plane::CxxM2;
      else if (pname == "m1_m2")
        pl = Plane::M1M2;
      else
        throw ConfigError("unknown plane '" + pname + "'");
      std::array<std::size_t, 4> counts{};
      for (std::size_t a = 0; a < steps; ++a)
        for (std::size_t b = 0; b < steps; ++b) {
          const double x = -1 + 2.0 * static_cast<double>(a) / static_cast<double>(steps - 1);
          const double y = -1 + 2.0 * static_cast<double>(b) / static_cast<double>(steps - 1);
          const BellLabel l = classify(setup, on_plane(pl, x, y, fixed_cxx, fixed_m1));
          ++counts[static_cast<std::size_t>(l)];
          csv.row({num(s.g), pname, num(x), num(y), label_name(l)});
        }

      // Mixtures of two distillable-but-not-SCD states that land inside the SCD set.
      Rng rng(derive_seed(cfg.seed, gi * 16 + static_cast<std::size_t>(pl)));
      std::size_t witnesses = 0;
      for (std::size_t t = 0; t < witness_samples; ++t) {
        const double x1 = rng.uniform(-1, 1), y1 = rng.uniform(-1, 1), x2 = rng.uniform(-1, 1), y2 = rng.uniform(-1, 1);
        const BellPoint p1 = on_plane(pl, x1, y1, fixed_cxx, fixed_m1), p2 = on_plane(pl, x2, y2, fixed_cxx, fixed_m1);
        if (classify(setup, p1) != BellLabel::DistillableNotScd) continue;
        if (classify(setup, p2) != BellLabel::DistillableNotScd) continue;
        const double xm = (x1 + x2) / 2, ym = (y1 + y2) / 2;
        const BellPoint pm = on_plane(pl, xm, ym, fixed_cxx, fixed_m1);
        if (classify(setup, pm) != BellLabel::Scd) continue;
        if (witnesses++ < max_witnesses) {
          auto energy = [&](const BellPoint& p) {
            return trace_product(setup.h, magnetized_operator(p.cxx, cyy, czz, p.m1, p.m2)).real();
          };
          wcsv.row({num(s.g), pname, num(x1), num(y1), num(x2), num(y2), num(xm), num(ym), num(energy(p1)),
                    num(energy(p2)), num(energy(pm))});
        }
      }
      const std::size_t valid = steps * steps - counts[0];
      summary.push_back({{"g", s.g},
                         {"plane", pname},
                         {"invalid", counts[0]},
                         {"undistillable", counts[1]},
                         {"distillable_not_scd", counts[2]},
                         {"scd", counts[3]},
                         {"scd_fraction_of_valid", valid ? static_cast<double>(counts[3]) / valid : 0.0},
                         {"witnesses", witnesses},
                         {"witness_samples", witness_samples}});
    }
  }
  CommandResult r;
  r.files.push_back(csv.finish());
  r.files.push_back(wcsv.finish());
  r.results["cross_sections"] = summary;
  return r;
}

CommandResult cmd_qutrit(const RunConfig& cfg) {
  const ModelSpec base = model_of(cfg, Family::BilinearBiquadratic);
  if (base.family != Family::BilinearBiquadratic) throw ConfigError("qutrit uses the BilinearBiquadratic model");
  const StateSampler sampler = sampler_of(cfg, base);
  if (sampler.kind != StateSampler::Kind::Pure) throw ConfigError("qutrit needs the pure sampler");
  const auto thetas = grid(cfg.params, "theta", 0, 2 * std::numbers::pi, 24, false);
  const auto gvals = grid(cfg.params, "g", 0, 3, 13);
  const McOptions mc = cfg.mc(100000);
  const RangeOptions ro = range_options(cfg);

  Csv csv(cfg.out_dir / "qutrit.csv", {"theta", "g", "eps1", "eps2", "p", "stderr"});
  json points = json::array();
  for (double th : thetas)
    for (double g : gvals) {
      ModelSpec s = base;
      s.theta = th;
      s.g = g;
      const EnergyRange tr = resolve_target_range(s, TargetName::PhiD, ro);
      const MonteCarloReport rep = estimate_p(sampler, s, tr, mc);
      csv.row({num(th), num(g), num(tr.lo), num(tr.hi), num(rep.estimate), num(rep.std_error)});
      points.push_back({{"theta", th}, {"g", g}, {"p", rep.estimate}});
    }
  CommandResult r;
  r.files.push_back(csv.finish());
  r.results["points"] = points;
  return r;
}

CommandResult cmd_df(const RunConfig& cfg) {
  const auto ranks = get_or<std::vector<std::size_t>>(cfg.params, "ranks", {2, 3, 4});
  const McOptions mc = cfg.mc(1000000);
  Csv csv(cfg.out_dir / "df.csv", {"rank", "n", "distillable", "eta", "stderr"});
  json reports = json::array();
  for (std::size_t rank : ranks) {
    if (rank < 1 || rank > 4) throw ConfigError("two-qubit rank must be in [1, 4]");
    const MonteCarloReport rep = estimate_df(rank, mc);
    csv.row({std::to_string(rank), std::to_string(rep.n_samples), std::to_string(rep.hits), num(rep.estimate),
             num(rep.std_error)});
    json jr = to_json(rep);
    jr["rank"] = rank;
    jr.erase("elapsed_seconds");
    jr.erase("mean_energy");
    jr.erase("energy_variance");
    reports.push_back(jr);
  }
  CommandResult r;
  r.files.push_back(csv.finish());
  const fs::path jpath = cfg.out_dir / "df.json";
  std::ofstream(jpath) << json{{"eta", reports}}.dump(2) << '\n';
  r.files.push_back(jpath);
  r.results["eta"] = reports;
  return r;
}

CommandResult cmd_independence(const RunConfig& cfg) {
  const ModelSpec spec = model_of(cfg, Family::TransverseXY);
  if (site_dims(spec) != Dims{2, 2}) throw ConfigError("independence needs a two-qubit model");
  const std::size_t rank = get_or<std::size_t>(cfg.params, "rank", 4);
  if (rank < 2 || rank > 4) throw ConfigError("rank must be 2, 3 or 4");
  const std::size_t bins = get_or<std::size_t>(cfg.params, "bins", 20);
  if (bins == 0) throw ConfigError("bins must be positive");
  const std::uint64_t min_count = get_or<std::uint64_t>(cfg.params, "min_count", 10000);
  const McOptions mc = cfg.mc(1000000);
  const IndependenceTable table = independence_check(rank, spec, bins, mc, min_count);

  McOptions direct_mc = mc;
  direct_mc.seed = derive_seed(cfg.seed, 1);  // independent stream for the direct count
  const EnergyRange tr = resolve_target_range(spec, TargetName::PsiMinus, range_options(cfg));
  const MonteCarloReport direct = estimate_p(StateSampler::mixed({2, 2}, rank), spec, tr, direct_mc);
  const IndependenceComparison cmp = compare_independence(table, direct, tr);

  Csv csv(cfg.out_dir / "independence.csv",
          {"bin_lo", "bin_hi", "count", "distillable", "fraction", "well_populated"});
  for (const auto& b : table.bins)
    csv.row({num(b.lo), num(b.hi), std::to_string(b.count), std::to_string(b.distillable),
             b.empty ? "empty" : num(b.fraction), b.well_populated ? "1" : "0"});
  CommandResult r;
  r.files.push_back(csv.finish());
  r.results = {{"eta", table.eta},
               {"eta_stderr", table.eta_std_error},
               {"max_deviation", table.max_deviation},
               {"min_count", min_count},
               {"eps1", tr.lo},
               {"eps2", tr.hi},
               {"p_direct", cmp.p_direct},
               {"p_direct_stderr", cmp.p_direct_std_error},
               {"p_independence", cmp.p_independence},
               {"p_independence_stderr", cmp.p_independence_std_error},
               {"combined_sigma", cmp.combined_sigma}};
  return r;
}

CommandResult cmd_prange(const RunConfig& cfg) {
  const ModelSpec base = model_of(cfg, Family::TransverseXY);
  TargetName target = default_target(base);
  if (cfg.params.contains("target")) {
    try {
      target = parse_target(get_or<std::string>(cfg.params, "target", ""));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  const std::size_t d = base.family == Family::BilinearBiquadratic ? 3 : base.local_dim;
  const QuantumState t = target_state(target, d);
  if (t.dims() != site_dims(base)) throw ConfigError("target does not fit the model's sites");
  const auto gvals = grid(cfg.params, "g", 0, 3, 13);
  RangeOptions ro = range_options(cfg);
  ro.one_sided = site_dims(base).size() == 2 && (target == TargetName::PsiMinus || target == TargetName::PhiD);

  Csv csv(cfg.out_dir / "prange.csv",
          {"g", "eps1", "eps2", "analytic_eps1", "analytic_eps2", "E1", "E2", "restarts", "converged"});
  double worst = 0;
  for (double g : gvals) {
    ModelSpec s = base;
    s.g = g;
    const RangeResult rr = target_energy_range(s, t, ro);
    if (!rr.converged)
      throw NonConvergenceError(fmt::format("range optimizer did not converge at g = {}", g));
    const auto an = target_energy_bounds_analytic(s, target);
    const EnergyRange sb = state_energy_bounds(s);
    if (an) worst = std::max({worst, std::abs(an->lo - rr.range.lo), std::abs(an->hi - rr.range.hi)});
    csv.row({num(g), num(rr.range.lo), num(rr.range.hi), an ? num(an->lo) : "", an ? num(an->hi) : "", num(sb.lo),
             num(sb.hi), std::to_string(rr.restarts_used), "1"});
  }
  CommandResult r;
  r.files.push_back(csv.finish());
  r.results = {{"target", to_string(target)}, {"max_analytic_gap", worst}};
  return r;
}

}  // namespace scd::cli
