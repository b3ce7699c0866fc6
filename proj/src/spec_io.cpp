#include "scd/spec_io.hpp"

namespace scd {

namespace {

void put_vec(nlohmann::json& j, const std::string& key, const Vec3& v) {
  j[key + "_x"] = v[0];
  j[key + "_y"] = v[1];
  j[key + "_z"] = v[2];
}

void get_vec(const nlohmann::json& j, const std::string& key, Vec3& v) {
  const char* axes[] = {"_x", "_y", "_z"};
  for (int k = 0; k < 3; ++k)
    if (j.contains(key + axes[k])) v[k] = j.at(key + axes[k]).get<double>();
}

template <class T>
void get_if(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

nlohmann::json to_json(const ModelSpec& spec) {
  nlohmann::json j;
  j["family"] = std::string(to_string(spec.family));
  j["g"] = spec.g;
  switch (spec.family) {
    case Family::TransverseXY:
    case Family::LongitudinalXY:
      j["gamma"] = spec.gamma;
      break;
    case Family::XXZ:
      j["delta"] = spec.delta;
      break;
    case Family::BilinearBiquadratic:
      j["theta"] = spec.theta;
      break;
    case Family::RingXY:
      j["gamma"] = spec.gamma;
      j["n_sites"] = spec.n_sites;
      break;
    case Family::MinimalInteraction:
      put_vec(j, "n1", spec.n1);
      put_vec(j, "n2", spec.n2);
      [[fallthrough]];
    case Family::NonInteracting:
      j["local_dim"] = spec.local_dim;
      put_vec(j, "alpha", spec.alpha);
      put_vec(j, "beta", spec.beta);
      break;
  }
  return j;
}

ModelSpec model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("model spec must be a JSON object");
  ModelSpec s;
  if (j.contains("family")) s.family = parse_family(j.at("family").get<std::string>());
  if (s.family == Family::BilinearBiquadratic) s.local_dim = 3;
  if (s.family == Family::RingXY) s.n_sites = 3;
  get_if(j, "gamma", s.gamma);
  get_if(j, "g", s.g);
  get_if(j, "delta", s.delta);
  get_if(j, "theta", s.theta);
  get_if(j, "n_sites", s.n_sites);
  get_if(j, "local_dim", s.local_dim);
  get_vec(j, "alpha", s.alpha);
  get_vec(j, "beta", s.beta);
  get_vec(j, "n1", s.n1);
  get_vec(j, "n2", s.n2);
  validate(s);
  return s;
}

nlohmann::json to_json(const StateSampler& sampler) {
  nlohmann::json j;
  j["sampler"] = std::string(to_string(sampler.kind));
  if (sampler.kind == StateSampler::Kind::Mixed) j["rank"] = sampler.rank;
  j["dims"] = sampler.dims;
  return j;
}

StateSampler sampler_from_json(const nlohmann::json& j, const ModelSpec& model) {
  StateSampler s;
  if (j.contains("sampler")) s.kind = parse_sampler_kind(j.at("sampler").get<std::string>());
  switch (s.kind) {
    case StateSampler::Kind::GhzClass:
      return StateSampler::ghz_class();
    case StateSampler::Kind::WClass:
      return StateSampler::w_class();
    case StateSampler::Kind::BellDiagonal:
      return StateSampler::bell_diagonal();
    default:
      break;
  }
  s.dims = j.contains("dims") ? j.at("dims").get<Dims>() : site_dims(model);
  get_if(j, "rank", s.rank);
  if (s.kind == StateSampler::Kind::Pure) s.rank = 1;
  if (s.rank < 1 || s.rank > product(s.dims)) throw std::invalid_argument("sampler rank out of range");
  return s;
}

nlohmann::json to_json(const MonteCarloReport& r) {
  return {{"n_samples", r.n_samples},
          {"hits", r.hits},
          {"estimate", r.estimate},
          {"std_error", r.std_error},
          {"mean_energy", r.mean_energy},
          {"energy_variance", r.energy_variance},
          {"seed", r.seed},
          {"elapsed_seconds", r.elapsed_seconds}};
}

}  // namespace scd
