#pragma once

// Flat key-value JSON vocabulary shared by model specs, sampler specs and
// run configs: {"family": "TransverseXY", "gamma": 1, "g": 0.5, ...}.

#include <json.hpp>

#include "scd/estimators.hpp"
#include "scd/hamiltonians.hpp"
#include "scd/states.hpp"

namespace scd {

nlohmann::json to_json(const ModelSpec& spec);
/// Missing keys keep ModelSpec defaults; unknown family names throw std::invalid_argument.
ModelSpec model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const StateSampler& sampler);
/// Sampler dims follow the model's site dims unless "dims" is given.
StateSampler sampler_from_json(const nlohmann::json& j, const ModelSpec& model);

nlohmann::json to_json(const MonteCarloReport& report);

}  // namespace scd
