#pragma once

#include <nlohmann/json.hpp>

#include "malign/models.hpp"

namespace malign {

/// Sample documents use 1-based vertices; edges are [u, v] pairs with u < v
/// and weights are listed in canonical edge order.
nlohmann::json to_json(const GaussianSample& sample);
nlohmann::json to_json(const ErSample& sample);

GaussianSample gaussian_sample_from_json(const nlohmann::json& doc);
ErSample er_sample_from_json(const nlohmann::json& doc);

nlohmann::json alignment_to_json(const Alignment& a);
Alignment alignment_from_json(const nlohmann::json& doc);

}  // namespace malign
