#pragma once

#include <string>

#include "json.hpp"
#include "levywh/models.hpp"

namespace levywh {

/// {"family": "bm"|"merton"|"hejd"|"vg"|"nts"|"kobol"|"meixner", "params": {...}} with the
/// struct field names. Every field is required and unknown fields are rejected;
/// problems raise ParameterError naming the offending field ("params.sigma2", ...).
LevyModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const LevyModel& m);

LevyModel load_model(const std::string& path);

}  // namespace levywh
