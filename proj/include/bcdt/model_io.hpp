#pragma once

#include "bcdt/boost.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

namespace bcdt {

inline constexpr int kModelVersion = 1;

nlohmann::json config_to_json(const BoostConfig& cfg);
/// Overlays the keys present in `j` on `base`; unknown keys are a ConfigError.
BoostConfig config_from_json(const nlohmann::json& j, BoostConfig base = {});

nlohmann::json tree_to_json(const CdtNode& root);
CdtPtr tree_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const BoostedModel& model);
/// Throws SchemaError on structural problems and SyntaxError on bad formulas.
BoostedModel model_from_json(const nlohmann::json& j);

void save_model(const BoostedModel& model, const std::filesystem::path& path);
BoostedModel load_model(const std::filesystem::path& path);

} // namespace bcdt
