#pragma once

#include <string>

#include <json.hpp>

#include "hybridad/datagen.hpp"
#include "hybridad/pipeline.hpp"

namespace hybridad::model_io {

inline constexpr int kModelFormatVersion = 1;

nlohmann::json model_to_json(const pipeline::BehaviorModel& model);
pipeline::BehaviorModel model_from_json(const nlohmann::json& j);

// Versioned, human-inspectable JSON. Serialization is deterministic: keys
// are emitted sorted and doubles in shortest round-trip form, so the same
// model always produces the same bytes.
void save_model(const std::string& path, const pipeline::BehaviorModel& model);
pipeline::BehaviorModel load_model(const std::string& path);

nlohmann::json cycle_spec_to_json(const datagen::CycleSpec& spec);
datagen::CycleSpec cycle_spec_from_json(const nlohmann::json& j);
datagen::CycleSpec load_cycle_spec(const std::string& path);

nlohmann::json model_config_to_json(const pipeline::ModelConfig& cfg);
pipeline::ModelConfig model_config_from_json(const nlohmann::json& j);
pipeline::ModelConfig load_model_config(const std::string& path);

} // namespace hybridad::model_io
