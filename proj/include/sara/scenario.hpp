#pragma once

#include "sara/world.hpp"

#include <filesystem>
#include <string>

namespace sara::sim {

/// Loads a scenario config from its JSON form (see docs/grammar.md for the
/// schema) and validates it. Station ids are synthesized as sta1..staN;
/// AP ids from the file are expanded under the vocabulary namespace.
ScenarioConfig load_scenario(const std::filesystem::path& file);
ScenarioConfig parse_scenario(const std::string& json_text,
                              const std::filesystem::path& base_dir = {});

/// Structural checks: required fields present and consistent (APs inside
/// the area, positive ranges/bandwidths, selection count within the
/// station count...). Throws ValidationError with the offending field.
void validate_scenario(const ScenarioConfig& config);

} // namespace sara::sim
