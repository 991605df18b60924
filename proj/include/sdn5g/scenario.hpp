#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdn5g/mobility.hpp"

namespace sdn5g {

// JSON scenario schema; see README "Scenario files". Unknown keys are
// rejected, omitted optional keys take the documented defaults. Throws
// ConfigError naming the offending field.
Scenario parse_scenario_text(std::string_view text);

// `path_or_name` is either a file path or a bundled scenario name.
Scenario parse_scenario(const std::string& path_or_name);

std::optional<std::string_view> bundled_scenario(std::string_view name);
std::vector<std::string_view> bundled_scenario_names();

std::string scenario_to_json(const Scenario& s);

} // namespace sdn5g
