#pragma once

#include <json.hpp>

#include <string>

#include "dynamics.hpp"

namespace cgf {

/// Built-in maps: "3n+1", "3n-1", "classical", "double-3n+1", "coupled-2d",
/// plus "mu-ge-lambda" (a map with poles at zero in its decomposition).
CollatzMap preset(const std::string& name);
std::vector<std::string> preset_names();

/// Parses the JSON map-config document {name, d, m, branches:[{r, A, b}]}
/// with rationals as [numerator, denominator] pairs. Validates eagerly.
CollatzMap map_from_json(const nlohmann::json& cfg);
CollatzMap map_from_json_text(const std::string& text);

/// Emits a config document that round-trips through map_from_json.
nlohmann::json map_to_json(const CollatzMap& map, const std::string& name);

/// Lambda/mu table per residue class, for diagnostics.
nlohmann::json map_describe(const CollatzMap& map);

}  // namespace cgf
