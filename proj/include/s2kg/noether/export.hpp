#pragma once

#include <json.hpp>

#include "s2kg/noether/current.hpp"

namespace s2kg::noether {

/// {"name", "generator", "provenance", "components": [{"index", "infix", "latex"}]}
[[nodiscard]] nlohmann::json to_json(const ConservedCurrent& c);

}  // namespace s2kg::noether
