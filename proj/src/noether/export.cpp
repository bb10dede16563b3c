#include "s2kg/noether/export.hpp"

namespace s2kg::noether {

nlohmann::json to_json(const ConservedCurrent& c) {
    nlohmann::json comps = nlohmann::json::array();
    for (std::size_t k = 0; k < 3; ++k) {
        comps.push_back({{"index", k}, {"infix", c.A[k].str()}, {"latex", c.A[k].latex()}});
    }
    return {{"name", c.name}, {"generator", c.generator}, {"provenance", c.provenance}, {"components", comps}};
}

}  // namespace s2kg::noether
