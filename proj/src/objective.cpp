#include "vso/objective.hpp"

#include "vso/error.hpp"

#include <algorithm>
#include <cmath>

namespace vso {

void validate(const Objective& objective)
{
    if (objective.dimension() == 0) {
        throw ConfigError("objective '" + objective.name + "' has dimension 0");
    }
    if (objective.upper.size() != objective.lower.size()) {
        throw ConfigError("objective '" + objective.name + "' has mismatched bound vectors");
    }
    for (std::size_t d = 0; d < objective.dimension(); ++d) {
        if (!(objective.lower[d] < objective.upper[d])) {
            throw ConfigError("objective '" + objective.name + "': lower bound must be below upper bound in dimension " +
                              std::to_string(d));
        }
    }
    if (!objective.evaluate) {
        throw ConfigError("objective '" + objective.name + "' has no evaluation function");
    }
}

std::size_t clamp_to_bounds(std::span<double> x, const Objective& objective)
{
    std::size_t repaired = 0;
    for (std::size_t d = 0; d < x.size(); ++d) {
        double& v = x[d];
        if (!std::isfinite(v)) {
            ++repaired;
            v = (v == INFINITY) ? objective.upper[d] : objective.lower[d];
            continue;
        }
        v = std::clamp(v, objective.lower[d], objective.upper[d]);
    }
    return repaired;
}

} // namespace vso
