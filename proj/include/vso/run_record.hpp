#pragma once

#include "vso/objective.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace vso {

struct TracePoint {
    std::size_t iteration = 0;
    double best_fitness = 0.0;

    bool operator==(const TracePoint&) const = default;
};

/// Counters that never affect the search itself.
struct RunDiagnostics {
    std::size_t non_finite_evaluations = 0;
    std::size_t repaired_coordinates = 0;
    std::size_t colony_evaluations = 0;
    std::size_t imports_accepted = 0;
    std::size_t recoveries = 0;

    bool operator==(const RunDiagnostics&) const = default;
};

/// Result of one seeded run. Everything except wall_time is a pure function
/// of (objective, parameters, seed).
struct RunRecord {
    RnaVector best_rna;
    double best_fitness = 0.0;
    std::vector<TracePoint> trace;
    std::size_t eval_count = 0;
    double wall_time = 0.0;
    std::uint64_t seed = 0;
    RunDiagnostics diagnostics;
};

/// Equality of every deterministic field (wall_time excluded), compared
/// bit for bit.
[[nodiscard]] bool same_outcome(const RunRecord& a, const RunRecord& b);

} // namespace vso
