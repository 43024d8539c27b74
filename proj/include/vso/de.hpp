#pragma once

#include "vso/objective.hpp"
#include "vso/random.hpp"
#include "vso/run_record.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace vso {

/// Classic DE/rand/1/bin settings.
struct DeParams {
    std::size_t pop_size = 20;
    double crossover_rate = 0.3;
    double differential_weight = 0.5;

    /// Throws ConfigError when pop_size < 4 or a rate is out of range.
    void validate() const;
};

struct DeMember {
    RnaVector rna;
    double fitness = 0.0;
};

struct DeColony {
    std::vector<DeMember> members;
    std::size_t best_index = 0;
    std::size_t eval_count = 0;

    [[nodiscard]] const DeMember& best() const { return members.at(best_index); }
};

/// Samples pop_size members uniformly inside the box and evaluates them.
[[nodiscard]] DeColony de_init(const Objective& objective, const DeParams& params, RandomSource& rng);

/// Builds the DE/rand/1/bin trial for one target: three distinct partners
/// other than the target, binomial crossover with one forced index, clamp.
[[nodiscard]] RnaVector de_trial(const DeColony& colony, std::size_t target, const Objective& objective,
                                 const DeParams& params, RandomSource& rng);

/// Advances the colony one generation.
///
/// Trials are built from the generation's current members (synchronous
/// update): trial = r1 + F * (r2 - r3) under binomial crossover with one
/// forced index, clamped to the box. A trial replaces its target when its
/// fitness is <= the target's. Returns the best member afterwards.
const DeMember& de_step(DeColony& colony, const Objective& objective, const DeParams& params, RandomSource& rng);

/// Standalone DE baseline: one colony advanced for the given number of
/// generations, traced like a VSO run.
[[nodiscard]] RunRecord run_de(const Objective& objective, const DeParams& params, std::size_t generations,
                               std::uint64_t seed);

} // namespace vso
