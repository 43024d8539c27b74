#include "vso/de.hpp"

#include "vso/error.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace vso {

namespace {

double safe_evaluate(const Objective& objective, const RnaVector& x)
{
    const double f = objective(x);
    return std::isfinite(f) ? f : std::numeric_limits<double>::infinity();
}

std::size_t argmin_fitness(const std::vector<DeMember>& members)
{
    std::size_t best = 0;
    for (std::size_t k = 1; k < members.size(); ++k) {
        if (members[k].fitness < members[best].fitness) {
            best = k;
        }
    }
    return best;
}

} // namespace

void DeParams::validate() const
{
    if (pop_size < 4) {
        throw ConfigError("DE population size must be at least 4");
    }
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
        throw ConfigError("DE crossover rate must lie in [0, 1]");
    }
    if (!(differential_weight >= 0.0 && differential_weight <= 2.0)) {
        throw ConfigError("DE differential weight must lie in [0, 2]");
    }
}

DeColony de_init(const Objective& objective, const DeParams& params, RandomSource& rng)
{
    params.validate();
    validate(objective);

    const std::size_t dim = objective.dimension();
    DeColony colony;
    colony.members.resize(params.pop_size);
    for (auto& member : colony.members) {
        member.rna.resize(dim);
        for (std::size_t d = 0; d < dim; ++d) {
            member.rna[d] = rng.uniform(objective.lower[d], objective.upper[d]);
        }
        member.fitness = safe_evaluate(objective, member.rna);
        ++colony.eval_count;
    }
    colony.best_index = argmin_fitness(colony.members);
    return colony;
}

RnaVector de_trial(const DeColony& colony, std::size_t target, const Objective& objective, const DeParams& params,
                   RandomSource& rng)
{
    const std::size_t n = colony.members.size();
    const std::size_t dim = objective.dimension();

    std::size_t r1, r2, r3;
    do { r1 = rng.index(n); } while (r1 == target);
    do { r2 = rng.index(n); } while (r2 == target || r2 == r1);
    do { r3 = rng.index(n); } while (r3 == target || r3 == r1 || r3 == r2);

    const RnaVector& base = colony.members[r1].rna;
    const RnaVector& a = colony.members[r2].rna;
    const RnaVector& b = colony.members[r3].rna;

    RnaVector trial = colony.members[target].rna;
    const std::size_t forced = rng.index(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        if (d == forced || rng.uniform() < params.crossover_rate) {
            trial[d] = base[d] + params.differential_weight * (a[d] - b[d]);
        }
    }
    clamp_to_bounds(trial, objective);
    return trial;
}

const DeMember& de_step(DeColony& colony, const Objective& objective, const DeParams& params, RandomSource& rng)
{
    const std::size_t n = colony.members.size();

    std::vector<DeMember> trials(n);
    for (std::size_t target = 0; target < n; ++target) {
        trials[target].rna = de_trial(colony, target, objective, params, rng);
    }

    for (std::size_t target = 0; target < n; ++target) {
        DeMember& trial = trials[target];
        trial.fitness = safe_evaluate(objective, trial.rna);
        ++colony.eval_count;
        if (trial.fitness <= colony.members[target].fitness) {
            colony.members[target] = std::move(trial);
        }
    }
    colony.best_index = argmin_fitness(colony.members);
    return colony.best();
}

RunRecord run_de(const Objective& objective, const DeParams& params, std::size_t generations, std::uint64_t seed)
{
    if (generations == 0) {
        throw ConfigError("at least one generation is required");
    }
    const auto start = std::chrono::steady_clock::now();

    SeededRandom rng(seed);
    DeColony colony = de_init(objective, params, rng);

    RunRecord record;
    record.seed = seed;
    record.trace.reserve(generations);
    for (std::size_t g = 0; g < generations; ++g) {
        const DeMember& best = de_step(colony, objective, params, rng);
        record.trace.push_back({g + 1, best.fitness});
    }
    record.best_rna = colony.best().rna;
    record.best_fitness = colony.best().fitness;
    record.eval_count = colony.eval_count;
    record.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return record;
}

} // namespace vso
