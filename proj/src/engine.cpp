#include "vso/engine.hpp"

#include "vso/error.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>

namespace vso {

namespace {

// Lower end of the open interval the severe-intensity draw is taken from.
constexpr double kMinIntensityDraw = 1e-12;

double checked_fitness(const Objective& objective, const RnaVector& rna, std::size_t& non_finite)
{
    const double f = objective(rna);
    if (std::isfinite(f)) {
        return f;
    }
    ++non_finite;
    return std::numeric_limits<double>::infinity();
}

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

bool bits_equal(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b)
{
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](double x, double y) {
               return bits_equal(x, y);
           });
}

} // namespace

std::string_view to_string(HostType type) noexcept
{
    switch (type) {
    case HostType::Healthy: return "healthy";
    case HostType::Mild: return "mild";
    case HostType::Severe: return "severe";
    case HostType::Critical: return "critical";
    }
    return "unknown";
}

bool same_outcome(const RunRecord& a, const RunRecord& b)
{
    if (a.trace.size() != b.trace.size()) {
        return false;
    }
    for (std::size_t k = 0; k < a.trace.size(); ++k) {
        if (a.trace[k].iteration != b.trace[k].iteration || !bits_equal(a.trace[k].best_fitness, b.trace[k].best_fitness)) {
            return false;
        }
    }
    return bits_equal(a.best_rna, b.best_rna) && bits_equal(a.best_fitness, b.best_fitness) &&
           a.eval_count == b.eval_count && a.seed == b.seed && a.diagnostics == b.diagnostics;
}

// ---------------------------------------------------------------------------
// Parameters

void VsoParams::validate() const
{
    if (n_pop == 0) {
        throw ConfigError("n_pop must be positive");
    }
    if (!(r_m > 0.0 && r_m <= r_s && r_s < r_c && r_c < 1.0)) {
        throw ConfigError("infection rates must satisfy 0 < r_m <= r_s < r_c < 1");
    }
    if (!in_unit_interval(p_c_hs) || !in_unit_interval(p_s_hs)) {
        throw ConfigError("transformation probabilities must lie in [0, 1]");
    }
    if (!(delta_s > 0.0 && delta_s <= 1.0)) {
        throw ConfigError("delta_s must lie in (0, 1]");
    }
    if (!in_unit_interval(alpha)) {
        throw ConfigError("alpha must lie in [0, 1]");
    }
    if (!(gamma >= 1.0 && gamma <= 2.0)) {
        throw ConfigError("gamma must lie in [1, 2]");
    }
    if (!in_unit_interval(rev_percent)) {
        throw ConfigError("rev_percent must lie in [0, 1]");
    }
    if (!in_unit_interval(p_im)) {
        throw ConfigError("p_im must lie in [0, 1]");
    }
    if (h_contacts == 0) {
        throw ConfigError("h_contacts must be positive");
    }
    if (max_iterations == 0) {
        throw ConfigError("max_iterations must be at least 1");
    }
    if (n_im > 0) {
        import_colony().validate();
    }
}

double VsoParams::infection_rate(HostType source) const
{
    switch (source) {
    case HostType::Critical: return r_c;
    case HostType::Severe: return r_s;
    case HostType::Mild: return r_m;
    case HostType::Healthy: break;
    }
    return 0.0;
}

double VsoParams::mild_outcome_probability(HostType source) const
{
    switch (source) {
    case HostType::Critical: return 1.0 - p_c_hs;
    case HostType::Severe: return 1.0 - p_s_hs;
    case HostType::Mild: return 1.0;
    case HostType::Healthy: break;
    }
    return 0.0;
}

std::size_t VsoParams::recovery_count() const
{
    // The epsilon absorbs representation error such as 30 * 0.8 -> 23.999...
    return static_cast<std::size_t>(std::floor(static_cast<double>(n_pop) * rev_percent + 1e-9));
}

DeParams VsoParams::import_colony() const
{
    return DeParams{n_im, de_crossover_rate, de_differential_weight};
}

// ---------------------------------------------------------------------------
// Initialization

void reinitialize(Host& host, const Objective& objective, RandomSource& rng)
{
    const std::size_t dim = objective.dimension();
    host.rna.resize(dim);
    host.intensity_m.resize(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        host.rna[d] = objective.lower[d] + rng.uniform() * (objective.upper[d] - objective.lower[d]);
    }
    for (std::size_t d = 0; d < dim; ++d) {
        host.intensity_m[d] = rng.uniform(objective.lower[d], objective.upper[d]) / 10.0;
    }
    const double u = std::max(1.0 - rng.uniform(), kMinIntensityDraw);
    host.intensity_s = 1.0 / u;
    host.fitness = std::numeric_limits<double>::infinity();
    host.fitness_stale = true;
}

Host make_host(const Objective& objective, RandomSource& rng)
{
    Host host;
    reinitialize(host, objective, rng);
    host.type = HostType::Healthy;
    return host;
}

Population initialize(const VsoParams& params, const Objective& objective, RandomSource& rng)
{
    params.validate();
    validate(objective);

    Population population;
    population.reserve(params.n_pop);
    for (std::size_t k = 0; k < params.n_pop; ++k) {
        population.push_back(make_host(objective, rng));
    }
    return population;
}

// ---------------------------------------------------------------------------
// Evaluation

EvalStats evaluate_serial(Population& population, const Objective& objective)
{
    EvalStats stats;
    for (Host& host : population) {
        host.fitness = checked_fitness(objective, host.rna, stats.non_finite);
        host.fitness_stale = false;
    }
    stats.evaluations = population.size();
    return stats;
}

EvalStats evaluate_parallel(Population& population, const Objective& objective)
{
    const auto n = static_cast<std::ptrdiff_t>(population.size());
    std::size_t non_finite = 0;

#pragma omp parallel for schedule(static) reduction(+ : non_finite)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        Host& host = population[static_cast<std::size_t>(k)];
        host.fitness = checked_fitness(objective, host.rna, non_finite);
        host.fitness_stale = false;
    }
    return EvalStats{population.size(), non_finite};
}

EvalStats evaluate(Population& population, const Objective& objective, Execution execution)
{
    return execution == Execution::Parallel ? evaluate_parallel(population, objective)
                                            : evaluate_serial(population, objective);
}

// ---------------------------------------------------------------------------
// Selection

std::size_t select_critical(Population& population, std::optional<std::size_t> prev_critical, GBest& gbest)
{
    if (population.empty()) {
        throw std::logic_error("select_critical called on an empty population");
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < population.size(); ++k) {
        if (population[k].fitness < population[best].fitness) {
            best = k;
        }
    }
    population[best].type = HostType::Critical;
    if (!prev_critical || *prev_critical != best) {
        if (prev_critical) {
            population.at(*prev_critical).type = HostType::Severe;
        }
        gbest.rna = population[best].rna;
        gbest.fitness = population[best].fitness;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Mutation

std::size_t mutate(Population& population, const GBest& gbest, const VsoParams& params, const Objective& objective,
                   RandomSource& rng)
{
    const std::size_t dim = objective.dimension();
    std::size_t repaired = 0;

    for (Host& host : population) {
        switch (host.type) {
        case HostType::Healthy:
            for (std::size_t d = 0; d < dim; ++d) {
                host.rna[d] = rng.uniform(objective.lower[d], objective.upper[d]);
            }
            break;
        case HostType::Mild: {
            const double u = rng.uniform();
            for (std::size_t d = 0; d < dim; ++d) {
                host.intensity_m[d] = params.alpha * host.intensity_m[d] + params.gamma * u * (gbest.rna[d] - host.rna[d]);
                host.rna[d] += host.intensity_m[d];
            }
            break;
        }
        case HostType::Severe:
            host.intensity_s = std::max(params.delta_s * host.intensity_s, std::numeric_limits<double>::min());
            for (std::size_t d = 0; d < dim; ++d) {
                host.rna[d] += rng.normal(host.intensity_s) * host.rna[d];
            }
            break;
        case HostType::Critical:
            continue;
        }
        repaired += clamp_to_bounds(host.rna, objective);
        host.fitness_stale = true;
    }
    return repaired;
}

// ---------------------------------------------------------------------------
// Infection

InfectionStats infect(Population& population, const VsoParams& params, RandomSource& rng)
{
    InfectionStats stats;

    std::vector<std::size_t> sources;
    for (std::size_t k = 0; k < population.size(); ++k) {
        if (is_infectious(population[k].type)) {
            sources.push_back(k);
        }
    }
    std::stable_sort(sources.begin(), sources.end(), [&](std::size_t a, std::size_t b) {
        return population[a].fitness < population[b].fitness;
    });

    std::vector<std::size_t> healthy;
    for (const std::size_t src : sources) {
        healthy.clear();
        for (std::size_t k = 0; k < population.size(); ++k) {
            if (population[k].type == HostType::Healthy) {
                healthy.push_back(k);
            }
        }
        if (healthy.size() < params.h_contacts) {
            continue;
        }
        std::stable_sort(healthy.begin(), healthy.end(), [&](std::size_t a, std::size_t b) {
            return population[a].fitness > population[b].fitness;
        });

        const Host& source = population[src];
        const double rate = params.infection_rate(source.type);
        const double p_mild = params.mild_outcome_probability(source.type);

        for (std::size_t c = 0; c < params.h_contacts; ++c) {
            Host& dest = population[healthy[c]];
            ++stats.contacts;
            if (!(rng.uniform() <= rate)) {
                continue;
            }
            ++stats.infections;
            if (rng.uniform() <= p_mild) {
                dest.type = HostType::Mild;
                for (std::size_t d = 0; d < dest.rna.size(); ++d) {
                    if (rng.uniform() <= 0.5) {
                        dest.rna[d] = source.rna[d];
                    }
                }
                dest.fitness_stale = true;
            } else {
                dest.type = HostType::Severe;
                dest.rna = source.rna;
                dest.fitness = source.fitness;
                dest.fitness_stale = source.fitness_stale;
            }
        }
    }
    return stats;
}

// ---------------------------------------------------------------------------
// Recovery

std::size_t recover(Population& population, const VsoParams& params, const Objective& objective, RandomSource& rng)
{
    const auto infectious = static_cast<std::size_t>(std::count_if(
        population.begin(), population.end(), [](const Host& h) { return is_infectious(h.type); }));
    if (infectious != params.n_pop) {
        return 0;
    }

    std::vector<std::size_t> candidates;
    for (std::size_t k = 0; k < population.size(); ++k) {
        if (population[k].type != HostType::Critical) {
            candidates.push_back(k);
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
        return population[a].fitness > population[b].fitness;
    });

    const std::size_t count = std::min(params.recovery_count(), candidates.size());
    for (std::size_t r = 0; r < count; ++r) {
        Host& host = population[candidates[r]];
        reinitialize(host, objective, rng);
        if (host.type == HostType::Severe) {
            host.type = HostType::Mild;
        } else if (host.type == HostType::Mild) {
            host.type = HostType::Healthy;
        }
    }
    return count;
}

// ---------------------------------------------------------------------------
// Imported infection

bool imported_infection(Host& critical, DeColony& colony, const Objective& objective, const VsoParams& params,
                        std::size_t iteration, RandomSource& rng, RandomSource& colony_rng)
{
    if (params.n_im == 0 || colony.members.empty()) {
        return false;
    }
    const DeMember& best = de_step(colony, objective, params.import_colony(), colony_rng);

    const double threshold =
        params.p_im * static_cast<double>(iteration) / static_cast<double>(params.max_iterations);
    if (rng.uniform() <= threshold && best.fitness < critical.fitness) {
        critical.rna = best.rna;
        critical.fitness = best.fitness;
        critical.fitness_stale = false;
        return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Driver

VsoEngine::VsoEngine(Objective objective, VsoParams params, std::uint64_t seed, Execution execution)
    : objective_(std::move(objective)),
      params_(params),
      execution_(execution),
      rng_(seed),
      colony_rng_(mix_seed(seed))
{
    population_ = initialize(params_, objective_, rng_);
    if (params_.n_im > 0) {
        colony_ = de_init(objective_, params_.import_colony(), colony_rng_);
        record_.diagnostics.colony_evaluations = colony_->eval_count;
    }
    record_.seed = seed;
    record_.trace.reserve(params_.max_iterations);
}

void VsoEngine::step()
{
    const EvalStats stats = evaluate(population_, objective_, execution_);
    record_.eval_count += stats.evaluations;
    record_.diagnostics.non_finite_evaluations += stats.non_finite;

    critical_ = select_critical(population_, critical_, gbest_);
    record_.diagnostics.repaired_coordinates += mutate(population_, gbest_, params_, objective_, rng_);
    infect(population_, params_, rng_);
    record_.diagnostics.recoveries += recover(population_, params_, objective_, rng_);

    if (colony_) {
        Host& critical = population_[*critical_];
        if (imported_infection(critical, *colony_, objective_, params_, iteration_, rng_, colony_rng_)) {
            gbest_.rna = critical.rna;
            gbest_.fitness = critical.fitness;
            ++record_.diagnostics.imports_accepted;
        }
        record_.diagnostics.colony_evaluations = colony_->eval_count;
    }

    ++iteration_;
    record_.trace.push_back({iteration_, gbest_.fitness});
}

RunRecord VsoEngine::finish() &&
{
    record_.best_rna = gbest_.rna;
    record_.best_fitness = gbest_.fitness;
    return std::move(record_);
}

RunRecord run(const Objective& objective, const VsoParams& params, std::uint64_t seed, Execution execution)
{
    const auto start = std::chrono::steady_clock::now();
    VsoEngine engine(objective, params, seed, execution);
    while (!engine.done()) {
        engine.step();
    }
    RunRecord record = std::move(engine).finish();
    record.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return record;
}

} // namespace vso
