#pragma once

#include "vso/de.hpp"
#include "vso/objective.hpp"
#include "vso/random.hpp"
#include "vso/run_record.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

namespace vso {

enum class HostType : std::uint8_t { Healthy, Mild, Severe, Critical };

[[nodiscard]] constexpr bool is_infectious(HostType type) noexcept
{
    return type != HostType::Healthy;
}

[[nodiscard]] std::string_view to_string(HostType type) noexcept;

struct Host {
    RnaVector rna;
    HostType type = HostType::Healthy;
    double fitness = std::numeric_limits<double>::infinity();
    bool fitness_stale = true;
    /// Per-dimension momentum used while the host is mild.
    RnaVector intensity_m;
    /// Gaussian step scale used while the host is severe; always > 0.
    double intensity_s = 1.0;
};

using Population = std::vector<Host>;

/// Algorithm constants with their standard defaults.
struct VsoParams {
    std::size_t n_pop = 30;
    std::size_t n_im = 20;
    double r_c = 0.8;
    double r_s = 0.3;
    double r_m = 0.3;
    double p_c_hs = 0.8;
    double p_s_hs = 0.5;
    double delta_s = 0.9;
    double alpha = 0.1;
    double gamma = 2.0;
    double rev_percent = 0.8;
    double p_im = 0.5;
    std::size_t h_contacts = 1;
    std::size_t max_iterations = 10000;
    double de_crossover_rate = 0.3;
    double de_differential_weight = 0.5;

    /// Throws ConfigError on any out-of-range value, including a violation
    /// of 0 < r_m <= r_s < r_c < 1.
    void validate() const;

    [[nodiscard]] double infection_rate(HostType source) const;
    /// Probability that a successful infection from `source` yields a mild
    /// host. The severe probability is its complement.
    [[nodiscard]] double mild_outcome_probability(HostType source) const;
    /// floor(n_pop * rev_percent).
    [[nodiscard]] std::size_t recovery_count() const;
    [[nodiscard]] DeParams import_colony() const;
};

struct GBest {
    RnaVector rna;
    double fitness = std::numeric_limits<double>::infinity();
};

enum class Execution { Serial, Parallel };

struct EvalStats {
    std::size_t evaluations = 0;
    std::size_t non_finite = 0;
};

/// Draws one fresh host: uniform RNA, intensity_m = U(l, u) / 10 per
/// dimension, intensity_s = 1 / u with u in (1e-12, 1]. Type is Healthy.
[[nodiscard]] Host make_host(const Objective& objective, RandomSource& rng);

/// Re-draws RNA and both intensities of an existing host, keeping its type.
void reinitialize(Host& host, const Objective& objective, RandomSource& rng);

/// n_pop fresh Healthy hosts with stale fitness.
[[nodiscard]] Population initialize(const VsoParams& params, const Objective& objective, RandomSource& rng);

/// Reference evaluation loop. Non-finite objective values become +inf.
EvalStats evaluate_serial(Population& population, const Objective& objective);
/// OpenMP evaluation; produces the same fitness values as evaluate_serial.
EvalStats evaluate_parallel(Population& population, const Objective& objective);
EvalStats evaluate(Population& population, const Objective& objective, Execution execution = Execution::Serial);

/// Marks the minimum-fitness host Critical (lowest index wins ties). When it
/// differs from prev_critical, the previous one becomes Severe and gbest is
/// replaced. Returns the critical index. Throws std::logic_error when empty.
std::size_t select_critical(Population& population, std::optional<std::size_t> prev_critical, GBest& gbest);

/// Applies the per-type mutation rule to every host and clamps to bounds.
/// Returns the number of non-finite coordinates that had to be repaired.
std::size_t mutate(Population& population, const GBest& gbest, const VsoParams& params, const Objective& objective,
                   RandomSource& rng);

struct InfectionStats {
    std::size_t contacts = 0;
    std::size_t infections = 0;
};

/// One infection pass over a snapshot of the infectious hosts.
InfectionStats infect(Population& population, const VsoParams& params, RandomSource& rng);

/// When every host is infectious, re-initializes the recovery_count() worst
/// non-critical hosts and downgrades them one level. Returns how many hosts
/// were recovered.
std::size_t recover(Population& population, const VsoParams& params, const Objective& objective, RandomSource& rng);

/// Advances the colony one generation, then with probability
/// p_im * iteration / max_iterations copies the colony best into the
/// critical host when strictly better. Returns true on replacement.
/// A zero-size colony (n_im == 0) makes this a no-op.
bool imported_infection(Host& critical, DeColony& colony, const Objective& objective, const VsoParams& params,
                        std::size_t iteration, RandomSource& rng, RandomSource& colony_rng);

/// Step-wise VSO driver. One step() is a full iteration:
/// evaluate, select, mutate, infect, recover, imported infection.
class VsoEngine {
public:
    VsoEngine(Objective objective, VsoParams params, std::uint64_t seed, Execution execution = Execution::Serial);

    void step();
    [[nodiscard]] bool done() const noexcept { return iteration_ >= params_.max_iterations; }

    [[nodiscard]] const Population& population() const noexcept { return population_; }
    [[nodiscard]] const GBest& gbest() const noexcept { return gbest_; }
    [[nodiscard]] std::optional<std::size_t> critical_index() const noexcept { return critical_; }
    [[nodiscard]] std::size_t iteration() const noexcept { return iteration_; }
    [[nodiscard]] const RunRecord& record() const noexcept { return record_; }

    /// Finalizes best fields and returns the accumulated record.
    [[nodiscard]] RunRecord finish() &&;

private:
    Objective objective_;
    VsoParams params_;
    Execution execution_;
    SeededRandom rng_;
    SeededRandom colony_rng_;
    Population population_;
    std::optional<DeColony> colony_;
    GBest gbest_;
    std::optional<std::size_t> critical_;
    std::size_t iteration_ = 0;
    RunRecord record_;
};

/// Runs max_iterations iterations from the given seed.
[[nodiscard]] RunRecord run(const Objective& objective, const VsoParams& params, std::uint64_t seed,
                            Execution execution = Execution::Serial);

} // namespace vso
