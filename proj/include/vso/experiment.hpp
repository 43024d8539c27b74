#pragma once

#include "vso/engine.hpp"
#include "vso/run_record.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vso {

enum class Algorithm { Vso, VsoNoImport, De };

[[nodiscard]] Algorithm parse_algorithm(std::string_view text);
[[nodiscard]] std::string to_string(Algorithm algorithm);

enum class ProblemKind { Benchmark, Portfolio };

inline constexpr std::size_t kDefaultRuns = 31;
inline constexpr std::size_t kDefaultBenchmarkIterations = 10000;
inline constexpr std::size_t kDefaultPortfolioIterations = 1000;
inline constexpr double kDefaultQuotedRiskFree = 0.0257;

struct ExperimentConfig {
    ProblemKind kind = ProblemKind::Benchmark;
    // Benchmark selector.
    std::string function = "F1";
    std::size_t dimension = 30;
    // Portfolio selector.
    std::filesystem::path prices;
    bool allow_short = false;
    double risk_free = kDefaultQuotedRiskFree;
    bool risk_free_as_quoted = false;

    Algorithm algorithm = Algorithm::Vso;
    VsoParams params;
    std::size_t n_runs = kDefaultRuns;
    std::uint64_t base_seed = 0;
    /// Empty: nothing is written.
    std::filesystem::path output_dir;
    /// Run independent seeds concurrently.
    bool parallel_runs = true;

    [[nodiscard]] std::size_t max_iterations() const noexcept { return params.max_iterations; }
};

/// Applies one "key=value" algorithm override (e.g. "r_c=0.7"). Throws
/// ConfigError for unknown keys or unparsable values.
void apply_param_override(VsoParams& params, std::string_view assignment);

/// Names accepted by apply_param_override.
[[nodiscard]] std::vector<std::string> param_override_keys();

struct SummaryRow {
    std::string algorithm;
    std::string function;
    std::size_t dimension = 0;
    double mean = 0.0;
    double std = 0.0;
    double best = 0.0;
    double worst = 0.0;
    double time_seconds = 0.0;
    std::size_t runs = 0;
    /// Mean of f(x) - f(x*) when the optimum is known.
    std::optional<double> mean_error;
};

/// mean / sample std (n-1; zero for one run) / best / worst / mean time
/// over final best fitness values.
[[nodiscard]] SummaryRow summarize(const std::vector<RunRecord>& records);

struct ExperimentResult {
    std::vector<RunRecord> records;
    SummaryRow summary;
    std::string problem_label;
};

/// Builds the objective described by the config. Portfolio configs read and
/// estimate the price file.
[[nodiscard]] Objective make_objective(const ExperimentConfig& config);

/// Executes n_runs seeded runs (seed = base_seed + k) of the selected
/// algorithm on an already-built objective.
[[nodiscard]] std::vector<RunRecord> run_trials(const ExperimentConfig& config, const Objective& objective);
/// Serial reference for run_trials; identical records up to wall time.
[[nodiscard]] std::vector<RunRecord> run_trials_serial(const ExperimentConfig& config, const Objective& objective);

/// Full protocol: build objective, run trials, summarize, and when an output
/// directory is set write summary.csv, summary.json and traces/*.csv. Records
/// completed before a failing run are flushed before the error propagates.
[[nodiscard]] ExperimentResult run_experiment(const ExperimentConfig& config);
/// Same protocol on a caller-supplied objective.
[[nodiscard]] ExperimentResult run_experiment(const ExperimentConfig& config, const Objective& objective);

struct RankSummary {
    std::vector<std::string> algorithms;
    std::vector<double> avg_fitness_rank;
    std::vector<double> avg_time_rank;
    std::size_t problems = 0;
};

/// Competition ranking ("1224") per problem (function + dimension) by mean
/// fitness and by mean time, averaged across problems. Throws
/// IncompleteMatrixError when any algorithm lacks a problem.
[[nodiscard]] RankSummary rank_algorithms(const std::vector<SummaryRow>& rows);

/// Competition ranks of a single vector, smaller value = better rank.
[[nodiscard]] std::vector<double> competition_ranks(const std::vector<double>& values);

} // namespace vso
