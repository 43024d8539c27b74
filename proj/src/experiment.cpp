#include "vso/experiment.hpp"

#include "vso/benchmarks.hpp"
#include "vso/de.hpp"
#include "vso/error.hpp"
#include "vso/portfolio.hpp"
#include "vso/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <functional>
#include <numeric>

namespace vso {

namespace {

template <typename T>
T parse_number(std::string_view key, std::string_view text)
{
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("cannot parse value '" + std::string(text) + "' for parameter '" + std::string(key) + "'");
    }
    return value;
}

using Setter = std::function<void(VsoParams&, std::string_view key, std::string_view value)>;

Setter real_field(double VsoParams::*field)
{
    return [field](VsoParams& p, std::string_view key, std::string_view v) { p.*field = parse_number<double>(key, v); };
}

Setter count_field(std::size_t VsoParams::*field)
{
    return [field](VsoParams& p, std::string_view key, std::string_view v) {
        p.*field = parse_number<std::size_t>(key, v);
    };
}

const std::map<std::string, Setter, std::less<>>& setters()
{
    static const std::map<std::string, Setter, std::less<>> table{
        {"n_pop", count_field(&VsoParams::n_pop)},
        {"n_im", count_field(&VsoParams::n_im)},
        {"r_c", real_field(&VsoParams::r_c)},
        {"r_s", real_field(&VsoParams::r_s)},
        {"r_m", real_field(&VsoParams::r_m)},
        {"p_c_hs", real_field(&VsoParams::p_c_hs)},
        {"p_s_hs", real_field(&VsoParams::p_s_hs)},
        {"delta_s", real_field(&VsoParams::delta_s)},
        {"alpha", real_field(&VsoParams::alpha)},
        {"gamma", real_field(&VsoParams::gamma)},
        {"rev_percent", real_field(&VsoParams::rev_percent)},
        {"p_im", real_field(&VsoParams::p_im)},
        {"h_contacts", count_field(&VsoParams::h_contacts)},
        {"crossover_rate", real_field(&VsoParams::de_crossover_rate)},
        {"differential_weight", real_field(&VsoParams::de_differential_weight)},
    };
    return table;
}

std::string problem_label(const ExperimentConfig& config)
{
    if (config.kind == ProblemKind::Portfolio) {
        return config.allow_short ? "portfolio-longshort" : "portfolio-long";
    }
    return to_string(parse_benchmark_id(config.function));
}

RunRecord run_one(const ExperimentConfig& config, const Objective& objective, std::size_t run_index)
{
    const std::uint64_t seed = config.base_seed + run_index;
    switch (config.algorithm) {
    case Algorithm::Vso:
        return run(objective, config.params, seed);
    case Algorithm::VsoNoImport: {
        VsoParams params = config.params;
        params.n_im = 0;
        return run(objective, params, seed);
    }
    case Algorithm::De: {
        // Standalone baseline uses the main population size and the same
        // iteration budget, counted in generations.
        const DeParams de{config.params.n_pop, config.params.de_crossover_rate, config.params.de_differential_weight};
        return run_de(objective, de, config.params.max_iterations, seed);
    }
    }
    throw ConfigError("unknown algorithm");
}

std::string_view trim(std::string_view text)
{
    const auto first = text.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t");
    return text.substr(first, last - first + 1);
}

void check_runnable(const ExperimentConfig& config)
{
    if (config.n_runs == 0) {
        throw ConfigError("n_runs must be positive");
    }
    VsoParams params = config.params;
    if (config.algorithm != Algorithm::Vso) {
        params.n_im = 0;
    }
    params.validate();
    if (config.algorithm == Algorithm::De) {
        DeParams{params.n_pop, params.de_crossover_rate, params.de_differential_weight}.validate();
    }
}

} // namespace

Algorithm parse_algorithm(std::string_view text)
{
    if (text == "vso") return Algorithm::Vso;
    if (text == "vso-no-import") return Algorithm::VsoNoImport;
    if (text == "de") return Algorithm::De;
    throw ConfigError("unknown algorithm '" + std::string(text) + "' (expected vso, vso-no-import or de)");
}

std::string to_string(Algorithm algorithm)
{
    switch (algorithm) {
    case Algorithm::Vso: return "vso";
    case Algorithm::VsoNoImport: return "vso-no-import";
    case Algorithm::De: return "de";
    }
    return "unknown";
}

void apply_param_override(VsoParams& params, std::string_view assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError("parameter override '" + std::string(assignment) + "' is not of the form key=value");
    }
    const std::string_view key = trim(assignment.substr(0, eq));
    const std::string_view value = trim(assignment.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
        throw ConfigError("unknown parameter '" + std::string(key) + "'");
    }
    it->second(params, key, value);
}

std::vector<std::string> param_override_keys()
{
    std::vector<std::string> keys;
    for (const auto& [key, setter] : setters()) {
        keys.push_back(key);
    }
    return keys;
}

SummaryRow summarize(const std::vector<RunRecord>& records)
{
    SummaryRow row;
    row.runs = records.size();
    if (records.empty()) {
        return row;
    }
    const auto n = static_cast<double>(records.size());
    double sum = 0.0;
    double time = 0.0;
    row.best = records.front().best_fitness;
    row.worst = records.front().best_fitness;
    for (const RunRecord& r : records) {
        sum += r.best_fitness;
        time += r.wall_time;
        row.best = std::min(row.best, r.best_fitness);
        row.worst = std::max(row.worst, r.best_fitness);
    }
    row.mean = sum / n;
    row.time_seconds = time / n;
    // Rounding can push the mean of identical values outside [best, worst].
    row.mean = std::clamp(row.mean, row.best, row.worst);
    if (records.size() > 1) {
        double ss = 0.0;
        for (const RunRecord& r : records) {
            const double d = r.best_fitness - row.mean;
            ss += d * d;
        }
        row.std = std::sqrt(ss / (n - 1.0));
    }
    return row;
}

Objective make_objective(const ExperimentConfig& config)
{
    if (config.kind == ProblemKind::Benchmark) {
        return make_benchmark(config.function, config.dimension);
    }
    const auto ingested = portfolio::ingest_prices(config.prices);
    portfolio::PortfolioSpec spec;
    spec.moments = portfolio::estimate_moments(ingested.prices);
    spec.risk_free = portfolio::risk_free_per_period(config.risk_free, config.risk_free_as_quoted);
    spec.allow_short = config.allow_short;
    return portfolio::make_portfolio_objective(spec, problem_label(config));
}

std::vector<RunRecord> run_trials_serial(const ExperimentConfig& config, const Objective& objective)
{
    check_runnable(config);
    std::vector<RunRecord> records;
    records.reserve(config.n_runs);
    for (std::size_t k = 0; k < config.n_runs; ++k) {
        records.push_back(run_one(config, objective, k));
    }
    return records;
}

namespace {

struct TrialOutcome {
    std::vector<RunRecord> completed;
    std::exception_ptr failure;
};

TrialOutcome run_trials_collecting(const ExperimentConfig& config, const Objective& objective)
{
    check_runnable(config);
    const auto n = static_cast<std::ptrdiff_t>(config.n_runs);
    std::vector<RunRecord> records(config.n_runs);
    std::vector<std::exception_ptr> errors(config.n_runs);

#pragma omp parallel for schedule(dynamic, 1) if (config.parallel_runs)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        try {
            records[idx] = run_one(config, objective, idx);
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    }

    TrialOutcome outcome;
    for (std::size_t k = 0; k < config.n_runs; ++k) {
        if (errors[k]) {
            if (!outcome.failure) {
                outcome.failure = errors[k];
            }
        } else {
            outcome.completed.push_back(std::move(records[k]));
        }
    }
    return outcome;
}

} // namespace

std::vector<RunRecord> run_trials(const ExperimentConfig& config, const Objective& objective)
{
    TrialOutcome outcome = run_trials_collecting(config, objective);
    if (outcome.failure) {
        std::rethrow_exception(outcome.failure);
    }
    return std::move(outcome.completed);
}

ExperimentResult run_experiment(const ExperimentConfig& config)
{
    return run_experiment(config, make_objective(config));
}

ExperimentResult run_experiment(const ExperimentConfig& config, const Objective& objective)
{
    ExperimentResult result;
    result.problem_label = problem_label(config);
    TrialOutcome outcome = run_trials_collecting(config, objective);
    result.records = std::move(outcome.completed);

    result.summary = summarize(result.records);
    result.summary.algorithm = to_string(config.algorithm);
    result.summary.function = result.problem_label;
    result.summary.dimension = objective.dimension();
    if (config.kind == ProblemKind::Benchmark && !result.records.empty()) {
        const BenchmarkSpec spec = benchmark_spec(parse_benchmark_id(config.function), config.dimension);
        if (spec.known_optimum) {
            result.summary.mean_error = fitness_error(result.summary.mean, spec);
        }
    }

    if (!config.output_dir.empty()) {
        export_results(config.output_dir, result.summary, result.records);
    }
    if (outcome.failure) {
        std::rethrow_exception(outcome.failure);
    }
    return result;
}

std::vector<double> competition_ranks(const std::vector<double>& values)
{
    std::vector<double> ranks(values.size());
    for (std::size_t a = 0; a < values.size(); ++a) {
        std::size_t better = 0;
        for (std::size_t b = 0; b < values.size(); ++b) {
            if (values[b] < values[a]) {
                ++better;
            }
        }
        ranks[a] = static_cast<double>(better + 1);
    }
    return ranks;
}

RankSummary rank_algorithms(const std::vector<SummaryRow>& rows)
{
    RankSummary summary;
    std::vector<std::string> problems;
    for (const SummaryRow& row : rows) {
        if (std::find(summary.algorithms.begin(), summary.algorithms.end(), row.algorithm) == summary.algorithms.end()) {
            summary.algorithms.push_back(row.algorithm);
        }
        const std::string key = row.function + "/D" + std::to_string(row.dimension);
        if (std::find(problems.begin(), problems.end(), key) == problems.end()) {
            problems.push_back(key);
        }
    }
    const std::size_t n_alg = summary.algorithms.size();
    summary.problems = problems.size();
    summary.avg_fitness_rank.assign(n_alg, 0.0);
    summary.avg_time_rank.assign(n_alg, 0.0);
    if (problems.empty()) {
        return summary;
    }

    for (const std::string& problem : problems) {
        std::vector<double> means(n_alg);
        std::vector<double> times(n_alg);
        for (std::size_t a = 0; a < n_alg; ++a) {
            const auto it = std::find_if(rows.begin(), rows.end(), [&](const SummaryRow& r) {
                return r.algorithm == summary.algorithms[a] &&
                       r.function + "/D" + std::to_string(r.dimension) == problem;
            });
            if (it == rows.end()) {
                throw IncompleteMatrixError("algorithm '" + summary.algorithms[a] + "' has no result for " + problem);
            }
            means[a] = it->mean;
            times[a] = it->time_seconds;
        }
        const auto fr = competition_ranks(means);
        const auto tr = competition_ranks(times);
        for (std::size_t a = 0; a < n_alg; ++a) {
            summary.avg_fitness_rank[a] += fr[a];
            summary.avg_time_rank[a] += tr[a];
        }
    }
    for (std::size_t a = 0; a < n_alg; ++a) {
        summary.avg_fitness_rank[a] /= static_cast<double>(problems.size());
        summary.avg_time_rank[a] /= static_cast<double>(problems.size());
    }
    return summary;
}

} // namespace vso
