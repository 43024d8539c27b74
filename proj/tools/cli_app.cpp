#include "cli_app.hpp"

#include "vso/error.hpp"
#include "vso/experiment.hpp"
#include "vso/portfolio.hpp"
#include "vso/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>

namespace vso::cli {

namespace {

struct SharedOptions {
    std::size_t iters = 0;
    std::size_t runs = kDefaultRuns;
    std::uint64_t seed = 0;
    std::string algo = "vso";
    bool no_import = false;
    bool serial = false;
    std::string out;
    std::vector<std::string> params;
};

const std::set<std::string> kFlagKeys{"no-import", "risk-free-annual", "serial"};

void add_shared(CLI::App& cmd, SharedOptions& opts, std::size_t default_iters)
{
    opts.iters = default_iters;
    cmd.add_option("--iters", opts.iters, "Iterations per run")->capture_default_str();
    cmd.add_option("--runs", opts.runs, "Independent runs")->capture_default_str();
    cmd.add_option("--seed", opts.seed, "Base seed; run k uses seed+k")->capture_default_str();
    cmd.add_option("--algo", opts.algo, "vso | vso-no-import | de")
        ->check(CLI::IsMember({"vso", "vso-no-import", "de"}))
        ->capture_default_str();
    cmd.add_flag("--no-import", opts.no_import, "Disable imported infection (same as --algo vso-no-import)");
    cmd.add_flag("--serial", opts.serial, "Execute runs one after another");
    cmd.add_option("--out", opts.out, "Output directory for summary and traces");
    cmd.add_option("--param", opts.params, "Algorithm override key=value (repeatable)");
    cmd.add_option("--config", "Flat key=value file mirroring these flags");
}

ExperimentConfig base_config(const SharedOptions& opts)
{
    ExperimentConfig config;
    config.algorithm = parse_algorithm(opts.algo);
    if (opts.no_import && config.algorithm == Algorithm::Vso) {
        config.algorithm = Algorithm::VsoNoImport;
    }
    for (const std::string& p : opts.params) {
        apply_param_override(config.params, p);
    }
    config.params.max_iterations = opts.iters;
    config.n_runs = opts.runs;
    config.base_seed = opts.seed;
    config.output_dir = opts.out;
    config.parallel_runs = !opts.serial;
    return config;
}

/// Expands `--config FILE` into ordinary arguments placed directly after the
/// subcommand, so anything typed on the command line takes precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args)
{
    std::vector<std::string> rest;
    std::vector<std::string> from_file;
    for (std::size_t k = 0; k < args.size(); ++k) {
        std::string file;
        if (args[k] == "--config") {
            if (k + 1 >= args.size()) {
                throw ConfigError("--config requires a file argument");
            }
            file = args[++k];
        } else if (args[k].rfind("--config=", 0) == 0) {
            file = args[k].substr(9);
        } else {
            rest.push_back(args[k]);
            continue;
        }
        std::ifstream in(file);
        if (!in) {
            throw IoError("cannot open config file '" + file + "'");
        }
        for (const CLI::ConfigItem& item : CLI::ConfigINI().from_config(in)) {
            const std::string key = item.name;
            if (kFlagKeys.count(key) != 0) {
                const std::string v = item.inputs.empty() ? "true" : item.inputs.front();
                if (v == "true" || v == "1" || v == "yes") {
                    from_file.push_back("--" + key);
                }
                continue;
            }
            for (const std::string& value : item.inputs) {
                from_file.push_back("--" + key);
                from_file.push_back(value);
            }
        }
    }
    if (from_file.empty() || rest.empty()) {
        return rest;
    }
    std::vector<std::string> merged{rest.front()};
    merged.insert(merged.end(), from_file.begin(), from_file.end());
    merged.insert(merged.end(), rest.begin() + 1, rest.end());
    return merged;
}

void report(std::ostream& out, const ExperimentResult& result, bool portfolio)
{
    out << summary_csv({result.summary});
    if (result.summary.mean_error) {
        out << "mean_error," << format_scientific(*result.summary.mean_error) << '\n';
    }
    if (portfolio && !result.records.empty()) {
        out << "best_sharpe_ratio," << std::setprecision(10) << portfolio::sharpe_from_fitness(result.summary.best)
            << '\n';
    }
}

} // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Virus spread optimization experiments", "vso"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    SharedOptions bench_opts;
    std::string function = "F1";
    std::size_t dim = 30;
    CLI::App* bench = app.add_subcommand("bench", "Run a benchmark function");
    bench->add_option("--function", function, "F1..F16")->capture_default_str();
    bench->add_option("--dim", dim, "Dimension")->capture_default_str();
    add_shared(*bench, bench_opts, kDefaultBenchmarkIterations);

    SharedOptions port_opts;
    std::string prices;
    std::string mode = "long";
    double risk_free = kDefaultQuotedRiskFree;
    bool risk_free_annual = false;
    CLI::App* port = app.add_subcommand("portfolio", "Optimize the Sharpe-ratio portfolio objective");
    port->add_option("--prices", prices, "CSV price file (date,SYM1,SYM2,...)")->required();
    port->add_option("--mode", mode, "long | longshort")->check(CLI::IsMember({"long", "longshort"}))->capture_default_str();
    port->add_option("--risk-free", risk_free, "Quoted annual risk-free rate")->capture_default_str();
    port->add_flag("--risk-free-annual", risk_free_annual, "Use the quoted rate per period without conversion");
    add_shared(*port, port_opts, kDefaultPortfolioIterations);

    std::vector<std::string> inputs;
    CLI::App* rank = app.add_subcommand("rank", "Average ranks across summary files");
    rank->add_option("--inputs", inputs, "Summary files (.csv or .json)")->required()->expected(1, -1);

    try {
        std::vector<std::string> args = expand_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        if (bench->parsed()) {
            ExperimentConfig config = base_config(bench_opts);
            config.kind = ProblemKind::Benchmark;
            config.function = function;
            config.dimension = dim;
            report(out, run_experiment(config), false);
        } else if (port->parsed()) {
            ExperimentConfig config = base_config(port_opts);
            config.kind = ProblemKind::Portfolio;
            config.prices = prices;
            config.allow_short = mode == "longshort";
            config.risk_free = risk_free;
            config.risk_free_as_quoted = risk_free_annual;
            report(out, run_experiment(config), true);
        } else if (rank->parsed()) {
            std::vector<SummaryRow> rows;
            for (const std::string& path : inputs) {
                auto loaded = load_summary(path);
                rows.insert(rows.end(), loaded.begin(), loaded.end());
            }
            const RankSummary ranks = rank_algorithms(rows);
            out << "Algorithm,AvgFitnessRank,AvgTimeRank\n";
            for (std::size_t a = 0; a < ranks.algorithms.size(); ++a) {
                out << ranks.algorithms[a] << ',' << std::setprecision(4) << ranks.avg_fitness_rank[a] << ','
                    << ranks.avg_time_rank[a] << '\n';
            }
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const InsufficientDataError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitOk;
}

} // namespace vso::cli
