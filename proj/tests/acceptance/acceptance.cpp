// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "vso/benchmarks.hpp"
#include "vso/de.hpp"
#include "vso/engine.hpp"
#include "vso/error.hpp"
#include "vso/experiment.hpp"
#include "vso/portfolio.hpp"
#include "vso/random.hpp"
#include "vso/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace vso;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<Outcome()>& body)
{
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%2d] %s | %s | %.1fs\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) {
        ++failures;
    }
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<double> final_fitness(const std::string& function, std::size_t dim, std::size_t runs,
                                  std::size_t iterations = 10000)
{
    ExperimentConfig config;
    config.algorithm = Algorithm::VsoNoImport;
    config.function = function;
    config.dimension = dim;
    config.n_runs = runs;
    config.base_seed = 1;
    config.params.max_iterations = iterations;
    const auto records = run_trials(config, make_objective(config));
    std::vector<double> out;
    for (const RunRecord& r : records) {
        out.push_back(r.best_fitness);
    }
    return out;
}

std::string list(const std::vector<double>& values)
{
    std::string s;
    for (const double v : values) {
        s += (s.empty() ? "" : " ") + sci(v);
    }
    return s;
}

Outcome median_at_most(const std::string& function, std::size_t dim, std::size_t runs, double threshold)
{
    const auto values = final_fitness(function, dim, runs);
    const double m = median(values);
    return {m <= threshold, "median " + sci(m) + " <= " + sci(threshold) + " (runs: " + list(values) + ")"};
}

Host make_host_of(HostType type, RnaVector rna, double fitness)
{
    Host h;
    h.type = type;
    h.intensity_m.assign(rna.size(), 0.0);
    h.rna = std::move(rna);
    h.fitness = fitness;
    h.fitness_stale = false;
    return h;
}

bool within_4se(double freq, double p, double n)
{
    return std::abs(freq - p) <= 4.0 * std::sqrt(p * (1.0 - p) / n);
}

Outcome operator_properties()
{
    VsoParams p;
    p.n_pop = 2;
    p.n_im = 0;
    std::ostringstream detail;
    bool ok = true;
    auto check = [&](bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << what << " failed; ";
        }
    };

    SeededRandom rng(2024);
    const int trials = 10000;
    for (const HostType type : {HostType::Critical, HostType::Severe, HostType::Mild}) {
        int hits = 0;
        for (int t = 0; t < trials; ++t) {
            Population pop{make_host_of(type, {1.0}, 1.0), make_host_of(HostType::Healthy, {5.0}, 9.0)};
            hits += static_cast<int>(infect(pop, p, rng).infections);
        }
        const double freq = static_cast<double>(hits) / trials;
        detail << "rate(" << to_string(type) << ")=" << freq << " ";
        check(within_4se(freq, p.infection_rate(type), trials), "infection rate " + std::string(to_string(type)));
    }

    int mild = 0;
    for (int done = 0; done < trials;) {
        Population pop{make_host_of(HostType::Critical, {1.0}, 1.0), make_host_of(HostType::Healthy, {5.0}, 9.0)};
        if (infect(pop, p, rng).infections == 0) {
            continue;
        }
        ++done;
        mild += pop[1].type == HostType::Mild ? 1 : 0;
    }
    const double mild_freq = static_cast<double>(mild) / trials;
    detail << "mild_ratio=" << mild_freq << " ";
    check(within_4se(mild_freq, 1.0 - p.p_c_hs, trials), "transformation ratio");

    std::size_t copied = 0;
    std::size_t genes = 0;
    for (int done = 0; done < trials;) {
        Population pop{make_host_of(HostType::Mild, RnaVector(4, 1.0), 1.0),
                       make_host_of(HostType::Healthy, RnaVector(4, 0.0), 9.0)};
        if (infect(pop, p, rng).infections == 0) {
            continue;
        }
        ++done;
        genes += 4;
        copied += static_cast<std::size_t>(std::count(pop[1].rna.begin(), pop[1].rna.end(), 1.0));
    }
    const double copy_freq = static_cast<double>(copied) / static_cast<double>(genes);
    detail << "gene_copy=" << copy_freq << " ";
    check(within_4se(copy_freq, 0.5, static_cast<double>(genes)), "gene copy");

    // Recovery does nothing while a healthy host remains.
    {
        const Objective obj = make_benchmark(BenchmarkId::F1, 2);
        VsoParams rp;
        rp.n_pop = 4;
        Population pop{make_host_of(HostType::Critical, {0, 0}, 0.0), make_host_of(HostType::Severe, {1, 1}, 2.0),
                       make_host_of(HostType::Mild, {2, 2}, 8.0), make_host_of(HostType::Healthy, {3, 3}, 18.0)};
        const Population before = pop;
        const std::size_t changed = recover(pop, rp, obj, rng);
        bool same = changed == 0;
        for (std::size_t k = 0; k < pop.size(); ++k) {
            same = same && pop[k].rna == before[k].rna && pop[k].type == before[k].type;
        }
        check(same, "recovery guard");
    }

    // Severe intensity follows delta^k to 1e-12 relative.
    {
        const Objective obj = make_benchmark(BenchmarkId::F1, 2);
        Host h = make_host_of(HostType::Severe, {1.0, -1.0}, 2.0);
        h.intensity_s = 3.7;
        Population pop{h};
        VsoParams mp;
        double worst_rel = 0.0;
        for (int k = 1; k <= 200; ++k) {
            mutate(pop, GBest{{0.0, 0.0}, 0.0}, mp, obj, rng);
            const double expected = std::pow(mp.delta_s, k) * 3.7;
            worst_rel = std::max(worst_rel, std::abs(pop[0].intensity_s - expected) / expected);
        }
        detail << "decay_rel=" << sci(worst_rel) << " ";
        check(worst_rel <= 1e-12, "severe decay");
    }

    // Full runs on F9: single critical, critical untouched by mutation, gbest monotone.
    {
        const Objective obj = make_benchmark(BenchmarkId::F9, 10);
        VsoParams rp;
        rp.max_iterations = 1000;
        VsoEngine engine(obj, rp, 5);
        double last = std::numeric_limits<double>::infinity();
        bool single = true;
        bool monotone = true;
        while (!engine.done()) {
            engine.step();
            single = single && std::count_if(engine.population().begin(), engine.population().end(),
                                             [](const Host& x) { return x.type == HostType::Critical; }) == 1;
            monotone = monotone && engine.gbest().fitness <= last;
            last = engine.gbest().fitness;
        }
        check(single, "single critical");
        check(monotone, "gbest monotone");

        SeededRandom mrng(6);
        Population pop = initialize(rp, obj, mrng);
        evaluate(pop, obj);
        GBest gbest;
        std::optional<std::size_t> crit;
        bool immutable = true;
        for (int k = 0; k < 200; ++k) {
            crit = select_critical(pop, crit, gbest);
            const RnaVector before = pop[*crit].rna;
            mutate(pop, gbest, rp, obj, mrng);
            immutable = immutable && pop[*crit].rna == before;
            evaluate(pop, obj);
        }
        check(immutable, "critical immutability");
    }

    return {ok, detail.str()};
}

Outcome trace_determinism()
{
    const fs::path a = fs::temp_directory_path() / "vso_acceptance_det_a";
    const fs::path b = fs::temp_directory_path() / "vso_acceptance_det_b";
    fs::remove_all(a);
    fs::remove_all(b);
    ExperimentConfig config;
    config.function = "F10";
    config.dimension = 10;
    config.params.max_iterations = 500;
    config.n_runs = 3;
    config.base_seed = 42;
    config.output_dir = a;
    (void)run_experiment(config);
    config.output_dir = b;
    (void)run_experiment(config);
    std::size_t files = 0;
    bool identical = true;
    for (const auto& entry : fs::directory_iterator(a / "traces")) {
        ++files;
        identical = identical && read_text_file(entry.path()) == read_text_file(b / "traces" / entry.path().filename());
    }
    fs::remove_all(a);
    fs::remove_all(b);
    return {identical && files == 3, std::to_string(files) + " trace files compared byte for byte"};
}

Outcome de_sanity()
{
    const Objective obj = make_benchmark(BenchmarkId::F1, 10);
    DeParams params;
    params.pop_size = 20;
    std::vector<double> bests;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        bests.push_back(run_de(obj, params, 500, seed).best_fitness);
    }
    const double worst = *std::max_element(bests.begin(), bests.end());
    return {worst <= 1e-3, "worst of 3 seeds " + sci(worst) + " <= 1e-3"};
}

// Sharpe ratio of explicit weights, computed independently of the library.
double direct_sharpe(const std::vector<double>& w, const std::vector<double>& mu, const std::vector<double>& cov,
                     double rf)
{
    const std::size_t n = w.size();
    double ret = 0.0;
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ret += w[i] * mu[i];
        for (std::size_t j = 0; j < n; ++j) {
            var += w[i] * w[j] * cov[i * n + j];
        }
    }
    return (ret - rf) / var;
}

double vso_sharpe(const std::vector<double>& mu, const std::vector<double>& cov, double rf, std::string& runs)
{
    portfolio::PortfolioSpec spec;
    spec.moments.mean_returns = mu;
    spec.moments.covariance = cov;
    spec.risk_free = rf;
    const Objective obj = portfolio::make_portfolio_objective(spec);
    ExperimentConfig config;
    config.params.max_iterations = kDefaultPortfolioIterations;
    config.n_runs = 3;
    config.base_seed = 1;
    std::vector<double> sharpe;
    for (const RunRecord& r : run_trials(config, obj)) {
        const auto w = *portfolio::normalize_weights(r.best_rna);
        sharpe.push_back(direct_sharpe(w, mu, cov, rf));
        runs += (runs.empty() ? "" : " ") + std::to_string(sharpe.back());
    }
    return median(sharpe);
}

Outcome portfolio_oracle()
{
    std::ostringstream detail;
    bool ok = true;

    {
        const std::vector<double> mu{0.002, 0.001};
        const std::vector<double> cov{0.0004, 0.0, 0.0, 0.0001};
        double oracle = -1.0;
        for (int k = 0; k <= 1000; ++k) {
            const double a = k * 1e-3;
            oracle = std::max(oracle, direct_sharpe({a, 1.0 - a}, mu, cov, 0.0));
        }
        std::string runs;
        const double got = vso_sharpe(mu, cov, 0.0, runs);
        ok = ok && got >= 0.99 * oracle;
        detail << "2-asset vso " << got << " vs grid " << oracle << " [" << runs << "]; ";
    }

    {
        const std::vector<double> mu{0.0012, 0.0008, 0.0015, 0.0005, 0.0010};
        const std::vector<double> sd{0.020, 0.012, 0.025, 0.008, 0.015};
        const double corr[5][5] = {{1.0, 0.3, 0.5, 0.1, 0.2},
                                   {0.3, 1.0, 0.2, 0.0, 0.4},
                                   {0.5, 0.2, 1.0, 0.1, 0.3},
                                   {0.1, 0.0, 0.1, 1.0, -0.2},
                                   {0.2, 0.4, 0.3, -0.2, 1.0}};
        std::vector<double> cov(25);
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) {
                cov[static_cast<std::size_t>(i * 5 + j)] = corr[i][j] * sd[static_cast<std::size_t>(i)] * sd[static_cast<std::size_t>(j)];
            }
        }
        const double rf = 0.0257 / 252.0;
        SeededRandom rng(123);
        double oracle = -1e300;
        std::vector<double> w(5);
        for (int s = 0; s < 1000000; ++s) {
            double total = 0.0;
            for (double& v : w) {
                v = rng.uniform();
                total += v;
            }
            for (double& v : w) {
                v /= total;
            }
            oracle = std::max(oracle, direct_sharpe(w, mu, cov, rf));
        }
        std::string runs;
        const double got = vso_sharpe(mu, cov, rf, runs);
        ok = ok && got >= 0.99 * oracle;
        detail << "5-asset vso " << got << " vs sampled " << oracle << " [" << runs << "]";
    }
    return {ok, detail.str()};
}

Outcome benchmark_optima()
{
    std::ostringstream detail;
    bool ok = true;
    for (const BenchmarkId id : all_benchmarks()) {
        const std::size_t dim = id == BenchmarkId::F16 ? 2 : 30;
        RnaVector x(dim, 0.0);
        double tol = 1e-6;
        if (id == BenchmarkId::F12) {
            x.assign(dim, -2.903534);
            tol = 1e-2;
        } else if (id == BenchmarkId::F16) {
            x = {2.20290552014618, 1.57079632677565};
            tol = 1e-3;
        }
        const double value = make_benchmark(id, dim)(x);
        const double expected = *benchmark_spec(id, dim).known_optimum;
        if (!(std::abs(value - expected) <= tol)) {
            ok = false;
            detail << to_string(id) << "=" << value << " expected " << expected << "; ";
        }
    }
    if (ok) {
        detail << "16 functions within tolerance";
    }
    return {ok, detail.str()};
}

SummaryRow summary_row(const std::string& algo, const std::string& fn, double mean, double time)
{
    SummaryRow r;
    r.algorithm = algo;
    r.function = fn;
    r.dimension = 30;
    r.mean = r.best = r.worst = mean;
    r.time_seconds = time;
    return r;
}

Outcome rank_examples()
{
    bool ok = true;
    const auto dominant = rank_algorithms({summary_row("A", "F1", 1, 1), summary_row("B", "F1", 2, 1),
                                           summary_row("A", "F2", 1, 1), summary_row("B", "F2", 2, 1)});
    ok = ok && dominant.avg_fitness_rank == std::vector<double>{1.0, 2.0};
    const auto tie = rank_algorithms({summary_row("A", "F1", 3, 1), summary_row("B", "F1", 3, 2)});
    ok = ok && tie.avg_fitness_rank == std::vector<double>{1.0, 1.0};
    const auto single = rank_algorithms({summary_row("A", "F1", 3, 1), summary_row("A", "F2", 5, 2)});
    ok = ok && single.avg_fitness_rank == std::vector<double>{1.0};
    bool threw = false;
    try {
        (void)rank_algorithms({summary_row("A", "F1", 1, 1), summary_row("B", "F2", 1, 1)});
    } catch (const IncompleteMatrixError&) {
        threw = true;
    }
    ok = ok && threw;
    return {ok, "dominant, tie, single-algorithm and missing-cell examples"};
}

} // namespace

int main()
{
    criterion(1, "F1 D=30 median <= 1e-10", [] { return median_at_most("F1", 30, 5, 1e-10); });
    criterion(2, "F9 D=30 median <= 1e-8", [] { return median_at_most("F9", 30, 5, 1e-8); });
    criterion(2, "F11 D=30 median <= 1e-8", [] { return median_at_most("F11", 30, 5, 1e-8); });
    criterion(3, "F10 D=30 median <= 1e-8", [] { return median_at_most("F10", 30, 5, 1e-8); });
    criterion(4, "F1 D=100 median <= 1e-8", [] { return median_at_most("F1", 100, 3, 1e-8); });
    criterion(5, "F12 D=30 median in [-1175, -950]", [] {
        const auto values = final_fitness("F12", 30, 5);
        const double m = median(values);
        return Outcome{m >= -1175.0 && m <= -950.0, "median " + std::to_string(m) + " (runs: " + list(values) + ")"};
    });
    criterion(6, "operator statistics and invariants", operator_properties);
    criterion(7, "identical seeds give identical trace files", trace_determinism);
    criterion(8, "DE 10-D sphere best <= 1e-3", de_sanity);
    criterion(9, "portfolio Sharpe within 1% of oracle", portfolio_oracle);
    criterion(10, "benchmark optima", benchmark_optima);
    criterion(11, "rank synthetic examples", rank_examples);
    std::printf("%s: %d failing\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
