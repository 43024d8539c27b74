#include "vso/benchmarks.hpp"

#include "vso/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace vso {

namespace functions {

double sphere(std::span<const double> x)
{
    double sum = 0.0;
    for (const double v : x) {
        sum += v * v;
    }
    return sum;
}

double brown(std::span<const double> x)
{
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i] * x[i];
        const double b = x[i + 1] * x[i + 1];
        sum += std::pow(a, b + 1.0) + std::pow(b, a + 1.0);
    }
    return sum;
}

// Printed form: every coordinate carries the same factor 1000^(1/(D-1)).
double ellipsoid(std::span<const double> x)
{
    const std::size_t dim = x.size();
    const double factor = dim > 1 ? std::pow(1000.0, 1.0 / static_cast<double>(dim - 1)) : 1.0;
    double sum = 0.0;
    for (const double v : x) {
        const double scaled = factor * v;
        sum += scaled * scaled;
    }
    return sum;
}

double schwefel_2_21(std::span<const double> x)
{
    double worst = 0.0;
    for (const double v : x) {
        worst = std::max(worst, std::abs(v));
    }
    return worst;
}

double weighted_sphere(std::span<const double> x)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += static_cast<double>(i + 1) * x[i] * x[i];
    }
    return sum;
}

double sum_of_different_powers(std::span<const double> x)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += std::pow(std::abs(x[i]), static_cast<double>(i + 2));
    }
    return sum;
}

double zakharov(std::span<const double> x)
{
    double squares = 0.0;
    double weighted = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        squares += x[i] * x[i];
        weighted += 0.5 * static_cast<double>(i + 1) * x[i];
    }
    const double w2 = weighted * weighted;
    return squares + w2 + w2 * w2;
}

double schwefel_1_2(std::span<const double> x)
{
    double sum = 0.0;
    double prefix = 0.0;
    for (const double v : x) {
        prefix += v;
        sum += prefix * prefix;
    }
    return sum;
}

double rastrigin(std::span<const double> x)
{
    double sum = 10.0 * static_cast<double>(x.size());
    for (const double v : x) {
        sum += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
    }
    return sum;
}

// The cosine term uses cos(2 x_i) exactly as tabulated.
double ackley(std::span<const double> x)
{
    const double n = static_cast<double>(x.size());
    double squares = 0.0;
    double cosines = 0.0;
    for (const double v : x) {
        squares += v * v;
        cosines += std::cos(2.0 * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(squares / n)) - std::exp(cosines / n) + 20.0 + std::numbers::e;
}

double griewank(std::span<const double> x)
{
    double sum = 0.0;
    double product = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += x[i] * x[i] / 4000.0;
        product *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return 1.0 + sum - product;
}

double styblinski_tang(std::span<const double> x)
{
    double sum = 0.0;
    for (const double v : x) {
        const double v2 = v * v;
        sum += v2 * v2 - 16.0 * v2 + 5.0 * v;
    }
    return 0.5 * sum;
}

double csendes(std::span<const double> x)
{
    double sum = 0.0;
    for (const double v : x) {
        if (v == 0.0) {
            continue; // limit of the summand at the singularity
        }
        const double v3 = v * v * v;
        sum += v3 * v3 * (2.0 + std::sin(1.0 / v));
    }
    return sum;
}

double xin_she_yang_2(std::span<const double> x)
{
    double abs_sum = 0.0;
    double sin_sum = 0.0;
    for (const double v : x) {
        abs_sum += std::abs(v);
        sin_sum += std::sin(v * v);
    }
    return abs_sum * std::exp(-sin_sum);
}

double alpine_1(std::span<const double> x)
{
    double sum = 0.0;
    for (const double v : x) {
        sum += std::abs(v * std::sin(v) + 0.1 * v);
    }
    return sum;
}

double michalewicz(std::span<const double> x)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double inner = std::sin(static_cast<double>(i + 1) * x[i] * x[i] / std::numbers::pi);
        sum += std::sin(x[i]) * std::pow(inner, 20.0);
    }
    return -sum;
}

} // namespace functions

namespace {

struct Entry {
    const char* name;
    double lower;
    double upper;
    double (*fn)(std::span<const double>);
};

constexpr double kPi = std::numbers::pi;

const std::array<Entry, kBenchmarkCount> kTable{{
    {"Sphere", -1000.0, 1000.0, &functions::sphere},
    {"Brown", -1.0, 4.0, &functions::brown},
    {"Ellipsoid", -5.12, 5.12, &functions::ellipsoid},
    {"Schwefel 2.21", -100.0, 100.0, &functions::schwefel_2_21},
    {"Weighted Sphere", -5.12, 5.12, &functions::weighted_sphere},
    {"Sum of Different Powers", -1.0, 1.0, &functions::sum_of_different_powers},
    {"Zakharov", -5.0, 10.0, &functions::zakharov},
    {"Schwefel 1.2", -100.0, 100.0, &functions::schwefel_1_2},
    {"Rastrigin", -5.12, 5.12, &functions::rastrigin},
    {"Ackley", -32.0, 32.0, &functions::ackley},
    {"Griewank", -100.0, 100.0, &functions::griewank},
    {"Styblinski-Tang", -5.0, 5.0, &functions::styblinski_tang},
    {"Csendes", -1.0, 1.0, &functions::csendes},
    {"Xin-She Yang N.2", -2.0 * kPi, 2.0 * kPi, &functions::xin_she_yang_2},
    {"Alpine N.1", -10.0, 10.0, &functions::alpine_1},
    {"Michalewicz", 0.0, kPi, &functions::michalewicz},
}};

const Entry& entry(BenchmarkId id)
{
    const int k = static_cast<int>(id);
    if (k < 1 || k > static_cast<int>(kBenchmarkCount)) {
        throw ConfigError("unknown benchmark id " + std::to_string(k));
    }
    return kTable[static_cast<std::size_t>(k - 1)];
}

constexpr double kStyblinskiTangPerDimension = -39.16599;
constexpr double kMichalewicz2D = -1.8013;

} // namespace

BenchmarkId parse_benchmark_id(std::string_view text)
{
    if (text.size() >= 2 && (text[0] == 'F' || text[0] == 'f')) {
        int value = 0;
        bool digits = true;
        for (const char c : text.substr(1)) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                digits = false;
                break;
            }
            value = value * 10 + (c - '0');
            if (value > 99) {
                break;
            }
        }
        if (digits && value >= 1 && value <= static_cast<int>(kBenchmarkCount)) {
            return static_cast<BenchmarkId>(value);
        }
    }
    throw ConfigError("unknown benchmark function '" + std::string(text) + "' (expected F1..F16)");
}

std::string to_string(BenchmarkId id)
{
    return "F" + std::to_string(static_cast<int>(id));
}

std::array<BenchmarkId, kBenchmarkCount> all_benchmarks() noexcept
{
    std::array<BenchmarkId, kBenchmarkCount> ids{};
    for (std::size_t k = 0; k < kBenchmarkCount; ++k) {
        ids[k] = static_cast<BenchmarkId>(k + 1);
    }
    return ids;
}

BenchmarkSpec benchmark_spec(BenchmarkId id, std::size_t dimension)
{
    const Entry& e = entry(id);
    if (dimension == 0) {
        throw ConfigError("benchmark dimension must be at least 1");
    }
    BenchmarkSpec spec{id, e.name, dimension, e.lower, e.upper, 0.0};
    if (id == BenchmarkId::F12) {
        spec.known_optimum = kStyblinskiTangPerDimension * static_cast<double>(dimension);
    } else if (id == BenchmarkId::F16) {
        spec.known_optimum = dimension == 2 ? std::optional<double>(kMichalewicz2D) : std::nullopt;
    }
    return spec;
}

Objective make_benchmark(BenchmarkId id, std::size_t dimension)
{
    const BenchmarkSpec spec = benchmark_spec(id, dimension);
    const Entry& e = entry(id);
    return Objective{to_string(id), std::vector<double>(dimension, spec.lower), std::vector<double>(dimension, spec.upper),
                     e.fn};
}

Objective make_benchmark(std::string_view id, std::size_t dimension)
{
    return make_benchmark(parse_benchmark_id(id), dimension);
}

double evaluate_benchmark(BenchmarkId id, std::span<const double> x)
{
    return entry(id).fn(x);
}

double fitness_error(double f_x, const BenchmarkSpec& spec)
{
    if (!spec.known_optimum) {
        throw UnsupportedMetricError(to_string(spec.id) + " has no tabled optimum at D=" + std::to_string(spec.dimension));
    }
    return f_x - *spec.known_optimum;
}

} // namespace vso
