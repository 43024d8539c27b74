#pragma once

#include "vso/objective.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace vso {

/// The sixteen classical test functions. F1-F8 are uni-modal, F9-F16
/// multi-modal.
enum class BenchmarkId : int {
    F1 = 1, F2, F3, F4, F5, F6, F7, F8, F9, F10, F11, F12, F13, F14, F15, F16
};

inline constexpr std::size_t kBenchmarkCount = 16;

struct BenchmarkSpec {
    BenchmarkId id = BenchmarkId::F1;
    std::string name;
    std::size_t dimension = 0;
    double lower = 0.0;
    double upper = 0.0;
    /// f(x*) where tabled; absent for Michalewicz above two dimensions.
    std::optional<double> known_optimum;
};

/// Parses "F1".."F16" (case-insensitive). Throws ConfigError otherwise.
[[nodiscard]] BenchmarkId parse_benchmark_id(std::string_view text);
[[nodiscard]] std::string to_string(BenchmarkId id);
[[nodiscard]] std::array<BenchmarkId, kBenchmarkCount> all_benchmarks() noexcept;

/// Throws ConfigError for dimension 0.
[[nodiscard]] BenchmarkSpec benchmark_spec(BenchmarkId id, std::size_t dimension);

[[nodiscard]] Objective make_benchmark(BenchmarkId id, std::size_t dimension);
[[nodiscard]] Objective make_benchmark(std::string_view id, std::size_t dimension);

/// Raw evaluation of one function; x may have any positive length.
[[nodiscard]] double evaluate_benchmark(BenchmarkId id, std::span<const double> x);

/// f(x) - f(x*). Throws UnsupportedMetricError when f(x*) is not tabled.
[[nodiscard]] double fitness_error(double f_x, const BenchmarkSpec& spec);

namespace functions {

double sphere(std::span<const double> x);
double brown(std::span<const double> x);
double ellipsoid(std::span<const double> x);
double schwefel_2_21(std::span<const double> x);
double weighted_sphere(std::span<const double> x);
double sum_of_different_powers(std::span<const double> x);
double zakharov(std::span<const double> x);
double schwefel_1_2(std::span<const double> x);
double rastrigin(std::span<const double> x);
double ackley(std::span<const double> x);
double griewank(std::span<const double> x);
double styblinski_tang(std::span<const double> x);
double csendes(std::span<const double> x);
double xin_she_yang_2(std::span<const double> x);
double alpine_1(std::span<const double> x);
double michalewicz(std::span<const double> x);

} // namespace functions

} // namespace vso
