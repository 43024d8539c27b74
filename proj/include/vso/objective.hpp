#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace vso {

/// A candidate solution: one real value per decision variable.
using RnaVector = std::vector<double>;

/// A box-constrained minimization target.
///
/// The evaluation callable must be pure: parallel population evaluation calls
/// it concurrently from several threads.
struct Objective {
    std::string name;
    std::vector<double> lower;
    std::vector<double> upper;
    std::function<double(std::span<const double>)> evaluate;

    [[nodiscard]] std::size_t dimension() const noexcept { return lower.size(); }
    double operator()(std::span<const double> x) const { return evaluate(x); }
};

/// Throws ConfigError unless D >= 1, the bound vectors agree in length,
/// every lower < upper, and an evaluation callable is set.
void validate(const Objective& objective);

/// Elementwise clamp into the objective's box. Non-finite coordinates are
/// repaired (+inf -> upper, -inf and NaN -> lower). Returns how many
/// coordinates were non-finite.
std::size_t clamp_to_bounds(std::span<double> x, const Objective& objective);

} // namespace vso
