#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace vso {

/// Source of the random draws consumed by every stochastic operator.
///
/// Operators take this interface by reference so tests can script exact
/// draw sequences. Production code uses SeededRandom.
class RandomSource {
public:
    virtual ~RandomSource() = default;

    /// Uniform draw in [0, 1).
    virtual double uniform() = 0;
    /// Normal draw with mean 0 and the given standard deviation.
    virtual double normal(double stddev) = 0;
    /// Uniform index in [0, n). n must be positive.
    virtual std::size_t index(std::size_t n) = 0;

    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }
};

/// Mersenne-Twister backed source. Sequences are a pure function of the seed.
class SeededRandom final : public RandomSource {
public:
    explicit SeededRandom(std::uint64_t seed) : engine_(seed) {}

    using RandomSource::uniform;
    double uniform() override;
    double normal(double stddev) override;
    std::size_t index(std::size_t n) override;

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// SplitMix64 finalizer; used to derive independent stream seeds.
[[nodiscard]] std::uint64_t mix_seed(std::uint64_t seed) noexcept;

} // namespace vso
