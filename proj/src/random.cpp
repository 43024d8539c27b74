#include "vso/random.hpp"

namespace vso {

double SeededRandom::uniform()
{
    // 53 random mantissa bits -> exactly representable multiples of 2^-53.
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SeededRandom::normal(double stddev)
{
    return stddev * normal_(engine_);
}

std::size_t SeededRandom::index(std::size_t n)
{
    std::uniform_int_distribution<std::size_t> dist(0, n - 1);
    return dist(engine_);
}

std::uint64_t mix_seed(std::uint64_t seed) noexcept
{
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace vso
