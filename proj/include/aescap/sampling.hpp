#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace aescap {

// Uniform draw from [0, bound) via rejection sampling; unlike
// std::uniform_int_distribution the result is identical on every platform.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound);

// Uniform double in [lo, hi) from the top 53 bits of one draw.
double uniform_real(std::mt19937_64& rng, double lo, double hi);

// Partial Fisher-Yates selection of n distinct indices from [0, population),
// returned sorted ascending so sampled records keep corpus order. Throws
// DataError when population < n.
std::vector<std::size_t> sample_without_replacement(std::size_t population, std::size_t n,
                                                    std::uint64_t seed);

}  // namespace aescap
