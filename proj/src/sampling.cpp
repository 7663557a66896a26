#include "aescap/sampling.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "aescap/errors.hpp"

namespace aescap {

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw DataError("bounded_draw: bound must be > 0");
  // Accept only draws below the largest multiple of bound, then reduce.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t value = rng();
  while (value >= limit) value = rng();
  return value % bound;
}

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

std::vector<std::size_t> sample_without_replacement(std::size_t population, std::size_t n,
                                                    std::uint64_t seed) {
  if (n > population)
    throw DataError("sample_without_replacement: requested " + std::to_string(n) + " of " +
                    std::to_string(population));
  std::vector<std::size_t> indices(population);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(bounded_draw(rng, population - i));
    std::swap(indices[i], indices[j]);
  }
  indices.resize(n);
  std::sort(indices.begin(), indices.end());
  return indices;
}

}  // namespace aescap
