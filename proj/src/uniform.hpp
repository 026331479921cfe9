#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "kgen/errors.hpp"

namespace kgen::detail {

// Uniform variates on the open interval (0, 1): the top 53 bits of a 64-bit
// Mersenne twister draw, offset by half a unit in the last place.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : gen_(seed) {}

  double operator()() {
    constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
    return (static_cast<double>(gen_() >> 11) + 0.5) * kScale;
  }

 private:
  std::mt19937_64 gen_;
};

// Deterministic, well-separated seed for replicate `index` of `seed`
// (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Inversion sampling with a quantile taking u on the lower half and
// t = 1 - u on the upper half.
template <class Lower, class Upper>
std::vector<double> sample_by_inversion(std::size_t n, std::uint64_t seed, Lower&& lower,
                                        Upper&& upper) {
  if (n == 0) throw DomainError("sample size must be at least 1");
  UniformStream uniform(seed);
  std::vector<double> out(n);
  for (auto& v : out) {
    const double u = uniform();
    v = u <= 0.5 ? lower(u) : upper(1.0 - u);
  }
  return out;
}

}  // namespace kgen::detail
