#include "powergrad/rng.hpp"

namespace powergrad {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t keyed_bits(std::uint64_t seed, std::uint64_t counter) {
  return mix64(mix64(seed + kGolden) + (counter + 1) * kGolden);
}

double keyed_uniform01(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(keyed_bits(seed, counter) >> 11) * 0x1.0p-53;
}

}  // namespace powergrad
