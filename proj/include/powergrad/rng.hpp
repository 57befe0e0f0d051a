#pragma once

#include <cstdint>

namespace powergrad {

// SplitMix64 finalizer. keyed_bits is a pure map from (seed, counter) to 64
// bits, so any draw is addressable directly: sample i of a stream never
// depends on execution order or worker count.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t keyed_bits(std::uint64_t seed, std::uint64_t counter);

// Uniform in [0, 1) built from the top 53 bits.
double keyed_uniform01(std::uint64_t seed, std::uint64_t counter);

}  // namespace powergrad
