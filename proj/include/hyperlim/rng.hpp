#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace hyperlim {

std::uint64_t mix64(std::uint64_t x);

// Seed for stream `index` under `seed`; stable across platforms.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

// Counter-based uniform in [0,1): depends only on (seed, stream, counter).
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed, std::uint64_t index) {
  return Engine(derive_seed(seed, index));
}

// Portable uniform draws (std distributions are implementation-defined).
inline double uniform01(Engine& e) { return static_cast<double>(e() >> 11) * 0x1.0p-53; }
inline double uniform_pm1(Engine& e) { return 2.0 * uniform01(e) - 1.0; }
inline std::uint64_t uniform_below(Engine& e, std::uint64_t bound) {
  return static_cast<std::uint64_t>(uniform01(e) * static_cast<double>(bound)) % bound;
}

}  // namespace hyperlim
