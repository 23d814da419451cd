#pragma once
/**
 * @file rng.hpp
 * @brief Deterministic RNG streams for reproducible Monte Carlo runs.
 *
 * Every independent piece of randomness (one user's channel in one trial,
 * the noise block of one trial, ...) gets its own mt19937_64 stream whose
 * seed is derived from a master seed and a list of integer keys. Runs are
 * therefore reproducible regardless of execution order.
 */

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

#include "pilotdecon/geometry.hpp"

namespace pilotdecon {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Combines integer keys into one well-mixed 64-bit seed.
inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = 0x6a09e667f3bcc909ull;
  for (std::uint64_t k : keys) h = splitmix64(h ^ splitmix64(k));
  return h;
}

/// FNV-1a hash of a short label, used to key streams by experiment/role.
inline std::uint64_t hash_label(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::mt19937_64 seeded_stream(std::initializer_list<std::uint64_t> keys) {
  return std::mt19937_64(mix_seed(keys));
}

/// Uniform double in (0, 1].
inline double uniform01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

/// Circularly-symmetric complex Gaussian sample of the given variance
/// (variance split evenly between real and imaginary parts).
inline std::complex<double> complex_gaussian(std::mt19937_64& rng,
                                             double variance) {
  const double amp = std::sqrt(-std::log(uniform01(rng)) * variance);
  const double phase = 2.0 * kPi * uniform01(rng);
  return {amp * std::cos(phase), amp * std::sin(phase)};
}

}  // namespace pilotdecon
