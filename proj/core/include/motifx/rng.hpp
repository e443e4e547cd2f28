#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

// Counter-based random streams built on the SplitMix64 finalizer.
//
// Every random quantity is addressed by a path of integers hashed into a
// 64-bit key: derive(derive(seed, stream_tag), index...). A draw depends
// only on its path, never on how many draws happened before it, so
// parallel and serial runs agree draw for draw and the results are the
// same on every platform with IEEE doubles.
//
// Stream tags in use:
//   kLatentStream  path (seed, tag, sample, dimension)  -> N(0,1) entry
//   kGraphStream   path (seed, tag, link)               -> U[0,1) per link
//   kReplicaStream path (seed, tag, z_sample, replica)  -> per-graph seed
//   kTrialStream   path (seed, tag, trial, ...)         -> conjecture trials
namespace motifx::rng {

inline constexpr std::uint64_t kLatentStream = 0x4c41'5445'4e54'0001ULL;
inline constexpr std::uint64_t kGraphStream = 0x4752'4150'4800'0002ULL;
inline constexpr std::uint64_t kReplicaStream = 0x5245'504c'4943'0003ULL;
inline constexpr std::uint64_t kTrialStream = 0x5452'4941'4c00'0004ULL;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive(std::uint64_t key, std::uint64_t index) {
  return splitmix64(splitmix64(key) ^ (index * 0xd1342543de82ef95ULL + 1));
}

/// Uniform double in [0, 1) with 53 random bits.
constexpr double uniform01(std::uint64_t key) {
  return static_cast<double>(splitmix64(key) >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller (cosine branch).
inline double standard_normal(std::uint64_t key) {
  const double u1 = 1.0 - uniform01(derive(key, 0));  // (0, 1]
  const double u2 = uniform01(derive(key, 1));
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace motifx::rng
