#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace varlp {

std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic sub-seed for (seed, a, b); used per trial and per check.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

/// Stable 64-bit hash of a name (FNV-1a), for salting sub-seeds by check.
std::uint64_t name_hash(std::string_view name);

/// Thin wrapper around mt19937_64 whose derived draws are specified here
/// rather than by the standard library, so streams replay identically on
/// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform01();
  double uniform(double lo, double hi);
  /// exp of a uniform draw over [ln lo, ln hi].
  double log_uniform(double lo, double hi);
  /// Uniform in {0, ..., n-1}, unbiased.
  std::size_t index(std::size_t n);
  bool bernoulli(double prob);
  /// Uniformly random permutation of {0, ..., n-1} (Fisher-Yates).
  std::vector<std::size_t> permutation(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace varlp
