#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace qcat {

// Deterministic 64-bit generator used for every sampled quantity.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard, and doubles are formed from the top 53 bits of each draw.  No
// std::*_distribution is involved, so a given seed yields the same stream
// on every conforming implementation.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64-u53/1";

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform index in [0, n).
  std::size_t index(std::size_t n);

  // Inverse-CDF draw over `weights` taken in the given order.  Weights
  // need not be normalized; zero-weight entries are never selected.
  std::size_t categorical(std::span<const double> weights);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Seed of the k-th independent stream derived from `seed`.
constexpr std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t k) {
  return seed + k * 0x9E3779B97F4A7C15ULL;
}

}  // namespace qcat
