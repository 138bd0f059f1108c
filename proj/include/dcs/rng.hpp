#pragma once

#include <cstdint>
#include <random>

namespace dcs {

// SplitMix64 finalizer; bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x);

// Derives a seed for the sub-stream keyed by (a, b, c) under a master seed.
// Distinct keys give statistically independent streams, so an allocation
// decision in one stream never perturbs the draws of another.
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t a,
                             std::uint64_t b = 0, std::uint64_t c = 0);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // [0, 1)
  double uniform();
  double uniform(double lo, double hi);
  double normal(double mean, double stddev);
  // [0, n)
  std::uint64_t uniform_int(std::uint64_t n);

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> norm_{0.0, 1.0};
};

inline Rng substream(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                     std::uint64_t c = 0) {
  return Rng(substream_seed(master, a, b, c));
}

}  // namespace dcs
