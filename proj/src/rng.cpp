#include "dcs/rng.hpp"

namespace dcs {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t a,
                             std::uint64_t b, std::uint64_t c) {
  std::uint64_t s = mix64(master ^ 0x6A09E667F3BCC909ULL);
  s = mix64(s ^ mix64(a ^ 0xBB67AE8584CAA73BULL));
  s = mix64(s ^ mix64(b ^ 0x3C6EF372FE94F82BULL));
  s = mix64(s ^ mix64(c ^ 0xA54FF53A5F1D36F1ULL));
  return s;
}

double Rng::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(eng_);
}

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(eng_);
}

double Rng::normal(double mean, double stddev) {
  return mean + stddev * norm_(eng_);
}

std::uint64_t Rng::uniform_int(std::uint64_t n) {
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_);
}

}  // namespace dcs
