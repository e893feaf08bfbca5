#include "hypharm/rng.hpp"

#include <cmath>
#include <numbers>

namespace hypharm {

namespace {

// splitmix64 finalizer
inline std::uint64_t mix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) {
  return mix(seed ^ (value + 0x9E3779B97F4A7C15ull + (seed << 6) + (seed >> 2)));
}

std::uint64_t RandomStream::next_u64() {
  std::uint64_t v = mix(seed_ ^ mix(counter_));
  ++counter_;
  return v;
}

double RandomStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double RandomStream::normal() {
  double u1 = uniform();
  double u2 = uniform();
  while (u1 <= 0) u1 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RandomStream RandomStream::child(std::uint64_t task_index) const {
  return RandomStream(hash_combine(seed_, task_index));
}

}  // namespace hypharm
