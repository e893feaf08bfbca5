#pragma once

#include <cstdint>

// Counter-based deterministic random stream.  The i-th draw depends only on
// (seed, i), so identical seeds give bit-identical sequences on any platform
// (std:: distributions are implementation-defined, so we do not use them).
// Child streams for parallel tasks come from hashing (seed, task index).

namespace hypharm {

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();
  double uniform();                        // [0, 1)
  double uniform(double lo, double hi);
  double normal();                         // standard normal, Box-Muller
  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

  RandomStream child(std::uint64_t task_index) const;

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t counter_ = 0;
};

std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value);

}  // namespace hypharm
