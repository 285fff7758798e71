#pragma once

#include <cstdint>
#include <initializer_list>

namespace pb {

// Splittable deterministic random stream. Each stream is identified by a key
// derived from a root seed and a path of indices (e.g. trial, agent), so
// parallel workers can own independent streams that reproduce the serial run
// exactly. Generation is counter-based over the key and never mutates it;
// split() derives a child key without consuming any randomness.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);
  RandomStream(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

  RandomStream split(std::uint64_t key) const;

  std::uint64_t next_u64();

  // Unbiased uniform draw in [0, bound); bound must be >= 1.
  std::uint64_t next_below(std::uint64_t bound);

  // Exact Bernoulli draw with probability num/den; requires 0 <= num <= den.
  bool bernoulli(std::uint64_t num, std::uint64_t den);

 private:
  RandomStream() = default;

  std::uint64_t key_ = 0;      // stream identity, fixed after construction
  std::uint64_t counter_ = 0;  // generation counter
};

}  // namespace pb
