#include "pb/rng.hpp"

#include <stdexcept>

namespace pb {
namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

// Finalizer from splitmix64.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_key(std::uint64_t parent, std::uint64_t key) {
  return mix64(parent ^ mix64(key + kGamma));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed)
    : key_(mix64(seed + kGamma)), counter_(0) {}

RandomStream::RandomStream(std::uint64_t seed,
                           std::initializer_list<std::uint64_t> path)
    : RandomStream(seed) {
  for (std::uint64_t p : path) {
    key_ = derive_key(key_, p);
  }
}

RandomStream RandomStream::split(std::uint64_t key) const {
  RandomStream child;
  child.key_ = derive_key(key_, key);
  child.counter_ = 0;
  return child;
}

std::uint64_t RandomStream::next_u64() {
  return mix64(key_ + ++counter_ * kGamma);
}

std::uint64_t RandomStream::next_below(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("next_below needs a positive bound");
  }
  // Rejection sampling below the largest multiple of bound.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x >= threshold) {
      return x % bound;
    }
  }
}

bool RandomStream::bernoulli(std::uint64_t num, std::uint64_t den) {
  if (den == 0 || num > den) {
    throw std::invalid_argument("bernoulli probability must be in [0, 1]");
  }
  return next_below(den) < num;
}

}  // namespace pb
