#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace corruptmatch {

// SplitMix64 finalizer. Used to derive child seeds; never as a stream generator.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Child seed for (master, index). Pure function, so trial streams do not depend
// on scheduling or thread count.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Seedable, splittable 64-bit generator.
///
/// Engine identity: std::mt19937_64 (the standard fixes its output sequence),
/// seeded with a single 64-bit value. All derived quantities (uniform doubles,
/// Bernoulli draws, bounded integers, shuffles) are computed here with integer
/// arithmetic rather than through <random> distributions, whose algorithms are
/// implementation-defined. Streams are therefore bit-identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform();

  // One draw is consumed regardless of p.
  bool bernoulli(double p);

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  // Independent generator for sub-stream `stream`; depends only on seed().
  Rng child(std::uint64_t stream) const;

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace corruptmatch
