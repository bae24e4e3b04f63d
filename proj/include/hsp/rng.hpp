#pragma once

#include <cstdint>
#include <random>

namespace hsp {

/// Seeded 64-bit generator. Draws are defined entirely by this class (no
/// std::*_distribution), so a seed reproduces byte-identical output on any
/// platform. `split()` derives an independent child stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n);

  Rng split();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Deterministic seed for stream `index` under `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

}  // namespace hsp
