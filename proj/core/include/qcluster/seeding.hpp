#pragma once

#include <cstdint>
#include <string_view>

namespace qcluster {

// SplitMix64 finalizer. Used both as a stateless hash and as the step
// function of the counter-based generator below.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view text) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

/// Sub-seed for a named component: mix64(master ^ mix64(fnv1a(name))).
/// Every seeded stage of a run derives its seed through this function, so a
/// single master seed fixes the whole run.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view component) noexcept {
  return mix64(master ^ mix64(fnv1a(component)));
}

/// Counter-based stream: value k depends only on (seed, stream, k), never on
/// how many values other streams consumed. Relaxation starts use one stream
/// per start index so results do not depend on thread scheduling.
class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(mix64(seed ^ mix64(stream + 0x632BE59BD9B4E019ull))) {}

  constexpr std::uint64_t operator()(std::uint64_t counter) const noexcept {
    return mix64(key_ + mix64(counter));
  }

  // Uniform in [0, 1) with 53 random bits.
  constexpr double uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>((*this)(counter) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
};

/// Sequential 64-bit generator with a fully specified output sequence
/// (std::mt19937_64 is specified too, but the std distributions are not).
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  constexpr double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  constexpr double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  // +1 or -1 with equal probability.
  constexpr double rademacher() noexcept { return (next() >> 63) != 0 ? 1.0 : -1.0; }

 private:
  std::uint64_t state_;
};

}  // namespace qcluster
