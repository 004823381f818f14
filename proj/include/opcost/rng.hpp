#pragma once

#include <cstdint>

namespace opcost {

// Counter-based random number primitives.
//
// Every random value produced anywhere in this library is a pure function of
// (seed, stream tag, index). This mapping is part of the reproducibility
// contract and must not change between versions:
//
//   mix64(z)              = the splitmix64 finalizer
//   stream(seed, tag)     = mix64(seed + GOLDEN) ^ mix64((tag + 1) * LEA)
//   value(stream, index)  = mix64(stream + (index + 1) * GOLDEN)
//   u01(stream, index)    = top 53 bits of value / 2^53, in [0, 1)
//
// Because values are indexed rather than sequential, any range of indices can
// be evaluated on any thread and the result is identical to a serial pass.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
inline constexpr std::uint64_t kLea = 0xD1B54A32D192ED03ull;

inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t tag) noexcept {
  return mix64(seed + kGolden) ^ mix64((tag + 1) * kLea);
}

inline std::uint64_t value_at(std::uint64_t stream, std::uint64_t index) noexcept {
  return mix64(stream + (index + 1) * kGolden);
}

inline double u01_at(std::uint64_t stream, std::uint64_t index) noexcept {
  return static_cast<double>(value_at(stream, index) >> 11) * 0x1.0p-53;
}

/// Sequential view over one stream, for consumers that need a variable
/// number of uniforms (rejection sampling). Still fully determined by the
/// stream id.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t stream) : stream_(stream) {}

  double u01() noexcept { return u01_at(stream_, next_++); }
  std::uint64_t next_u64() noexcept { return value_at(stream_, next_++); }

 private:
  std::uint64_t stream_;
  std::uint64_t next_ = 0;
};

/// Exact Poisson sampler. Inversion by sequential search below mean 10,
/// Hormann's PTRS transformed rejection above.
std::uint64_t poisson_draw(CounterRng& rng, double mean);

}  // namespace opcost
