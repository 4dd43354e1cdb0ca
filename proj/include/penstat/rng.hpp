#ifndef PENSTAT_RNG_HPP
#define PENSTAT_RNG_HPP

#include <cstdint>

namespace penstat {

// SplitMix64. Generation is pure 64-bit integer arithmetic and the floating
// point helpers below use only IEEE-exact operations, so a (seed, stream)
// pair reproduces the same values on any conforming platform. Substreams
// are derived by hashing, never by sharing state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double next_in(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
  }

  // Inclusive bounds. The modulo bias is below 2^-11 for any span that fits
  // an int and does not matter for corpus synthesis.
  std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }

  // Irwin-Hall sum of 12 uniforms: mean 0, variance exactly 1, support
  // [-6, 6]. Near-Gaussian and free of transcendental library calls.
  double next_gaussian() {
    double s = 0.0;
    for (int i = 0; i < 12; ++i) s += next_unit();
    return s - 6.0;
  }

 private:
  std::uint64_t state_;
};

// Independent stream for (seed, id); nesting derives writer- and
// purpose-level streams.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t id) {
  return SplitMix64::mix(seed ^ SplitMix64::mix(id + 0x632BE59BD9B4E019ull));
}

}  // namespace penstat

#endif  // PENSTAT_RNG_HPP
