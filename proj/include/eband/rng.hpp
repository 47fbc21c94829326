#ifndef EBAND_RNG_HPP
#define EBAND_RNG_HPP

#include <cmath>
#include <cstdint>

namespace eband {

// SplitMix64 step. Small, fast, and identical on every platform, which is
// what keeps simulation outputs byte-stable. Standard-library distributions
// are not reproducible across implementations, so all stochastic draws in
// the toolkit go through this generator.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Order-sensitive combine of two 64-bit keys into a new stream key.
inline std::uint64_t hash_mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a;
  std::uint64_t h = splitmix64_next(s);
  s ^= b + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  return splitmix64_next(s);
}

/// Deterministic stream of uniforms and normals seeded by an explicit key.
class KeyedRng {
 public:
  explicit KeyedRng(std::uint64_t key) : state_(key) {
    // Burn one step so nearby keys decorrelate immediately.
    splitmix64_next(state_);
  }

  std::uint64_t next_u64() { return splitmix64_next(state_); }

  /// Uniform in [0, 1), 53-bit resolution.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] so the log is finite.
    const double u1 = 1.0 - next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace eband

#endif  // EBAND_RNG_HPP
