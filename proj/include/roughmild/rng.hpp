#pragma once

#include <cmath>
#include <cstdint>

namespace roughmild {

// Counter-based pseudorandom stream (SplitMix64). Draw k is a pure function
// of (seed, k), so streams can be split per component and replayed without
// shared state. Gaussians come from Box-Muller on consecutive uniforms.
// Output is bit-reproducible for a fixed seed within one build of the
// library; no reproducibility is promised across compilers or libm versions.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t next_u64() {
    counter_ += 1;
    return mix(seed_ + counter_ * 0x9E3779B97F4A7C15ull);
  }

  // uniform in [0,1)
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0,1] keeps the log finite
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    constexpr double kTwoPi = 6.28318530717958647692528676655900577;
    spare_ = r * std::sin(kTwoPi * u2);
    have_spare_ = true;
    return r * std::cos(kTwoPi * u2);
  }

  // Independent substream; substream ids may be reused across parent seeds.
  CounterRng stream(std::uint64_t stream_id) const {
    return CounterRng(mix(seed_ ^ mix(stream_id + 0x632BE59BD9B4E019ull)));
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace roughmild
