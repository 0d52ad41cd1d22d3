#pragma once

#include <cstdint>
#include <functional>

#include "roughmild/mild.hpp"

namespace roughmild {

// Noise coefficient used by both concrete models: coordinate k of F(u) xi is
//   amp * lambda_k^{-(eps_f + delta)} * tanh(u_k) * (M xi)_k
// for a fixed seeded mixing matrix M. The spectral damping makes
// A^{delta+eps_f} F globally bounded, and tanh makes every declared
// Lipschitz/derivative bound an exact closed form.
struct SaturatingNoise {
  std::function<Mat(const Vec&)> F;
  std::function<Mat(const Vec&, const Vec&)> DF;  // derivative of A^{eps_f} F
  FCoefficientBounds bounds;
  Mat mixing;
};

SaturatingNoise make_saturating_noise(const SpectralOperator& A, double eps_f, double delta,
                                      double amp, int noise_dim, std::uint64_t seed);

// Test fixture: same construction with only half the smoothing exponent, so
// the declared smoothed-difference bound is genuinely violated.
SaturatingNoise make_undersmoothed_noise(const SpectralOperator& A, double eps_f, double delta,
                                         double amp, int noise_dim, std::uint64_t seed);

}  // namespace roughmild
