#pragma once

#include <cstdint>
#include <vector>

#include "roughmild/paths.hpp"

namespace roughmild {

// Standard fractional Brownian motion covariance (s^2h + t^2h - |t-s|^2h)/2.
double fbm_covariance(double s, double t, double hurst);

// Samples fractional Brownian motion on a uniform grid with w_0 = 0 and
// independent components. Construction is exact in law: the covariance of
// the increments (fractional Gaussian noise) is factorized once and reused
// across draws. Up to 4096 cells the factor is a dense Cholesky root; for
// larger grids the stationary increments are synthesized through a circulant
// embedding of the covariance, which is equally exact and O(n log n).
class FbmGenerator {
 public:
  enum class Method { kAuto, kCholesky, kCirculant };

  FbmGenerator(double hurst, int n, double horizon, Method method = Method::kAuto);

  SampledPath generate(int dimension, std::uint64_t seed) const;

  double hurst() const { return hurst_; }
  int cells() const { return n_; }
  double horizon() const { return horizon_; }
  Method method() const { return method_; }

 private:
  double hurst_;
  int n_;
  double horizon_;
  Method method_;
  Mat chol_;                       // lower Cholesky factor of the fGn covariance
  std::vector<double> circ_sqrt_;  // sqrt of circulant eigenvalues, length 2n
};

// one-shot convenience wrapper around FbmGenerator
SampledPath fbm_generate(double hurst, int n, double horizon, int dimension, std::uint64_t seed);

}  // namespace roughmild
