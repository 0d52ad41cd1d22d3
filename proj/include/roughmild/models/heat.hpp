#pragma once

#include <cstdint>

#include "roughmild/mild.hpp"

namespace roughmild {

// Coefficient-space products of the Dirichlet sine basis on (0,pi):
// given the coefficients of u and v, returns the coefficients of the
// truncation of u*v, computed through the exact trigonometric projection
// integrals (no sampling grid, no aliasing). O(N^2) per product after an
// O(N^2) table build.
class SineBasisProduct {
 public:
  explicit SineBasisProduct(int n_modes);
  Vec apply(const Vec& u, const Vec& v) const;
  int modes() const { return n_modes_; }

 private:
  int n_modes_;
  Mat table_;  // c(a,k) = int_0^pi cos(a x) sin(k x) dx, a = 0..2N, k = 1..N
};

struct HeatModelParams {
  int n_modes = 32;
  double delta = 0.5;
  double tau = 0.25;
  double alpha = 0.6;
  int noise_dim = 4;
  double noise_amp = 0.05;
  double hurst = 0.75;
  double horizon = 0.5;
  int n_grid = 512;
  std::uint64_t seed = 1;
};

// Spectral heat/reaction problem on (0,pi): A is the Dirichlet Laplacian
// (lambda_k = k^2), Q the A^{-tau}-smoothed truncated square of the state,
// and F a spectrally smoothed, saturating noise coefficient whose Lipschitz
// and derivative bounds are exact closed forms.
ProblemSpec make_heat_model(const HeatModelParams& params);
ProblemSpec make_heat_model(const HeatModelParams& params, const Vec& u0);

// The growth constant declared for Q: ||Pi(u v)|| <= c ||A^delta u|| ||A^delta v||
// with c from the coefficient-space Cauchy-Schwarz bound at truncation N.
double heat_product_constant(int n_modes, double delta);

}  // namespace roughmild
