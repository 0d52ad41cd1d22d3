#include "roughmild/models/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "roughmild/rng.hpp"

namespace roughmild {

namespace {
// max |d/dx sech^2(x)| = 4/(3 sqrt 3)
constexpr double kSechSqLip = 0.769800358919501;

SaturatingNoise build(const SpectralOperator& A, double smoothing, double deriv_smoothing,
                      double delta, double amp, int noise_dim, std::uint64_t seed) {
  if (noise_dim < 1) throw std::invalid_argument("make_saturating_noise: noise_dim must be >= 1");
  if (amp < 0.0) throw std::invalid_argument("make_saturating_noise: amp must be nonnegative");
  const int N = A.dimension();

  CounterRng rng = CounterRng(seed).stream(0x6D69786Dull);
  Mat mix(N, noise_dim);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < noise_dim; ++j)
      mix(i, j) = rng.next_gaussian() / std::sqrt(static_cast<double>(noise_dim));
  double max_row = 0.0;
  for (int i = 0; i < N; ++i) max_row = std::max(max_row, mix.row(i).norm());

  Vec lam_smooth(N), lam_deriv(N);
  for (int k = 0; k < N; ++k) {
    lam_smooth(k) = amp * std::pow(A.eigenvalue(k), -smoothing);
    lam_deriv(k) = amp * std::pow(A.eigenvalue(k), -deriv_smoothing);
  }

  SaturatingNoise out;
  out.mixing = mix;
  out.F = [mix, lam_smooth](const Vec& u) {
    Mat f = mix;
    for (int k = 0; k < u.size(); ++k) f.row(k) *= lam_smooth(k) * std::tanh(u(k));
    return f;
  };
  out.DF = [mix, lam_deriv](const Vec& x, const Vec& y) {
    Mat f = mix;
    for (int k = 0; k < x.size(); ++k) {
      const double c = std::cosh(x(k));
      f.row(k) *= lam_deriv(k) * y(k) / (c * c);
    }
    return f;
  };
  const double gd = std::pow(A.spectral_gap(), -delta);
  out.bounds.lip_plain = amp * gd * max_row;
  out.bounds.lip_delta = amp * gd * max_row;
  out.bounds.sup_deriv = amp * gd * max_row;
  out.bounds.lip_deriv = amp * gd * max_row * kSechSqLip;
  return out;
}

}  // namespace

SaturatingNoise make_saturating_noise(const SpectralOperator& A, double eps_f, double delta,
                                      double amp, int noise_dim, std::uint64_t seed) {
  return build(A, eps_f + delta, delta, delta, amp, noise_dim, seed);
}

SaturatingNoise make_undersmoothed_noise(const SpectralOperator& A, double eps_f, double delta,
                                         double amp, int noise_dim, std::uint64_t seed) {
  // smoothing exponent cut to eps_f/2 + delta; the DF closure keeps the
  // matching derivative so only the declared bounds are wrong
  return build(A, 0.5 * eps_f + delta, 0.5 * eps_f + delta - eps_f, delta, amp, noise_dim, seed);
}

}  // namespace roughmild
