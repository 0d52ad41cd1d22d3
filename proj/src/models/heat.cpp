#include "roughmild/models/heat.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "roughmild/fbm.hpp"
#include "roughmild/models/noise.hpp"

namespace roughmild {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

SineBasisProduct::SineBasisProduct(int n_modes) : n_modes_(n_modes) {
  if (n_modes < 1) throw std::invalid_argument("SineBasisProduct: need at least one mode");
  table_ = Mat::Zero(2 * n_modes + 1, n_modes);
  for (int a = 0; a <= 2 * n_modes; ++a) {
    for (int k = 1; k <= n_modes; ++k) {
      if ((a + k) % 2 == 0) continue;  // even a+k integrates to zero
      table_(a, k - 1) = 2.0 * k / (static_cast<double>(k) * k - static_cast<double>(a) * a);
    }
  }
}

Vec SineBasisProduct::apply(const Vec& u, const Vec& v) const {
  const int N = n_modes_;
  if (u.size() != N || v.size() != N)
    throw std::invalid_argument("SineBasisProduct: coefficient length mismatch");

  // s_a = sum over |m-l| = a of u_m v_l   (modes 1-based)
  // q_b = sum over  m+l  = b of u_m v_l
  Vec s = Vec::Zero(N);          // a = 0..N-1
  Vec q = Vec::Zero(2 * N + 1);  // b = 2..2N
  for (int m = 1; m <= N; ++m) {
    for (int l = 1; l <= N; ++l) {
      s(std::abs(m - l)) += u(m - 1) * v(l - 1);
      q(m + l) += u(m - 1) * v(l - 1);
    }
  }

  const double coef = (1.0 / kPi) * std::sqrt(2.0 / kPi);
  Vec out(N);
  for (int k = 1; k <= N; ++k) {
    double acc = 0.0;
    for (int a = 0; a < N; ++a) acc += s(a) * table_(a, k - 1);
    for (int b = 2; b <= 2 * N; ++b) acc -= q(b) * table_(b, k - 1);
    out(k - 1) = coef * acc;
  }
  return out;
}

double heat_product_constant(int n_modes, double delta) {
  // ||u||_inf <= sqrt(2/pi) sum |u_m| <= sqrt(2/pi) (sum m^{-4 delta})^{1/2} ||A^delta u||
  // and ||Pi(uv)|| <= ||u v|| <= ||u||_inf ||v||; needs delta > 1/4 so the
  // coefficient sum stays bounded under truncation refinement.
  if (delta <= 0.25) throw std::invalid_argument("heat_product_constant: delta must exceed 1/4");
  double s = 0.0;
  for (int m = 1; m <= n_modes; ++m) s += std::pow(static_cast<double>(m), -4.0 * delta);
  return std::sqrt(2.0 / kPi) * std::sqrt(s);
}

ProblemSpec make_heat_model(const HeatModelParams& params) {
  Vec u0(params.n_modes);
  for (int k = 1; k <= params.n_modes; ++k) u0(k - 1) = 0.4 / (static_cast<double>(k) * k);
  return make_heat_model(params, u0);
}

ProblemSpec make_heat_model(const HeatModelParams& params, const Vec& u0) {
  const int N = params.n_modes;
  if (N < 1) throw std::invalid_argument("make_heat_model: need at least one mode");
  const double lo = std::max(0.5, 1.0 - params.delta + 0.01);
  const double hi = 1.0 - params.tau - 0.01;
  if (!(params.alpha > lo && params.alpha <= hi))
    throw std::invalid_argument("make_heat_model: alpha outside the admissible window");
  if (u0.size() != N) throw std::invalid_argument("make_heat_model: u0 length mismatch");

  Vec lambda(N);
  for (int k = 1; k <= N; ++k) lambda(k - 1) = static_cast<double>(k) * k;
  SpectralOperator A(lambda);

  const double eps_f = std::max(params.alpha + params.delta, 2.0 * params.alpha);
  auto product = std::make_shared<SineBasisProduct>(N);
  SaturatingNoise noise =
      make_saturating_noise(A, eps_f, params.delta, params.noise_amp, params.noise_dim, params.seed);

  const double tau = params.tau;
  ProblemSpec spec{
      A,
      [A, product, tau](const Vec& u) { return frac_power_apply(A, -tau, product->apply(u, u)); },
      [A, product, tau](const Vec& u, const Vec& xi) {
        return frac_power_apply(A, -tau, 2.0 * product->apply(u, xi));
      },
      noise.F,
      noise.DF,
      params.tau,
      params.delta,
      params.alpha,
      eps_f,
      std::function<double(double)>{},
      std::function<double(double)>{},
      noise.bounds,
      u0,
      FbmGenerator(params.hurst, params.n_grid, params.horizon)
          .generate(params.noise_dim, params.seed)};

  const double gap = A.spectral_gap();
  const double growth =
      heat_product_constant(N, params.delta) * std::pow(gap, -params.tau - params.delta);
  spec.K1 = [growth](double r) { return growth * r; };
  spec.K2 = [growth](double r) { return growth * r * r; };

  spec.validate();
  return spec;
}

}  // namespace roughmild
