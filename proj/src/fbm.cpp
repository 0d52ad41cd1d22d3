#include "roughmild/fbm.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Cholesky>

#include "roughmild/rng.hpp"

namespace roughmild {

double fbm_covariance(double s, double t, double hurst) {
  if (s < 0.0 || t < 0.0) throw std::invalid_argument("fbm_covariance: times must be nonnegative");
  if (hurst <= 0.0 || hurst >= 1.0)
    throw std::invalid_argument("fbm_covariance: hurst must be in (0,1)");
  const double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(s, h2) + std::pow(t, h2) - std::pow(std::abs(t - s), h2));
}

// autocovariance of unit-spaced fGn, scaled by dt^{2h}
static double fgn_gamma(int lag, double hurst, double dt) {
  const double h2 = 2.0 * hurst;
  const double j = static_cast<double>(lag);
  return 0.5 * (std::pow(j + 1.0, h2) + std::pow(std::abs(j - 1.0), h2) - 2.0 * std::pow(j, h2)) *
         std::pow(dt, h2);
}

FbmGenerator::FbmGenerator(double hurst, int n, double horizon, Method method)
    : hurst_(hurst), n_(n), horizon_(horizon), method_(method) {
  if (hurst <= 0.0 || hurst >= 1.0)
    throw std::invalid_argument("FbmGenerator: hurst must be in (0,1)");
  if (n < 1) throw std::invalid_argument("FbmGenerator: need at least one cell");
  if (!(horizon > 0.0)) throw std::invalid_argument("FbmGenerator: horizon must be positive");

  if (method_ == Method::kAuto) method_ = (n <= 4096) ? Method::kCholesky : Method::kCirculant;
  const double dt = horizon_ / n_;

  if (method_ == Method::kCholesky) {
    Mat cov(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j <= i; ++j) cov(i, j) = cov(j, i) = fgn_gamma(i - j, hurst_, dt);
    Eigen::LLT<Mat> llt(cov);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("FbmGenerator: increment covariance factorization failed");
    chol_ = llt.matrixL();
  } else {
    // circulant embedding of the fGn covariance, first row
    //   gamma(0), ..., gamma(n), gamma(n-1), ..., gamma(1)
    const int m = 2 * n_;
    std::vector<std::complex<double>> c(m), ev(m);
    for (int j = 0; j <= n_; ++j) c[j] = fgn_gamma(j, hurst_, dt);
    for (int j = n_ + 1; j < m; ++j) c[j] = c[m - j];
    fftw_plan plan = fftw_plan_dft_1d(m, reinterpret_cast<fftw_complex*>(c.data()),
                                      reinterpret_cast<fftw_complex*>(ev.data()), FFTW_FORWARD,
                                      FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    circ_sqrt_.resize(m);
    double evmax = 0.0;
    for (int j = 0; j < m; ++j) evmax = std::max(evmax, ev[j].real());
    for (int j = 0; j < m; ++j) {
      double lam = ev[j].real();
      if (lam < -1e-10 * evmax)
        throw std::runtime_error("FbmGenerator: circulant embedding is not nonnegative definite");
      circ_sqrt_[j] = std::sqrt(std::max(lam, 0.0));
    }
  }
}

SampledPath FbmGenerator::generate(int dimension, std::uint64_t seed) const {
  if (dimension < 1) throw std::invalid_argument("FbmGenerator: dimension must be >= 1");
  Mat values(dimension, n_ + 1);
  values.col(0).setZero();
  const CounterRng root(seed);

  if (method_ == Method::kCholesky) {
    Vec z(n_);
    for (int comp = 0; comp < dimension; ++comp) {
      CounterRng rng = root.stream(static_cast<std::uint64_t>(comp));
      for (int j = 0; j < n_; ++j) z(j) = rng.next_gaussian();
      Vec incr = chol_.triangularView<Eigen::Lower>() * z;
      double acc = 0.0;
      for (int j = 0; j < n_; ++j) {
        acc += incr(j);
        values(comp, j + 1) = acc;
      }
    }
    return SampledPath(horizon_, std::move(values));
  }

  const int m = 2 * n_;
  std::vector<std::complex<double>> w(m), x(m);
  fftw_plan plan = fftw_plan_dft_1d(m, reinterpret_cast<fftw_complex*>(w.data()),
                                    reinterpret_cast<fftw_complex*>(x.data()), FFTW_FORWARD,
                                    FFTW_ESTIMATE);
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));
  for (int comp = 0; comp < dimension; ++comp) {
    CounterRng rng = root.stream(static_cast<std::uint64_t>(comp));
    w[0] = circ_sqrt_[0] * rng.next_gaussian() * inv_sqrt_m;
    w[n_] = circ_sqrt_[n_] * rng.next_gaussian() * inv_sqrt_m;
    const double half = inv_sqrt_m / std::sqrt(2.0);
    for (int j = 1; j < n_; ++j) {
      const double a = rng.next_gaussian();
      const double b = rng.next_gaussian();
      w[j] = circ_sqrt_[j] * std::complex<double>(a, b) * half;
      w[m - j] = std::conj(w[j]);
    }
    fftw_execute(plan);
    double acc = 0.0;
    for (int j = 0; j < n_; ++j) {
      acc += x[j].real();
      values(comp, j + 1) = acc;
    }
  }
  fftw_destroy_plan(plan);
  return SampledPath(horizon_, std::move(values));
}

SampledPath fbm_generate(double hurst, int n, double horizon, int dimension, std::uint64_t seed) {
  return FbmGenerator(hurst, n, horizon).generate(dimension, seed);
}

}  // namespace roughmild
