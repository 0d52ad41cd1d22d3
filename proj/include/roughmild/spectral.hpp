#pragma once

#include <Eigen/Dense>

namespace roughmild {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// A positive self-adjoint operator with discrete spectrum, stored by its
// eigenvalues in ascending order. Vectors are coordinates in the eigenbasis,
// so fractional powers, the semigroup e^{-tA} and their products all act
// diagonally.
class SpectralOperator {
 public:
  explicit SpectralOperator(Vec eigenvalues);

  int dimension() const { return static_cast<int>(lambda_.size()); }
  const Vec& eigenvalues() const { return lambda_; }
  double eigenvalue(int k) const { return lambda_(k); }
  // smallest eigenvalue; strictly positive by construction
  double spectral_gap() const { return lambda_(0); }

 private:
  Vec lambda_;
};

// coordinate k of the result is lambda_k^eps * x_k; eps may be any real
Vec frac_power_apply(const SpectralOperator& A, double eps, const Vec& x);

// e^{-tA} x, t >= 0
Vec semigroup_apply(const SpectralOperator& A, double t, const Vec& x);

// A^eps e^{-tA} x evaluated as exp(eps*log(lambda) - lambda*t) per mode,
// which stays finite for stiff spectra where lambda^eps alone would not.
// Requires t > 0 when eps > 0.
Vec frac_semigroup_apply(const SpectralOperator& A, double eps, double t, const Vec& x);

// max_k lambda_k^eps e^{-lambda_k t} for eps in [0,1], t > 0. Never exceeds
// smoothing_envelope(eps, t).
double operator_bound(const SpectralOperator& A, double eps, double t);

// (eps/(e t))^eps, the supremum of lambda^eps e^{-lambda t} over lambda > 0;
// equals 1 at eps = 0.
double smoothing_envelope(double eps, double t);

}  // namespace roughmild
