#include "roughmild/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace roughmild {

SpectralOperator::SpectralOperator(Vec eigenvalues) : lambda_(std::move(eigenvalues)) {
  if (lambda_.size() == 0) throw std::invalid_argument("SpectralOperator: empty spectrum");
  double prev = 0.0;
  for (Eigen::Index k = 0; k < lambda_.size(); ++k) {
    const double lam = lambda_(k);
    if (!std::isfinite(lam)) throw std::invalid_argument("SpectralOperator: non-finite eigenvalue");
    if (lam <= 0.0) throw std::invalid_argument("SpectralOperator: eigenvalues must be positive");
    if (lam < prev) throw std::invalid_argument("SpectralOperator: eigenvalues must be ascending");
    prev = lam;
  }
}

static void check_dimension(const SpectralOperator& A, const Vec& x) {
  if (x.size() != A.dimension())
    throw std::invalid_argument("spectral: vector dimension does not match operator");
}

Vec frac_power_apply(const SpectralOperator& A, double eps, const Vec& x) {
  check_dimension(A, x);
  Vec y(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) y(k) = std::pow(A.eigenvalue(k), eps) * x(k);
  return y;
}

Vec semigroup_apply(const SpectralOperator& A, double t, const Vec& x) {
  check_dimension(A, x);
  if (t < 0.0) throw std::invalid_argument("semigroup_apply: t must be nonnegative");
  Vec y(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) y(k) = std::exp(-A.eigenvalue(k) * t) * x(k);
  return y;
}

Vec frac_semigroup_apply(const SpectralOperator& A, double eps, double t, const Vec& x) {
  check_dimension(A, x);
  if (eps > 0.0 && t <= 0.0)
    throw std::domain_error("frac_semigroup_apply: t must be positive when eps > 0");
  if (t < 0.0) throw std::invalid_argument("frac_semigroup_apply: t must be nonnegative");
  Vec y(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double lam = A.eigenvalue(k);
    y(k) = std::exp(eps * std::log(lam) - lam * t) * x(k);
  }
  return y;
}

double operator_bound(const SpectralOperator& A, double eps, double t) {
  if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("operator_bound: eps must be in [0,1]");
  if (t <= 0.0) throw std::invalid_argument("operator_bound: t must be positive");
  double best = 0.0;
  for (int k = 0; k < A.dimension(); ++k) {
    const double lam = A.eigenvalue(k);
    best = std::max(best, std::exp(eps * std::log(lam) - lam * t));
  }
  return best;
}

double smoothing_envelope(double eps, double t) {
  if (eps < 0.0) throw std::invalid_argument("smoothing_envelope: eps must be nonnegative");
  if (t <= 0.0) throw std::invalid_argument("smoothing_envelope: t must be positive");
  if (eps == 0.0) return 1.0;
  return std::exp(eps * (std::log(eps) - 1.0 - std::log(t)));
}

}  // namespace roughmild
