#pragma once

#include <vector>

#include "roughmild/paths.hpp"

namespace roughmild {

// An operator-valued path on the same uniform grid convention as SampledPath:
// n+1 linear maps R^M -> R^N stored as N x M matrices. Norms are
// Hilbert-Schmidt (Frobenius).
class OperatorPath {
 public:
  OperatorPath(double horizon, std::vector<Mat> values);

  int cells() const { return static_cast<int>(values_.size()) - 1; }
  int rows() const { return static_cast<int>(values_[0].rows()); }
  int cols() const { return static_cast<int>(values_[0].cols()); }
  double horizon() const { return horizon_; }
  double dt() const { return horizon_ / cells(); }
  const Mat& value(int j) const { return values_[j]; }

 private:
  double horizon_;
  std::vector<Mat> values_;
};

// discrete Hoelder norm of an operator path in the Hilbert-Schmidt norm
double operator_holder_norm(const OperatorPath& f, double exponent, int j0, int j1);

// Left-point Riemann-Stieltjes sum  sum_k f_{t_k} (w_{t_{k+1}} - w_{t_k})
// over the cells of [j0, j1]. The reduction order is fixed left-to-right.
Vec young_integral(const OperatorPath& f, const SampledPath& w, int j0, int j1);

struct YoungErrorEstimate {
  Vec value;                        // left sum on the finest grid
  double error_estimate = 0.0;      // distance between the two finest levels
  std::vector<double> level_errors; // ||S_l - S_{l+1}||, coarsening upward
};

// Left sums on the window grid and on dyadic coarsenings of it. The cell
// count of the window must be divisible by 2^(levels-1).
YoungErrorEstimate young_integral_with_error(const OperatorPath& f, const SampledPath& w, int j0,
                                             int j1, int levels);

// 1/(1 - 2^{1-theta}) for theta > 1
double sewing_constant(double theta);

// C(alpha,delta) * f_holder * w_holder * (t-s)^{alpha+delta}, the bound on
// the distance between the Young integral over [s,t] and its left-point
// one-cell approximation f_s (w_t - w_s). Requires alpha + delta > 1.
double young_loeve_bound(double f_holder, double delta, double w_holder, double alpha, double s,
                         double t);

}  // namespace roughmild
