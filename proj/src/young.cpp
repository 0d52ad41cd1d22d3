#include "roughmild/young.hpp"

#include <cmath>
#include <stdexcept>

namespace roughmild {

OperatorPath::OperatorPath(double horizon, std::vector<Mat> values)
    : horizon_(horizon), values_(std::move(values)) {
  if (!(horizon_ > 0.0)) throw std::invalid_argument("OperatorPath: horizon must be positive");
  if (values_.size() < 2) throw std::invalid_argument("OperatorPath: need at least one cell");
  const Eigen::Index r = values_[0].rows(), c = values_[0].cols();
  if (r < 1 || c < 1) throw std::invalid_argument("OperatorPath: empty matrices");
  for (const Mat& m : values_) {
    if (m.rows() != r || m.cols() != c)
      throw std::invalid_argument("OperatorPath: inconsistent matrix shapes");
    if (!m.allFinite()) throw std::invalid_argument("OperatorPath: values must be finite");
  }
}

static void check_window(int cells, int j0, int j1) {
  if (j0 < 0 || j1 > cells || j0 >= j1)
    throw std::invalid_argument("young: empty or out-of-range window");
}

double operator_holder_norm(const OperatorPath& f, double exponent, int j0, int j1) {
  if (exponent <= 0.0 || exponent > 1.0)
    throw std::invalid_argument("operator_holder_norm: exponent must be in (0,1]");
  check_window(f.cells(), j0, j1);
  const double dt = f.dt();
  double best = 0.0;
  for (int g = 1; g <= j1 - j0; ++g) {
    const double w = std::pow(g * dt, -exponent);
    for (int j = j0; j + g <= j1; ++j)
      best = std::max(best, (f.value(j + g) - f.value(j)).norm() * w);
  }
  return best;
}

static void check_grids(const OperatorPath& f, const SampledPath& w) {
  if (f.cells() != w.cells())
    throw std::invalid_argument("young_integral: integrand and integrator grids differ");
  if (std::abs(f.horizon() - w.horizon()) > 1e-12 * w.horizon())
    throw std::invalid_argument("young_integral: integrand and integrator horizons differ");
  if (f.cols() != w.dimension())
    throw std::invalid_argument("young_integral: integrand does not accept the integrator values");
}

Vec young_integral(const OperatorPath& f, const SampledPath& w, int j0, int j1) {
  check_grids(f, w);
  check_window(f.cells(), j0, j1);
  Vec acc = Vec::Zero(f.rows());
  for (int j = j0; j < j1; ++j) acc += f.value(j) * (w.value(j + 1) - w.value(j));
  return acc;
}

YoungErrorEstimate young_integral_with_error(const OperatorPath& f, const SampledPath& w, int j0,
                                             int j1, int levels) {
  check_grids(f, w);
  check_window(f.cells(), j0, j1);
  if (levels < 2) throw std::invalid_argument("young_integral_with_error: need at least 2 levels");
  const int m = j1 - j0;
  const int coarsest = 1 << (levels - 1);
  if (m % coarsest != 0)
    throw std::invalid_argument(
        "young_integral_with_error: window cells not divisible by 2^(levels-1)");

  std::vector<Vec> sums(levels);
  for (int l = 0; l < levels; ++l) {
    const int stride = 1 << l;
    Vec acc = Vec::Zero(f.rows());
    for (int j = j0; j < j1; j += stride) acc += f.value(j) * (w.value(j + stride) - w.value(j));
    sums[l] = acc;
  }
  YoungErrorEstimate est;
  est.value = sums[0];
  for (int l = 0; l + 1 < levels; ++l) est.level_errors.push_back((sums[l] - sums[l + 1]).norm());
  est.error_estimate = est.level_errors.front();
  return est;
}

double sewing_constant(double theta) {
  if (theta <= 1.0) throw std::domain_error("sewing_constant: exponent sum must exceed 1");
  return 1.0 / (1.0 - std::pow(2.0, 1.0 - theta));
}

double young_loeve_bound(double f_holder, double delta, double w_holder, double alpha, double s,
                         double t) {
  if (alpha + delta <= 1.0)
    throw std::domain_error("young_loeve_bound: alpha + delta must exceed 1");
  if (!(t > s)) throw std::invalid_argument("young_loeve_bound: need s < t");
  if (f_holder < 0.0 || w_holder < 0.0)
    throw std::invalid_argument("young_loeve_bound: norms must be nonnegative");
  return sewing_constant(alpha + delta) * f_holder * w_holder * std::pow(t - s, alpha + delta);
}

}  // namespace roughmild
