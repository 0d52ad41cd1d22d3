#pragma once

#include <string>

#include <Eigen/Dense>

namespace roughmild {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// A vector-valued path sampled on the uniform grid t_j = j*T/n, j = 0..n.
// Values are stored one column per grid point (d rows, n+1 columns).
class SampledPath {
 public:
  SampledPath(double horizon, Mat values);

  int cells() const { return static_cast<int>(values_.cols()) - 1; }
  int dimension() const { return static_cast<int>(values_.rows()); }
  double horizon() const { return horizon_; }
  double dt() const { return horizon_ / cells(); }
  double time(int j) const { return horizon_ * j / cells(); }
  Vec value(int j) const { return values_.col(j); }
  const Mat& values() const { return values_; }
  Mat& values() { return values_; }

 private:
  double horizon_;
  Mat values_;
};

struct HolderProfile {
  double exponent = 0.0;
  double value = 0.0;
  // grid indices attaining the supremum
  int j_witness = 0;
  int k_witness = 0;
};

// Discrete alpha-Hoelder norm over grid pairs in [j0, j1]: a lower bound of
// the continuum norm. alpha in (0,1]; the window must contain at least two
// grid points.
HolderProfile holder_norm(const SampledPath& p, double alpha, int j0, int j1);
HolderProfile holder_norm(const SampledPath& p, double alpha);

// Exact discrete p-variation over grid points of the window, by dynamic
// programming over all subsequences; O(m^2) in the window size, which is
// capped at 4096 cells.
double p_variation(const SampledPath& p, double p_exp, int j0, int j1);
double p_variation(const SampledPath& p, double p_exp);

// every stride-th grid point of p (stride must divide p.cells())
SampledPath subsample(const SampledPath& p, int stride);

// the window [j0, j1] as a path on [0, (j1-j0)*dt], values shifted so the
// new path starts at zero when rebase is true
SampledPath slice(const SampledPath& p, int j0, int j1, bool rebase);

// CSV with header t,x1,...,xd and 17 significant digits per value
void write_csv(const SampledPath& p, const std::string& file);
SampledPath read_csv(const std::string& file);

}  // namespace roughmild
