#pragma once

#include <vector>

#include "roughmild/paths.hpp"
#include "roughmild/spectral.hpp"

namespace roughmild {

// Evaluation plan for the smoothed convolution J_t = int_0^t A^tau e^{-(t-s)A} g(s) ds
// on a uniform grid. Each eigenmode is integrated in closed form against the
// piecewise-linear interpolant of g, so the kernel singularity never meets a
// quadrature rule; the only discretization error is the O(dt^2) interpolation
// of g.
struct ConvolutionPlan {
  ConvolutionPlan(SpectralOperator op, double tau_, int n_, double horizon_);

  SpectralOperator A;
  double tau;
  int n;
  double horizon;

  double dt() const { return horizon / n; }
};

// Exponential-integrator cell weights: the integral of e^{-theta(1-sigma)}
// against the two linear hat functions on a unit cell.
void etd_weights(double theta, double& w_left, double& w_right);

// J at grid time t_index, evaluated by the direct O(t_index) sum per mode.
Vec singular_convolution(const ConvolutionPlan& plan, const SampledPath& g, int t_index);

// J(t) from J(s): semigroup transport of the prior value plus the integral
// over [s,t]; agrees with the direct evaluation up to rounding.
Vec convolution_increment(const ConvolutionPlan& plan, const SampledPath& g, int s_index,
                          int t_index, const Vec& prior);

// J at every grid time via the one-step recursion, O(n) per mode.
std::vector<Vec> convolution_path(const ConvolutionPlan& plan, const SampledPath& g);

// int_s^t A^tau e^{-(t-r)A} g(r) dr over a window (zero prior).
Vec windowed_convolution(const ConvolutionPlan& plan, const SampledPath& g, int s_index,
                         int t_index);

struct BochnerBoundReport {
  double smallest_constant = 0.0;  // max ||I(s,t)|| / (K2 (t-s)^{1-tau})
  double fitted_exponent = 0.0;    // log-log slope of sup_s ||I(s,s+gap)|| vs gap
  bool shape_ok = false;           // fitted_exponent >= 1 - tau - 0.1
  std::vector<int> gaps;
  std::vector<double> sup_norms;
};

// Sweeps a lattice of windows (dyadic gaps, all admissible offsets) and
// reports the smallest constant C with ||int_s^t A^tau e^{-(t-r)A} g dr||
// <= C * K2 * (t-s)^{1-tau}, together with the fitted gap exponent.
BochnerBoundReport bochner_bound_check(const ConvolutionPlan& plan, const SampledPath& g,
                                       double K2_of_sup);

}  // namespace roughmild
