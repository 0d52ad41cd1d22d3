#include "roughmild/convolve.hpp"

#include <cmath>
#include <stdexcept>

namespace roughmild {

ConvolutionPlan::ConvolutionPlan(SpectralOperator op, double tau_, int n_, double horizon_)
    : A(std::move(op)), tau(tau_), n(n_), horizon(horizon_) {
  if (tau < 0.0 || tau >= 1.0) throw std::invalid_argument("ConvolutionPlan: tau must be in [0,1)");
  if (n < 1) throw std::invalid_argument("ConvolutionPlan: need at least one cell");
  if (!(horizon > 0.0)) throw std::invalid_argument("ConvolutionPlan: horizon must be positive");
}

void etd_weights(double theta, double& w_left, double& w_right) {
  if (theta < 0.5) {
    // w_left = sum_j (-theta)^j (j+1)/(j+2)!,  w_right = sum_j (-theta)^j /(j+2)!
    double term = 1.0;  // (-theta)^j / j!
    double wl = 0.0, wr = 0.0;
    for (int j = 0; j < 30; ++j) {
      const double denom = (j + 1.0) * (j + 2.0);
      wl += term * (j + 1.0) / denom;
      wr += term / denom;
      term *= -theta / (j + 1.0);
      if (std::abs(term) < 1e-18) break;
    }
    w_left = wl;
    w_right = wr;
  } else {
    const double e = std::exp(-theta);
    w_left = (1.0 - e * (1.0 + theta)) / (theta * theta);
    w_right = (theta - 1.0 + e) / (theta * theta);
  }
}

static void check_plan_grid(const ConvolutionPlan& plan, const SampledPath& g) {
  if (g.cells() != plan.n || std::abs(g.horizon() - plan.horizon) > 1e-12 * plan.horizon)
    throw std::invalid_argument("convolve: sample path grid does not match the plan");
  if (g.dimension() != plan.A.dimension())
    throw std::invalid_argument("convolve: sample path dimension does not match the operator");
}

Vec singular_convolution(const ConvolutionPlan& plan, const SampledPath& g, int t_index) {
  check_plan_grid(plan, g);
  if (t_index < 0 || t_index > plan.n)
    throw std::invalid_argument("singular_convolution: time index not on grid");
  const int N = plan.A.dimension();
  const double h = plan.dt();
  Vec out = Vec::Zero(N);
  for (int k = 0; k < N; ++k) {
    const double lam = plan.A.eigenvalue(k);
    double wl, wr;
    etd_weights(lam * h, wl, wr);
    double acc = 0.0;
    for (int j = 0; j < t_index; ++j) {
      const double decay = std::exp(-lam * h * (t_index - 1 - j));
      acc += decay * (wl * g.values()(k, j) + wr * g.values()(k, j + 1));
    }
    out(k) = std::pow(lam, plan.tau) * h * acc;
  }
  return out;
}

Vec convolution_increment(const ConvolutionPlan& plan, const SampledPath& g, int s_index,
                          int t_index, const Vec& prior) {
  check_plan_grid(plan, g);
  if (s_index < 0 || t_index > plan.n || s_index > t_index)
    throw std::invalid_argument("convolution_increment: bad window");
  if (prior.size() != plan.A.dimension())
    throw std::invalid_argument("convolution_increment: prior has wrong dimension");
  if (s_index == t_index) return prior;

  const int N = plan.A.dimension();
  const double h = plan.dt();
  Vec out(N);
  for (int k = 0; k < N; ++k) {
    const double lam = plan.A.eigenvalue(k);
    const double dec = std::exp(-lam * h);
    double wl, wr;
    etd_weights(lam * h, wl, wr);
    const double amp = std::pow(lam, plan.tau) * h;
    double acc = prior(k);
    for (int j = s_index; j < t_index; ++j)
      acc = acc * dec + amp * (wl * g.values()(k, j) + wr * g.values()(k, j + 1));
    out(k) = acc;
  }
  return out;
}

std::vector<Vec> convolution_path(const ConvolutionPlan& plan, const SampledPath& g) {
  check_plan_grid(plan, g);
  const int N = plan.A.dimension();
  const double h = plan.dt();
  Vec dec(N), amp(N), wl(N), wr(N);
  for (int k = 0; k < N; ++k) {
    const double lam = plan.A.eigenvalue(k);
    dec(k) = std::exp(-lam * h);
    double l, r;
    etd_weights(lam * h, l, r);
    wl(k) = l;
    wr(k) = r;
    amp(k) = std::pow(lam, plan.tau) * h;
  }
  std::vector<Vec> out(plan.n + 1);
  out[0] = Vec::Zero(N);
  for (int j = 0; j < plan.n; ++j) {
    out[j + 1] = dec.cwiseProduct(out[j]) +
                 amp.cwiseProduct(wl.cwiseProduct(g.values().col(j)) +
                                  wr.cwiseProduct(g.values().col(j + 1)));
  }
  return out;
}

Vec windowed_convolution(const ConvolutionPlan& plan, const SampledPath& g, int s_index,
                         int t_index) {
  Vec zero = Vec::Zero(plan.A.dimension());
  return convolution_increment(plan, g, s_index, t_index, zero);
}

BochnerBoundReport bochner_bound_check(const ConvolutionPlan& plan, const SampledPath& g,
                                       double K2_of_sup) {
  check_plan_grid(plan, g);
  BochnerBoundReport rep;
  const double h = plan.dt();

  for (int gap = 1; gap <= plan.n / 4; gap *= 2) rep.gaps.push_back(gap);
  if (rep.gaps.size() < 2)
    throw std::invalid_argument("bochner_bound_check: grid too coarse for a lattice sweep");

  double overall = 0.0;
  for (int gap : rep.gaps) {
    double sup = 0.0;
    const int stride = std::max(1, gap / 2);
    for (int s = 0; s + gap <= plan.n; s += stride)
      sup = std::max(sup, windowed_convolution(plan, g, s, s + gap).norm());
    rep.sup_norms.push_back(sup);
    overall = std::max(overall, sup);
  }
  if (overall == 0.0) {
    rep.smallest_constant = 0.0;
    rep.fitted_exponent = 1.0;
    rep.shape_ok = true;
    return rep;
  }

  // least-squares slope of log sup vs log gap
  const int m = static_cast<int>(rep.gaps.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < m; ++i) {
    const double x = std::log(rep.gaps[i] * h);
    const double y = std::log(std::max(rep.sup_norms[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  rep.fitted_exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);

  double c = 0.0;
  for (int i = 0; i < m; ++i) {
    const double denom = (K2_of_sup > 0.0 ? K2_of_sup : 1.0) *
                         std::pow(rep.gaps[i] * h, 1.0 - plan.tau);
    c = std::max(c, rep.sup_norms[i] / denom);
  }
  rep.smallest_constant = c;
  rep.shape_ok = rep.fitted_exponent >= 1.0 - plan.tau - 0.1;
  return rep;
}

}  // namespace roughmild
