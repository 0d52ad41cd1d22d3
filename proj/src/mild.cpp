#include "roughmild/mild.hpp"

#include <algorithm>
#include <cmath>

#include "roughmild/convolve.hpp"
#include "roughmild/rng.hpp"
#include "roughmild/young.hpp"

namespace roughmild {

void ProblemSpec::validate() const {
  if (tau < 0.0 || tau >= 1.0) throw std::invalid_argument("ProblemSpec: tau must be in [0,1)");
  if (delta < 0.0 || delta >= 1.0)
    throw std::invalid_argument("ProblemSpec: delta must be in [0,1)");
  if (alpha <= 0.5 || alpha > 1.0)
    throw std::invalid_argument("ProblemSpec: alpha must be in (1/2,1]");
  if (delta > alpha) throw std::invalid_argument("ProblemSpec: delta must not exceed alpha");
  if (delta + tau >= 1.0) throw std::invalid_argument("ProblemSpec: need delta + tau < 1");
  if (alpha + tau >= 1.0) throw std::invalid_argument("ProblemSpec: need alpha + tau < 1");
  if (alpha + delta <= 1.0) throw std::invalid_argument("ProblemSpec: need alpha + delta > 1");
  const double want = std::max(alpha + delta, 2.0 * alpha);
  if (std::abs(eps_F - want) > 1e-12)
    throw std::invalid_argument("ProblemSpec: eps_F must equal max(alpha+delta, 2 alpha)");
  if (u0.size() != A.dimension()) throw std::invalid_argument("ProblemSpec: u0 dimension mismatch");
  if (!Q || !DQ || !F || !DF || !K1 || !K2)
    throw std::invalid_argument("ProblemSpec: missing callable");
}

HtNorm ht_norm(const SampledPath& u, double delta, double alpha, const SpectralOperator& A) {
  if (u.dimension() != A.dimension())
    throw std::invalid_argument("ht_norm: path dimension does not match operator");
  HtNorm out;
  Vec pow_delta(A.dimension());
  for (int k = 0; k < A.dimension(); ++k) pow_delta(k) = std::pow(A.eigenvalue(k), delta);
  for (int j = 0; j <= u.cells(); ++j)
    out.sup_part = std::max(out.sup_part, pow_delta.cwiseProduct(u.values().col(j)).norm());
  out.holder_part = holder_norm(u, alpha).value;
  out.total = out.sup_part + out.holder_part;
  return out;
}

static HtNorm ht_norm_of_difference(const SampledPath& a, const SampledPath& b, double delta,
                                    double alpha, const SpectralOperator& A) {
  Mat diff = a.values() - b.values();
  return ht_norm(SampledPath(a.horizon(), std::move(diff)), delta, alpha, A);
}

static int grid_cells_for_horizon(const ProblemSpec& spec, double T) {
  const double dt = spec.w.dt();
  const int m = static_cast<int>(std::llround(T / dt));
  if (m < 1 || m > spec.w.cells() || std::abs(m * dt - T) > 1e-9 * dt)
    throw std::invalid_argument("mild: horizon is not a grid multiple of the driving path step");
  return m;
}

static SampledPath semigroup_path(const ProblemSpec& spec, int m) {
  const double dt = spec.w.dt();
  Mat v(spec.state_dimension(), m + 1);
  for (int j = 0; j <= m; ++j) {
    for (int k = 0; k < spec.state_dimension(); ++k)
      v(k, j) = std::exp(-spec.A.eigenvalue(k) * dt * j) * spec.u0(k);
  }
  return SampledPath(m * dt, std::move(v));
}

SolutionPath apply_L(const ProblemSpec& spec, const SampledPath& u) {
  spec.validate();
  const int m = u.cells();
  if (m > spec.w.cells()) throw std::invalid_argument("apply_L: path longer than driving path");
  if (std::abs(u.dt() - spec.w.dt()) > 1e-12 * spec.w.dt())
    throw std::invalid_argument("apply_L: path grid step differs from the driving path");
  if (u.dimension() != spec.state_dimension())
    throw std::invalid_argument("apply_L: path dimension mismatch");

  const int N = spec.state_dimension();
  const double dt = u.dt();
  const double T = u.horizon();

  // ordinary-integral term: smoothed convolution of the Q samples
  Mat q_samples(N, m + 1);
  for (int j = 0; j <= m; ++j) q_samples.col(j) = spec.Q(u.values().col(j));
  ConvolutionPlan plan(spec.A, spec.tau, m, T);
  std::vector<Vec> J = convolution_path(plan, SampledPath(T, q_samples));

  // Young term: U_{j+1} = e^{-dt A} (U_j + F(u_j) (w_{j+1} - w_j))
  Vec dec(N);
  for (int k = 0; k < N; ++k) dec(k) = std::exp(-spec.A.eigenvalue(k) * dt);
  Mat out(N, m + 1);
  Vec U = Vec::Zero(N);
  for (int j = 0; j <= m; ++j) {
    for (int k = 0; k < N; ++k)
      out(k, j) = std::exp(-spec.A.eigenvalue(k) * dt * j) * spec.u0(k) - J[j](k) + U(k);
    if (j < m) {
      const Vec dw = spec.w.values().col(j + 1) - spec.w.values().col(j);
      U = dec.cwiseProduct(U + spec.F(u.values().col(j)) * dw);
    }
  }

  SolutionPath sol{SampledPath(T, std::move(out)), HtNorm{}};
  sol.norm = ht_norm(sol.path, spec.delta, spec.alpha, spec.A);
  return sol;
}

std::pair<SolutionPath, SolverReport> picard_solve(const ProblemSpec& spec, double T,
                                                   const PicardOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("picard_solve: tol must be positive");
  const int m = grid_cells_for_horizon(spec, T);

  SolverReport rep;
  rep.horizon = T;

  SampledPath cur = semigroup_path(spec, m);
  rep.beta = ht_norm(cur, spec.delta, spec.alpha, spec.A).total;

  SolutionPath next{cur, HtNorm{}};
  int stall = 0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    next = apply_L(spec, cur);
    rep.iterations = it;
    rep.beta = std::max(rep.beta, next.norm.total);
    const double inc =
        ht_norm_of_difference(next.path, cur, spec.delta, spec.alpha, spec.A).total;
    if (!rep.increments.empty()) {
      const double prev = rep.increments.back();
      if (prev > 0.0) {
        const double ratio = inc / prev;
        rep.ratios.push_back(ratio);
        stall = (ratio >= 1.0) ? stall + 1 : 0;
      }
    }
    rep.increments.push_back(inc);
    cur = next.path;
    if (inc < opts.tol) {
      rep.converged = true;
      break;
    }
    if (stall >= 3) {
      rep.divergence_reason = "three consecutive non-contracting increments";
      break;
    }
  }
  if (!rep.converged && rep.divergence_reason.empty())
    rep.divergence_reason = "iteration budget exhausted";

  SolutionPath fixed = apply_L(spec, cur);
  rep.residual = ht_norm_of_difference(fixed.path, cur, spec.delta, spec.alpha, spec.A).total;
  return {fixed, rep};
}

std::pair<SolutionPath, SolverReport> solve_adaptive(const ProblemSpec& spec, double T,
                                                     const PicardOptions& opts, int max_halvings) {
  double horizon = T;
  for (int halved = 0;; ++halved) {
    auto [sol, rep] = picard_solve(spec, horizon, opts);
    rep.halvings = halved;
    if (rep.converged || halved >= max_halvings) return {sol, rep};
    const int m = grid_cells_for_horizon(spec, horizon);
    if (m % 2 != 0 || m / 2 < 2) return {sol, rep};
    horizon *= 0.5;
  }
}

// ---------------------------------------------------------------------------
// horizon selection: the explicit bound sheet (docs/horizon-bounds.md)
// ---------------------------------------------------------------------------

namespace {

double envelope_prefactor(double eps) {  // (eps/e)^eps
  return eps == 0.0 ? 1.0 : std::exp(eps * (std::log(eps) - 1.0));
}

// int_0^t (eps/(e r))^eps dr
double envelope_integral(double eps, double t) {
  return envelope_prefactor(eps) * std::pow(t, 1.0 - eps) / (1.0 - eps);
}

struct BoundInputs {
  double lam1 = 0.0;
  double w_holder = 0.0;        // discrete alpha-Hoelder norm of w on [0,T]
  double u0_alpha = 0.0;        // ||A^alpha u0||
  double u0_delta = 0.0;        // ||A^delta u0||
  double f_u0_plain = 0.0;      // ||F(u0)||_HS
  double f_u0_delta = 0.0;      // ||A^delta F(u0)||_HS
  double f_u0_alpha = 0.0;      // ||A^alpha F(u0)||_HS
  double f_zero_smooth = 0.0;   // ||A^{delta+epsF} F(0)||_HS
};

BoundInputs gather_inputs(const ProblemSpec& spec, int m) {
  BoundInputs in;
  in.lam1 = spec.A.spectral_gap();
  SampledPath wt = (m == spec.w.cells()) ? spec.w : slice(spec.w, 0, m, false);
  in.w_holder = holder_norm(wt, spec.alpha).value;
  in.u0_alpha = frac_power_apply(spec.A, spec.alpha, spec.u0).norm();
  in.u0_delta = frac_power_apply(spec.A, spec.delta, spec.u0).norm();
  const Mat f0 = spec.F(spec.u0);
  in.f_u0_plain = f0.norm();
  Mat scaled = f0;
  for (int k = 0; k < spec.A.dimension(); ++k)
    scaled.row(k) *= std::pow(spec.A.eigenvalue(k), spec.delta);
  in.f_u0_delta = scaled.norm();
  scaled = f0;
  for (int k = 0; k < spec.A.dimension(); ++k)
    scaled.row(k) *= std::pow(spec.A.eigenvalue(k), spec.alpha);
  in.f_u0_alpha = scaled.norm();
  const Mat fz = spec.F(Vec::Zero(spec.A.dimension()));
  scaled = fz;
  for (int k = 0; k < spec.A.dimension(); ++k)
    scaled.row(k) *= std::pow(spec.A.eigenvalue(k), spec.delta + spec.eps_F);
  in.f_zero_smooth = scaled.norm();
  return in;
}

// delta-Hoelder norm bound for r -> A^eps e^{-(t-r)A} F(u_r) on the beta-ball
double integrand_holder_bound(const ProblemSpec& spec, const BoundInputs& in, double eps, double T,
                              double beta) {
  const double lift = std::pow(in.lam1, eps - spec.eps_F);
  return lift * (spec.f_bounds.lip_plain * beta * std::pow(T, spec.alpha - spec.delta) +
                 spec.f_bounds.lip_delta * beta + in.f_zero_smooth);
}

double left_point_bound(const ProblemSpec& spec, const BoundInputs& in, double eps, double T,
                        double beta) {
  const double phi = (eps == 0.0)          ? in.f_u0_plain
                     : (eps == spec.delta) ? in.f_u0_delta
                                           : in.f_u0_alpha;
  return std::pow(in.lam1, eps - spec.eps_F) * spec.f_bounds.lip_plain * beta *
             std::pow(T, spec.alpha) +
         phi;
}

double bochner_sup_factor(const ProblemSpec& spec, double T) {
  return envelope_integral(spec.delta + spec.tau, T);
}

double bochner_holder_factor(const ProblemSpec& spec, double T) {
  const double a = envelope_prefactor(spec.tau) / (1.0 - spec.tau);
  const double b = envelope_prefactor(spec.alpha + spec.tau) / (1.0 - spec.alpha - spec.tau);
  return (a + b) * std::pow(T, 1.0 - spec.tau - spec.alpha);
}

}  // namespace

double invariance_bound(const ProblemSpec& spec, double T, double beta) {
  spec.validate();
  const int m = grid_cells_for_horizon(spec, T);
  const BoundInputs in = gather_inputs(spec, m);
  const double csew = sewing_constant(spec.delta + spec.alpha);
  const double k2 = spec.K2(beta);

  const double init = in.u0_delta + in.u0_alpha;
  const double bochner = k2 * (bochner_sup_factor(spec, T) + bochner_holder_factor(spec, T));

  const double hd = integrand_holder_bound(spec, in, spec.delta, T, beta);
  const double h0 = integrand_holder_bound(spec, in, 0.0, T, beta);
  const double ha = integrand_holder_bound(spec, in, spec.alpha, T, beta);
  const double young_sup = csew * hd * std::pow(T, spec.delta + spec.alpha) +
                           left_point_bound(spec, in, spec.delta, T, beta) * std::pow(T, spec.alpha);
  const double young_holder =
      csew * (h0 * std::pow(T, spec.delta) + ha * std::pow(T, spec.delta + spec.alpha)) +
      left_point_bound(spec, in, 0.0, T, beta) +
      left_point_bound(spec, in, spec.alpha, T, beta) * std::pow(T, spec.alpha);

  return init + bochner + in.w_holder * (young_sup + young_holder);
}

double contraction_factor(const ProblemSpec& spec, double T, double beta) {
  spec.validate();
  const int m = grid_cells_for_horizon(spec, T);
  const BoundInputs in = gather_inputs(spec, m);
  const double csew = sewing_constant(spec.delta + spec.alpha);
  const double k1 = spec.K1(2.0 * beta);

  const double bochner = k1 * (bochner_sup_factor(spec, T) + bochner_holder_factor(spec, T));

  auto diff_holder = [&](double eps) {
    const double lift = std::pow(in.lam1, eps - spec.eps_F);
    return lift * ((spec.f_bounds.sup_deriv +
                    1.5 * spec.f_bounds.lip_deriv * beta * std::pow(T, spec.alpha)) *
                       std::pow(T, spec.alpha - spec.delta) +
                   spec.f_bounds.lip_delta);
  };
  auto diff_left = [&](double eps) {
    return std::pow(in.lam1, eps - spec.eps_F) * spec.f_bounds.lip_plain * std::pow(T, spec.alpha);
  };

  const double young_sup = csew * diff_holder(spec.delta) * std::pow(T, spec.delta + spec.alpha) +
                           diff_left(spec.delta) * std::pow(T, spec.alpha);
  const double young_holder =
      csew * (diff_holder(0.0) * std::pow(T, spec.delta) +
              diff_holder(spec.alpha) * std::pow(T, spec.delta + spec.alpha)) +
      diff_left(0.0) + diff_left(spec.alpha) * std::pow(T, spec.alpha);

  return bochner + in.w_holder * (young_sup + young_holder);
}

InfeasibleHorizon::InfeasibleHorizon(double invariance, double contraction)
    : std::runtime_error("select_horizon: no admissible horizon; invariance bound " +
                         std::to_string(invariance) + ", contraction factor " +
                         std::to_string(contraction)),
      invariance_value(invariance),
      contraction_value(contraction) {}

HorizonSelection select_horizon(const ProblemSpec& spec, double beta) {
  spec.validate();
  if (!(beta > 0.0)) throw std::invalid_argument("select_horizon: beta must be positive");

  HorizonSelection last{};
  bool have_last = false;
  double T = spec.w.horizon();
  int m = spec.w.cells();
  while (m >= 2) {
    const double inv = invariance_bound(spec, T, beta);
    const double con = contraction_factor(spec, T, beta);
    last = HorizonSelection{T, inv, con};
    have_last = true;
    if (inv <= beta && con <= 0.5) return last;
    if (m % 2 != 0) break;
    m /= 2;
    T *= 0.5;
  }
  if (!have_last) throw std::invalid_argument("select_horizon: driving path grid too coarse");
  throw InfeasibleHorizon(last.invariance_bound, last.contraction_factor);
}

double lipschitz_probe(const ProblemSpec& spec, double T, const SampledPath& u,
                       const SampledPath& v) {
  const int m = grid_cells_for_horizon(spec, T);
  if (u.cells() < m || v.cells() < m)
    throw std::invalid_argument("lipschitz_probe: paths shorter than the probe horizon");
  SampledPath uu = (u.cells() == m) ? u : slice(u, 0, m, false);
  SampledPath vv = (v.cells() == m) ? v : slice(v, 0, m, false);
  const double den = ht_norm_of_difference(uu, vv, spec.delta, spec.alpha, spec.A).total;
  if (den == 0.0) throw std::invalid_argument("lipschitz_probe: paths coincide on the grid");
  SolutionPath lu = apply_L(spec, uu);
  SolutionPath lv = apply_L(spec, vv);
  return ht_norm_of_difference(lu.path, lv.path, spec.delta, spec.alpha, spec.A).total / den;
}

SegmentedSolution continue_solution(const ProblemSpec& spec, int segments, double T_each,
                                    const PicardOptions& opts) {
  spec.validate();
  if (segments < 1) throw std::invalid_argument("continue_solution: need at least one segment");
  const int m = grid_cells_for_horizon(spec, T_each);
  if (segments * m > spec.w.cells())
    throw std::invalid_argument("continue_solution: driving path shorter than the segment plan");

  SegmentedSolution out;
  Mat total(spec.state_dimension(), segments * m + 1);
  Vec current_u0 = spec.u0;
  for (int s = 0; s < segments; ++s) {
    ProblemSpec seg = spec;
    seg.u0 = current_u0;
    seg.w = slice(spec.w, s * m, spec.w.cells(), true);
    auto [sol, rep] = picard_solve(seg, T_each, opts);
    out.reports.push_back(rep);
    if (!rep.converged) {
      out.failed_segment = s;
      if (s > 0) out.path = SampledPath(s * T_each, total.leftCols(s * m + 1));
      return out;
    }
    for (int j = (s == 0 ? 0 : 1); j <= m; ++j) total.col(s * m + j) = sol.path.values().col(j);
    current_u0 = sol.path.values().col(m);
  }
  out.converged = true;
  out.path = SampledPath(segments * T_each, std::move(total));
  return out;
}

// ---------------------------------------------------------------------------
// derivative checks
// ---------------------------------------------------------------------------

namespace {

Vec audit_point(const ProblemSpec& spec, CounterRng& rng, double scale) {
  Vec x(spec.state_dimension());
  for (int k = 0; k < x.size(); ++k)
    x(k) = scale * rng.next_gaussian() * std::pow(spec.A.eigenvalue(k), -spec.delta - 0.25);
  return x;
}

Mat smoothed_f(const ProblemSpec& spec, const Vec& x) {
  Mat f = spec.F(x);
  for (int k = 0; k < spec.A.dimension(); ++k)
    f.row(k) *= std::pow(spec.A.eigenvalue(k), spec.eps_F);
  return f;
}

std::vector<double> remainder_orders(const std::function<double(double)>& remainder) {
  const double eps0 = 1e-2, eps1 = 1e-3, eps2 = 1e-4;
  const double e0 = remainder(eps0), e1 = remainder(eps1), e2 = remainder(eps2);
  return {std::log10(e0 / e1), std::log10(e1 / e2)};
}

}  // namespace

std::vector<double> dq_remainder_orders(const ProblemSpec& spec, std::uint64_t seed) {
  CounterRng rng = CounterRng(seed).stream(101);
  const Vec x = audit_point(spec, rng, 0.5);
  const Vec xi = audit_point(spec, rng, 0.5);
  const Vec base = spec.Q(x);
  const Vec dq = spec.DQ(x, xi);
  return remainder_orders(
      [&](double eps) { return (spec.Q(x + eps * xi) - base - eps * dq).norm(); });
}

std::vector<double> df_remainder_orders(const ProblemSpec& spec, std::uint64_t seed) {
  CounterRng rng = CounterRng(seed).stream(202);
  const Vec x = audit_point(spec, rng, 0.5);
  const Vec y = audit_point(spec, rng, 0.5);
  const Mat base = smoothed_f(spec, x);
  const Mat df = spec.DF(x, y);
  return remainder_orders(
      [&](double eps) { return (smoothed_f(spec, x + eps * y) - base - eps * df).norm(); });
}

}  // namespace roughmild
