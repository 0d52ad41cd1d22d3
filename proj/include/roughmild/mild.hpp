#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "roughmild/paths.hpp"
#include "roughmild/spectral.hpp"

namespace roughmild {

// Global bounds of the noise coefficient, declared by the model builder and
// consumed by the horizon selector (see docs/horizon-bounds.md):
//   lip_plain : ||A^epsF [F(x)-F(y)]||_HS <= lip_plain ||x-y||
//   lip_delta : ||A^{delta+epsF} [F(x)-F(y)]||_HS <= lip_delta ||A^delta (x-y)||
//   sup_deriv : sup_x || D(A^epsF F)(x) ||
//   lip_deriv : Lipschitz constant of x -> D(A^epsF F)(x)
struct FCoefficientBounds {
  double lip_plain = 0.0;
  double lip_delta = 0.0;
  double sup_deriv = 0.0;
  double lip_deriv = 0.0;
};

// One full evolution problem: the operator, the smoothed nonlinearity Q with
// its derivative, the noise coefficient F with the derivative of A^epsF F,
// the exponent triple, growth bounds, initial value and driving path.
struct ProblemSpec {
  SpectralOperator A;
  std::function<Vec(const Vec&)> Q;
  std::function<Vec(const Vec&, const Vec&)> DQ;   // (x, xi) -> DQ(x) xi
  std::function<Mat(const Vec&)> F;                // N x M
  std::function<Mat(const Vec&, const Vec&)> DF;   // (x, y) -> D(A^epsF F)(x) y
  double tau = 0.0;
  double delta = 0.0;
  double alpha = 0.0;
  double eps_F = 0.0;  // max(alpha + delta, 2 alpha)
  std::function<double(double)> K1;  // increasing; local Lipschitz scale of Q
  std::function<double(double)> K2;  // increasing; growth bound of Q
  FCoefficientBounds f_bounds;
  Vec u0;
  SampledPath w;

  // throws std::invalid_argument if the exponent constraints or shapes fail
  void validate() const;
  int state_dimension() const { return A.dimension(); }
  int noise_dimension() const { return w.dimension(); }
};

struct HtNorm {
  double sup_part = 0.0;     // sup_t ||A^delta u_t||
  double holder_part = 0.0;  // discrete alpha-Hoelder norm of u
  double total = 0.0;
};

HtNorm ht_norm(const SampledPath& u, double delta, double alpha, const SpectralOperator& A);

struct SolutionPath {
  SampledPath path;
  HtNorm norm;
};

// One application of the mild-solution map: semigroup of the initial value,
// minus the smoothed convolution of Q(u), plus the semigroup-weighted
// left-point Young recursion of F(u) dw. u must live on a prefix of the grid
// of spec.w.
SolutionPath apply_L(const ProblemSpec& spec, const SampledPath& u);

struct SolverReport {
  bool converged = false;
  int iterations = 0;
  std::vector<double> increments;  // H_T norms of successive differences
  std::vector<double> ratios;      // increments[k+1] / increments[k]
  double residual = 0.0;           // H_T norm of L(u*) - u*
  double horizon = 0.0;
  double beta = 0.0;               // largest H_T norm among the iterates
  int halvings = 0;
  std::string divergence_reason;
};

struct PicardOptions {
  double tol = 1e-8;
  int max_iter = 60;
};

// Picard iteration u^{k+1} = L u^k from u^0_t = e^{-tA} u0 on [0, T].
// T must be a grid multiple of spec.w's step. A non-converged report (three
// consecutive ratios >= 1, or max_iter) is returned with converged = false.
std::pair<SolutionPath, SolverReport> picard_solve(const ProblemSpec& spec, double T,
                                                   const PicardOptions& opts);

// picard_solve with the divergence policy: halve T and retry, at most
// max_halvings times.
std::pair<SolutionPath, SolverReport> solve_adaptive(const ProblemSpec& spec, double T,
                                                     const PicardOptions& opts,
                                                     int max_halvings = 6);

struct HorizonSelection {
  double t_star = 0.0;
  double invariance_bound = 0.0;    // bound on ||L u||_{H_T*} over the beta-ball
  double contraction_factor = 0.0;  // bound on the Lipschitz constant of L at T*
};

// Raised by select_horizon when no admissible horizon exists; carries the
// two offending bound values at the smallest dyadic horizon tried.
class InfeasibleHorizon : public std::runtime_error {
 public:
  InfeasibleHorizon(double invariance, double contraction);
  double invariance_value;
  double contraction_value;
};

// Explicit a-priori bounds behind select_horizon; see docs/horizon-bounds.md.
double invariance_bound(const ProblemSpec& spec, double T, double beta);
double contraction_factor(const ProblemSpec& spec, double T, double beta);

// Largest grid-aligned dyadic T <= horizon(w) with invariance_bound <= beta
// and contraction_factor <= 1/2. Requires beta above the T->0 floor of the
// invariance bound.
HorizonSelection select_horizon(const ProblemSpec& spec, double beta);

// ||L u - L v||_{H_T} / ||u - v||_{H_T} on a shared grid prefix
double lipschitz_probe(const ProblemSpec& spec, double T, const SampledPath& u,
                       const SampledPath& v);

struct SegmentedSolution {
  // concatenated over [0, segments * T_each]; on failure, the prefix of
  // converged segments (absent when the first segment already failed)
  std::optional<SampledPath> path;
  std::vector<SolverReport> reports;
  bool converged = false;
  int failed_segment = -1;
};

// Restarts picard_solve segment by segment, handing the terminal value of
// one segment to the next as its initial value and time-shifting the driving
// path. Joints are exact by construction.
SegmentedSolution continue_solution(const ProblemSpec& spec, int segments, double T_each,
                                    const PicardOptions& opts);

// Taylor-remainder derivative checks shared by the audits and the test
// suites: slopes of log10 ||G(x+eps y) - G(x) - eps DG(x) y|| across eps
// in {1e-2, 1e-3, 1e-4}; a slope of 2 is exact first-order differentiation.
std::vector<double> dq_remainder_orders(const ProblemSpec& spec, std::uint64_t seed);
std::vector<double> df_remainder_orders(const ProblemSpec& spec, std::uint64_t seed);

}  // namespace roughmild
