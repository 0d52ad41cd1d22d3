#include "roughmild/models/audit.hpp"

#include <cmath>
#include <sstream>

namespace roughmild {

Vec sample_decaying_state(const SpectralOperator& A, double gamma, CounterRng& rng) {
  Vec x(A.dimension());
  for (int k = 0; k < x.size(); ++k)
    x(k) = rng.next_gaussian() * std::pow(A.eigenvalue(k), -0.5 * gamma);
  return x;
}

namespace {

Mat frac_rows(const SpectralOperator& A, double eps, Mat m) {
  for (int k = 0; k < A.dimension(); ++k) m.row(k) *= std::pow(A.eigenvalue(k), eps);
  return m;
}

struct RatioTracker {
  double worst = 0.0;
  double fitted = 0.0;  // largest measured constant before dividing by the declared one
  std::string witness;

  void update(double measured, double declared, const std::string& desc) {
    fitted = std::max(fitted, measured);
    const double r = declared > 0.0 ? measured / declared : (measured > 0.0 ? 1e300 : 0.0);
    if (r > worst) {
      worst = r;
      witness = desc;
    }
  }
};

std::string describe(const char* label, double a, double b) {
  std::ostringstream os;
  os << label << " at sample with scales " << a << ", " << b;
  return os.str();
}

}  // namespace

AuditReport condition_audit(const ProblemSpec& spec, int samples, std::uint64_t seed) {
  spec.validate();
  CounterRng rng = CounterRng(seed).stream(0xA0D17ull);

  RatioTracker q_lip, q_growth, f_plain, f_delta, f_opnorm, f_value;
  const double phi0 =
      frac_rows(spec.A, spec.delta + spec.eps_F, spec.F(Vec::Zero(spec.A.dimension()))).norm();

  for (int s = 0; s < samples; ++s) {
    const double gx = 3.0 * rng.next_unit();
    const double gy = 3.0 * rng.next_unit();
    Vec x = sample_decaying_state(spec.A, gx, rng);
    Vec y = sample_decaying_state(spec.A, gy, rng);

    const double dx = frac_power_apply(spec.A, spec.delta, x).norm();
    const double dy = frac_power_apply(spec.A, spec.delta, y).norm();
    const double ddiff = frac_power_apply(spec.A, spec.delta, Vec(x - y)).norm();

    // Q bounds
    const Vec qx = spec.Q(x);
    const Vec qy = spec.Q(y);
    if (ddiff > 0.0)
      q_lip.update((qx - qy).norm(), spec.K1(dx + dy) * ddiff, describe("Q difference", gx, gy));
    q_growth.update(qx.norm(), spec.K2(dx), describe("Q growth", gx, 0.0));

    // noise coefficient bounds
    const Mat fx = spec.F(x);
    const Mat fy = spec.F(y);
    const Mat diff_eps = frac_rows(spec.A, spec.eps_F, fx - fy);
    const Mat diff_full = frac_rows(spec.A, spec.delta + spec.eps_F, fx - fy);
    const double plain = (x - y).norm();
    if (plain > 0.0)
      f_plain.update(diff_eps.norm(), spec.f_bounds.lip_plain * plain,
                     describe("smoothed F difference", gx, gy));
    if (ddiff > 0.0)
      f_delta.update(diff_full.norm(), spec.f_bounds.lip_delta * ddiff,
                     describe("fully smoothed F difference", gx, gy));

    Vec xi(spec.noise_dimension());
    for (int j = 0; j < xi.size(); ++j) xi(j) = rng.next_gaussian();
    if (plain > 0.0)
      f_opnorm.update((diff_eps * xi).norm(), spec.f_bounds.lip_plain * plain * xi.norm(),
                      describe("smoothed F difference applied", gx, gy));
    f_value.update((frac_rows(spec.A, spec.delta + spec.eps_F, fx) * xi).norm(),
                   (spec.f_bounds.lip_delta * dx + phi0) * xi.norm(),
                   describe("smoothed F value", gx, 0.0));
  }

  AuditReport rep;
  auto push = [&rep](const char* name, const RatioTracker& t) {
    AuditItem item;
    item.name = name;
    item.worst_ratio = t.worst;
    item.fitted_constant = t.fitted;
    item.pass = t.worst <= 1.0 + 1e-9;
    item.witness = t.witness;
    rep.items.push_back(item);
  };
  push("q_local_lipschitz", q_lip);
  push("q_growth", q_growth);
  push("f_smoothing_lipschitz", f_plain);
  push("f_smoothing_lipschitz_delta", f_delta);
  push("f_difference_operator_norm", f_opnorm);
  push("f_smoothed_value_growth", f_value);
  rep.pass = true;
  for (const AuditItem& item : rep.items) rep.pass = rep.pass && item.pass;
  return rep;
}

std::string format_audit(const AuditReport& report) {
  std::ostringstream os;
  for (const AuditItem& item : report.items) {
    os << (item.pass ? "pass" : "FAIL") << "  " << item.name << "  worst_ratio=" << item.worst_ratio
       << "  fitted=" << item.fitted_constant;
    if (!item.pass) os << "  [" << item.witness << "]";
    os << "\n";
  }
  os << (report.pass ? "audit: pass" : "audit: FAIL") << "\n";
  return os.str();
}

}  // namespace roughmild
