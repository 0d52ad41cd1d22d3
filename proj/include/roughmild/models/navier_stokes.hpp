#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "roughmild/mild.hpp"

namespace roughmild {

// Fourier-Galerkin truncation of divergence-free periodic vector fields:
// wavevectors 0 < |k| <= k_max in Z^d (d = 2 or 3), one complex amplitude in
// C^d per wavevector with the reality constraint u(-k) = conj(u(k)). Real
// solver coordinates are the cos/sin amplitudes along (d-1) real polarization
// vectors per conjugate pair, ordered by |k|^2 so the induced Stokes spectrum
// is ascending.
class WavevectorBasis {
 public:
  WavevectorBasis(int dim, int k_max);

  int dim() const { return dim_; }
  int k_max() const { return k_max_; }
  int mode_count() const { return static_cast<int>(modes_.size()); }
  int canonical_count() const { return static_cast<int>(canonical_.size()); }
  int coord_count() const { return 2 * (dim_ - 1) * canonical_count(); }

  const Eigen::Vector3i& mode(int i) const { return modes_[i]; }
  int conj_index(int i) const { return conj_[i]; }
  int canonical_mode(int rank) const { return canonical_[rank]; }
  // real orthonormal basis of the plane orthogonal to the wavevector
  const Eigen::Matrix<double, 3, 2>& polarization(int rank) const { return pol_[rank]; }
  // index of a wavevector, or -1 outside the truncation
  int find(const Eigen::Vector3i& k) const;
  double mode_lambda(int i) const { return modes_[i].cast<double>().squaredNorm(); }

  // per-coordinate Stokes eigenvalues |k|^2, ascending
  Vec eigenvalues() const;

 private:
  int dim_;
  int k_max_;
  std::vector<Eigen::Vector3i> modes_;
  std::vector<int> conj_;
  std::vector<int> canonical_;
  std::vector<Eigen::Matrix<double, 3, 2>> pol_;
  std::vector<int> lookup_;  // dense (2K+1)^3 table of mode indices
};

// Divergence-free (after projection) truncated velocity field in spectral
// form; coefficients are stored for every wavevector of the basis.
struct FourierField {
  const WavevectorBasis* basis = nullptr;
  std::vector<Eigen::Vector3cd> coef;

  explicit FourierField(const WavevectorBasis& b)
      : basis(&b), coef(b.mode_count(), Eigen::Vector3cd::Zero()) {}

  double reality_defect() const;     // max |coef(-k) - conj(coef(k))|
  double divergence_defect() const;  // max |k . coef(k)|
  double norm() const;
};

FourierField field_from_coords(const WavevectorBasis& basis, const Vec& coords);
Vec coords_from_field(const FourierField& f);

// inner product Re sum_k u(k) . conj(v(k))
double field_inner(const FourierField& u, const FourierField& v);
// sqrt(sum_k |k|^{4e} |u(k)|^2)
double field_norm_pow(const FourierField& u, double e);

// per-mode removal of the component along the wavevector
FourierField leray_project(const FourierField& f);

// Galerkin truncation of the projected advection term: the convolution
// i sum_{p+q=k} (u(p).q) v(q) over wavevector pairs inside the truncation,
// then the projection. Direct summation over the support of u and v.
FourierField ns_bilinear(const FourierField& u, const FourierField& v);

// CSV with columns k1..kd, re_1..re_d, im_1..im_d, one row per wavevector
void write_field_csv(const FourierField& f, const std::string& file);
FourierField read_field_csv(const WavevectorBasis& basis, const std::string& file);

struct NsModelParams {
  int dim = 2;
  int k_max = 4;
  double delta = 0.5;
  double tau = 0.25;
  double alpha = 0.6;
  int noise_dim = 4;
  double noise_amp = 0.05;
  double hurst = 0.75;
  double horizon = 0.25;
  int n_grid = 256;
  std::uint64_t seed = 1;
};

// Periodic Fourier-Galerkin Stokes system: A has eigenvalues |k|^2 on the
// divergence-free coordinates, Q(u) = A^{-tau} B(u,u) with B the projected
// advection term, DQ(u) xi = A^{-tau}(B(u,xi) + B(xi,u)), and the saturating
// spectral noise coefficient shared with the heat model.
ProblemSpec make_ns_model(const NsModelParams& params);
ProblemSpec make_ns_model(const NsModelParams& params, const Vec& u0_coords);

// default initial field: a single large-scale shear/vortex mode
Vec taylor_green_coords(const WavevectorBasis& basis, double amplitude);

struct SobolevskiEstimate {
  double value = 0.0;
  Eigen::Vector3i mode_u = Eigen::Vector3i::Zero();  // wavevector pair attaining the
  Eigen::Vector3i mode_w = Eigen::Vector3i::Zero();  // maximum when found by the sweep
  bool from_sweep = false;
  int samples_used = 0;
};

// Estimates the smallest constant C with
//   ||A^{-1/4} P(w . grad u)|| <= C ||A^{1/2} u|| ||A^{1/2} w||
// over the truncation. Combines a deterministic sweep over single-wavevector
// pairs (each polished by an alternating symmetric eigenvalue iteration) with
// `samples` random divergence-free pairs drawn from a spectral-decay mixture.
SobolevskiEstimate sobolevski_check(const WavevectorBasis& basis, int samples, std::uint64_t seed);

// fitted growth constant used for the declared K1/K2 of the Galerkin system
double ns_growth_constant(const WavevectorBasis& basis);

}  // namespace roughmild
