#pragma once

#include <span>
#include <vector>

#include "elliptic_dyson/root_systems.hpp"

namespace edyson {

/// Closed-form interpolation function Phi_{u,u_j}(z) at modular parameter tau0. j = 1..N.
Scaled phi_interp_scaled(const Family& fam, const Config& u, int j, cplx z, cplx tau0, double r);
cplx phi_interp(const Family& fam, const Config& u, int j, cplx z, const ModularParam& tau0, double r);

/// Expansion coefficients of the interpolation functions in the basis f_k.
/// Stored as the inverse of the row-normalized basis matrix plus the row log-scales,
/// so that phi(j, k) = normalized(j, k) * exp(-row_log_scale[k]).
class InterpCoeffs {
public:
  InterpCoeffs(const Family& fam, const Config& u, cplx tau0, double r, double max_condition = 1e12);

  const Family& family() const { return fam_; }
  const Config& config() const { return u_; }
  cplx tau0() const { return tau0_; }
  double r() const { return r_; }
  double condition() const { return condition_; }

  /// phi_{u,u_j}(k), 1-based. May overflow for extreme tau0.
  cplx phi(int j, int k) const;
  const Eigen::MatrixXcd& normalized() const { return inv_; }
  const std::vector<double>& row_log_scale() const { return scale_; }

  /// sum_k phi_{u,u_j}(k) f_k(z; tau0).
  cplx expand(int j, cplx z) const;

private:
  Family fam_;
  Config u_;
  cplx tau0_;
  double r_;
  Eigen::MatrixXcd inv_;
  std::vector<double> scale_;
  double condition_ = 0.0;
};

InterpCoeffs phi_coeffs(const Family& fam, const Config& u, const ModularParam& tau0, double r);

/// Time-evolved basis e^{J^2 t / 2r^2} f_j(x; tau(t)).
Scaled f_hat_scaled(const Family& fam, int j, double t, cplx x, const ProcessClock& clock);
cplx f_hat(const Family& fam, int j, double t, cplx x, const ProcessClock& clock);

/// Log of the normalization c0 built from Dedekind eta at tau, 2 tau or tau/2.
cplx log_c0(const Family& fam, cplx tau);

/// Martingale functions M_j and the determinantal martingale function D for fixed (family, clock, u).
class MartingaleCtx {
public:
  MartingaleCtx(const Family& fam, const ProcessClock& clock, const Config& u);

  const Family& family() const { return fam_; }
  const ProcessClock& clock() const { return clock_; }
  const Config& config() const { return u_; }
  const InterpCoeffs& coeffs() const { return coeffs_; }
  cplx tau_at(double t) const { return clock_.tau_at(fam_.cal_n(), t); }

  /// M_{u,u_j}(t, y), 1-based j.
  cplx m_mart(int j, double t, cplx y) const;
  /// All M_j(t, y), j = 1..N, sharing the basis evaluations.
  std::vector<cplx> m_mart_all(double t, cplx y) const;

  /// Factorized product form.
  double d_mart(double t, std::span<const double> x) const;
  Scaled d_mart_scaled(double t, std::span<const cplx> x) const;
  /// det[M_j(t, x_k)].
  double d_mart_det(double t, std::span<const double> x) const;
  /// e^{t sum J^2 / 2r^2} det f(x; tau(t)) / det f(u; tau(0)).
  double d_mart_ratio(double t, std::span<const double> x) const;

private:
  void check_time(double t) const;

  Family fam_;
  ProcessClock clock_;
  Config u_;
  cplx tau0_;
  InterpCoeffs coeffs_;
  // factor values at (0, u)
  cplx log_c0_0_;
  Scaled ksym0_;
  Scaled k1_0_;
  Scaled k2_0_;
  Scaled det0_;
};

}  // namespace edyson
