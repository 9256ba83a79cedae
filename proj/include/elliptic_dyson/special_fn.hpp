#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include "elliptic_dyson/errors.hpp"
#include "elliptic_dyson/scaled.hpp"

namespace edyson {

inline constexpr double kPi = std::numbers::pi;
inline const cplx kI{0.0, 1.0};

/// Modular parameter tau in the upper half plane, with its nome q = exp(i pi tau).
class ModularParam {
public:
  explicit ModularParam(cplx tau);
  static ModularParam imaginary(double im) { return ModularParam(cplx(0.0, im)); }

  cplx tau() const { return tau_; }
  double im_tau() const { return tau_.imag(); }
  cplx nome() const { return nome_; }

private:
  cplx tau_;
  cplx nome_;
};

enum class ThetaKind { Theta0, Theta1, Theta2, Theta3 };

/// Value and first two v-derivatives of a theta function, sharing one scale:
/// true value = d0 * exp(log_scale), etc.
struct ThetaJet {
  cplx d0, d1, d2;
  double log_scale = 0.0;

  cplx value() const { return d0 * std::exp(log_scale); }
  cplx dv() const { return d1 * std::exp(log_scale); }
  cplx dv2() const { return d2 * std::exp(log_scale); }
  Scaled scaled() const { return Scaled(d0, log_scale); }
  /// theta'/theta, independent of the scale.
  cplx log_derivative() const { return d1 / d0; }
};

struct SeriesOptions {
  double rel_tol = 1e-16;
  int max_terms = 10000;
  /// The imaginary transformation is used when Im(tau) is below this and |tau| < 1.
  double switch_im_tau = 0.5;
};

ThetaJet theta_jet(ThetaKind kind, cplx v, cplx tau, const SeriesOptions& opt = {});
Scaled theta_scaled(ThetaKind kind, cplx v, cplx tau, const SeriesOptions& opt = {});

cplx theta(ThetaKind kind, cplx v, const ModularParam& tau);
cplx theta1_dv(cplx v, const ModularParam& tau);
cplx theta1_dv2(cplx v, const ModularParam& tau);

/// Time schedule tau(t) = i cal_n (t_star - t) / (2 pi r^2).
class ProcessClock {
public:
  ProcessClock(double t_star, double r);
  double t_star() const { return t_star_; }
  double r() const { return r_; }
  cplx tau_at(double cal_n, double t) const;

private:
  double t_star_;
  double r_;
};

/// Imaginary part of tau for the A-function with the given parameters.
inline double a_func_im_tau(double cal_n, double t_rem, double r) {
  return cal_n * t_rem / (2.0 * kPi * r * r);
}

/// Logarithmic derivative of theta_1 rescaled to period 2 pi r. Reference route through theta_jet.
double a_func(double cal_n, double t_rem, double x, double r, double guard_rel = 1e-12);

/// Fast evaluator of the same function for a fixed (cal_n, t_rem, r).
/// Uses the q-series for Im(tau) >= 1 and its modular dual otherwise.
class AFunction {
public:
  AFunction() = default;
  AFunction(double cal_n, double t_rem, double r, double guard_rel = 1e-12);

  double operator()(double x) const;
  /// Same as operator() but returns false instead of throwing near a pole.
  bool try_eval(double x, double& out) const;
  double period() const { return 2.0 * kPi * r_; }

private:
  double r_ = 1.0;
  double y_ = 1.0;
  double guard_ = 0.0;
  bool dual_ = false;
  std::vector<double> coef_;
  double dual_step_ = 0.0;
  double dual_base_ = 0.0;
};

cplx log_dedekind_eta(cplx tau);
cplx dedekind_eta(const ModularParam& tau);
/// log of prod_{n>=1} (1 - q^{2n}).
cplx log_q0(cplx tau);

cplx eisenstein_e2(cplx tau);
cplx eisenstein_e4(cplx tau);
cplx eisenstein_e6(cplx tau);

/// Quasi-period constant zeta(omega_1) for half-periods (pi r, i cal_n t_rem / 2r).
double eta1(double cal_n, double t_rem, double r);

/// Weierstrass functions of the lattice 2 m omega1 + 2 n omega3.
class WeierstrassLattice {
public:
  WeierstrassLattice(double omega1, cplx omega3, int box = 40);

  cplx p(cplx z) const;
  cplx zeta(cplx z) const;
  cplx eta_1() const { return eta1_; }
  cplx eta_3() const { return eta3_; }
  /// Eisenstein sum over the nonzero lattice points of Omega^{-2k}.
  cplx eisenstein(int k) const { return g_[static_cast<size_t>(k)]; }

private:
  cplx reduce(cplx z, long& m, long& n) const;
  cplx p_local(cplx z) const;
  cplx zeta_local(cplx z) const;

  double omega1_;
  cplx omega3_;
  std::vector<cplx> points_;
  std::vector<cplx> g_;
  std::vector<cplx> tail_;
  cplx eta1_{}, eta3_{};
  double guard_;
};

cplx weierstrass_p(cplx z, double omega1, cplx omega3);
cplx weierstrass_zeta(cplx z, double omega1, cplx omega3);

}  // namespace edyson
