#include "elliptic_dyson/special_fn.hpp"

#include <algorithm>
#include <cmath>

namespace edyson {

ModularParam::ModularParam(cplx tau) : tau_(tau) {
  if (!std::isfinite(tau.real()) || !std::isfinite(tau.imag()))
    fail(ErrorKind::InvalidArgument, "tau must be finite");
  if (!(tau.imag() > 0.0)) fail(ErrorKind::InvalidArgument, "Im(tau) must be positive");
  nome_ = std::exp(kI * kPi * tau);
}

ProcessClock::ProcessClock(double t_star, double r) : t_star_(t_star), r_(r) {
  require(t_star > 0.0, "t_star must be positive");
  require(r > 0.0 && std::isfinite(r), "r must be positive and finite");
}

cplx ProcessClock::tau_at(double cal_n, double t) const {
  require(t >= 0.0 && t < t_star_, "time outside [0, t_star)");
  return cplx(0.0, cal_n * (t_star_ - t) / (2.0 * kPi * r_ * r_));
}

namespace {

struct ScaledTrig {
  cplx s, c;  // sin(w), cos(w) times exp(-|Im w|)
};

ScaledTrig scaled_trig(cplx w) {
  double b = std::abs(w.imag());
  if (b < 20.0) {
    double e = std::exp(-b);
    return {std::sin(w) * e, std::cos(w) * e};
  }
  cplx ep = std::exp(kI * w - b);
  cplx em = std::exp(-kI * w - b);
  return {(ep - em) / (2.0 * kI), 0.5 * (ep + em)};
}

bool odd_shift(double k) { return std::fmod(std::abs(k), 2.0) == 1.0; }

ThetaJet direct_jet(ThetaKind kind, cplx v, cplx tau, const SeriesOptions& opt) {
  const bool half = kind == ThetaKind::Theta1 || kind == ThetaKind::Theta2;
  const bool use_sin = kind == ThetaKind::Theta1;

  double shift = std::round(v.real());
  v -= shift;
  const double sign = (half && odd_shift(shift)) ? -1.0 : 1.0;

  const double ty = tau.imag();
  const double vy = std::abs(v.imag());
  auto expo = [&](double m) { return -kPi * ty * m * m + 2.0 * kPi * m * vy; };
  const double m0 = half ? 0.5 : 1.0;
  const double mstar = vy / ty;

  double peak = half ? expo(0.5) : 0.0;
  double base = std::floor(mstar - m0);
  for (double c : {base, base + 1.0}) {
    if (c >= 0.0) peak = std::max(peak, expo(m0 + c));
  }

  ThetaJet jet{};
  jet.log_scale = peak;
  if (!half) jet.d0 = std::exp(-peak);
  double a0 = std::abs(jet.d0), a1 = 0.0, a2 = 0.0;
  int quiet = 0;
  for (int n = 1;; ++n) {
    if (n > opt.max_terms) fail(ErrorKind::SeriesNonConvergence, "theta series did not converge");
    const double m = half ? n - 0.5 : static_cast<double>(n);
    const double om = 2.0 * m * kPi;
    const cplx w = om * v;
    double sgn = 1.0;
    if (kind == ThetaKind::Theta1) sgn = (n % 2 == 1) ? 1.0 : -1.0;
    if (kind == ThetaKind::Theta0) sgn = (n % 2 == 1) ? -1.0 : 1.0;
    const cplx coef = 2.0 * sgn * std::exp(kI * kPi * tau * (m * m) + (std::abs(w.imag()) - peak));
    const ScaledTrig tr = scaled_trig(w);
    cplx t0, t1, t2;
    if (use_sin) {
      t0 = coef * tr.s;
      t1 = coef * om * tr.c;
      t2 = -coef * om * om * tr.s;
    } else {
      t0 = coef * tr.c;
      t1 = -coef * om * tr.s;
      t2 = -coef * om * om * tr.c;
    }
    jet.d0 += t0;
    jet.d1 += t1;
    jet.d2 += t2;
    const double b0 = std::abs(t0), b1 = std::abs(t1), b2 = std::abs(t2);
    a0 += b0;
    a1 += b1;
    a2 += b2;
    if (m > mstar) {
      const double tol = opt.rel_tol;
      if (b0 <= tol * a0 && b1 <= tol * a1 && b2 <= tol * a2)
        ++quiet;
      else
        quiet = 0;
      if (quiet >= 3) break;
    }
  }
  jet.d0 *= sign;
  jet.d1 *= sign;
  jet.d2 *= sign;
  return jet;
}

}  // namespace

ThetaJet theta_jet(ThetaKind kind, cplx v, cplx tau, const SeriesOptions& opt) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    fail(ErrorKind::InvalidArgument, "theta argument must be finite");
  if (!(tau.imag() > 0.0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag()))
    fail(ErrorKind::InvalidArgument, "Im(tau) must be positive");

  const bool half = kind == ThetaKind::Theta1 || kind == ThetaKind::Theta2;
  double shift = std::round(v.real());
  v -= shift;
  const double sign = (half && odd_shift(shift)) ? -1.0 : 1.0;

  ThetaJet jet;
  if (tau.imag() < opt.switch_im_tau && std::abs(tau) < 1.0) {
    ThetaKind partner = kind;
    if (kind == ThetaKind::Theta0) partner = ThetaKind::Theta2;
    if (kind == ThetaKind::Theta2) partner = ThetaKind::Theta0;
    const ThetaJet t = direct_jet(partner, v / tau, -1.0 / tau, opt);
    const double k_phase = (kind == ThetaKind::Theta1) ? 0.75 * kPi : 0.25 * kPi;
    const cplx logpref = kI * k_phase - 0.5 * std::log(tau) - kI * kPi * v * v / tau;
    const cplx a = -2.0 * kPi * kI * v / tau;
    const cplx da = -2.0 * kPi * kI / tau;
    const cplx inv = 1.0 / tau;
    const cplx phase = std::exp(kI * logpref.imag());
    jet.d0 = phase * t.d0;
    jet.d1 = phase * (a * t.d0 + t.d1 * inv);
    jet.d2 = phase * ((a * a + da) * t.d0 + 2.0 * a * t.d1 * inv + t.d2 * inv * inv);
    jet.log_scale = t.log_scale + logpref.real();
  } else {
    jet = direct_jet(kind, v, tau, opt);
  }
  jet.d0 *= sign;
  jet.d1 *= sign;
  jet.d2 *= sign;
  return jet;
}

Scaled theta_scaled(ThetaKind kind, cplx v, cplx tau, const SeriesOptions& opt) {
  return theta_jet(kind, v, tau, opt).scaled();
}

cplx theta(ThetaKind kind, cplx v, const ModularParam& tau) { return theta_jet(kind, v, tau.tau()).value(); }
cplx theta1_dv(cplx v, const ModularParam& tau) { return theta_jet(ThetaKind::Theta1, v, tau.tau()).dv(); }
cplx theta1_dv2(cplx v, const ModularParam& tau) { return theta_jet(ThetaKind::Theta1, v, tau.tau()).dv2(); }

double a_func(double cal_n, double t_rem, double x, double r, double guard_rel) {
  require(std::isfinite(x), "x must be finite");
  require(cal_n > 0.0 && t_rem > 0.0 && r > 0.0, "cal_n, t_rem and r must be positive");
  const double period = 2.0 * kPi * r;
  const double xr = x - period * std::round(x / period);
  if (std::abs(xr) < guard_rel * period) fail(ErrorKind::PoleProximity, "A-function evaluated at a pole");
  const ThetaJet jet = theta_jet(ThetaKind::Theta1, xr / period, cplx(0.0, a_func_im_tau(cal_n, t_rem, r)));
  return (jet.d1 / jet.d0).real() / period;
}

namespace {

bool use_dual(cplx tau) { return tau.imag() < 0.5 && std::abs(tau) < 1.0; }

}  // namespace

cplx log_dedekind_eta(cplx tau) {
  require(tau.imag() > 0.0, "Im(tau) must be positive");
  if (use_dual(tau)) return log_dedekind_eta(-1.0 / tau) - 0.5 * std::log(-kI * tau);
  return kI * kPi * tau / 12.0 + log_q0(tau);
}

cplx log_q0(cplx tau) {
  require(tau.imag() > 0.0, "Im(tau) must be positive");
  if (use_dual(tau)) return log_dedekind_eta(tau) - kI * kPi * tau / 12.0;
  const cplx q2 = std::exp(2.0 * kPi * kI * tau);
  cplx sum = 0.0;
  cplx p = q2;
  for (int n = 1; n <= 10000; ++n) {
    sum += std::log(1.0 - p);
    if (std::abs(p) < 1e-18) return sum;
    p *= q2;
  }
  fail(ErrorKind::SeriesNonConvergence, "q0 product did not converge");
}

cplx dedekind_eta(const ModularParam& tau) { return std::exp(log_dedekind_eta(tau.tau())); }

namespace {

// sum_{n>=1} n^p x^n / (1 - x^n)
cplx lambert(int p, cplx x) {
  cplx sum = 0.0, xn = x;
  double acc = 0.0;
  for (int n = 1; n <= 10000; ++n) {
    const cplx term = std::pow(static_cast<double>(n), p) * xn / (1.0 - xn);
    sum += term;
    acc += std::abs(term);
    if (std::abs(term) <= 1e-18 * std::max(acc, 1.0)) return sum;
    xn *= x;
  }
  fail(ErrorKind::SeriesNonConvergence, "Lambert series did not converge");
}

}  // namespace

cplx eisenstein_e2(cplx tau) {
  require(tau.imag() > 0.0, "Im(tau) must be positive");
  if (use_dual(tau)) return eisenstein_e2(-1.0 / tau) / (tau * tau) - 6.0 / (kPi * kI * tau);
  return 1.0 - 24.0 * lambert(1, std::exp(2.0 * kPi * kI * tau));
}

cplx eisenstein_e4(cplx tau) {
  require(tau.imag() > 0.0, "Im(tau) must be positive");
  if (use_dual(tau)) return eisenstein_e4(-1.0 / tau) / std::pow(tau, 4);
  return 1.0 + 240.0 * lambert(3, std::exp(2.0 * kPi * kI * tau));
}

cplx eisenstein_e6(cplx tau) {
  require(tau.imag() > 0.0, "Im(tau) must be positive");
  if (use_dual(tau)) return eisenstein_e6(-1.0 / tau) / std::pow(tau, 6);
  return 1.0 - 504.0 * lambert(5, std::exp(2.0 * kPi * kI * tau));
}

double eta1(double cal_n, double t_rem, double r) {
  require(t_rem > 0.0, "t_rem must be positive");
  require(cal_n > 0.0 && r > 0.0, "cal_n and r must be positive");
  const cplx tau(0.0, a_func_im_tau(cal_n, t_rem, r));
  return kPi * eisenstein_e2(tau).real() / (12.0 * r);
}

}  // namespace edyson
