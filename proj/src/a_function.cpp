#include <cmath>

#include "elliptic_dyson/special_fn.hpp"

namespace edyson {

AFunction::AFunction(double cal_n, double t_rem, double r, double guard_rel) : r_(r) {
  require(cal_n > 0.0 && t_rem > 0.0 && r > 0.0, "cal_n, t_rem and r must be positive");
  y_ = a_func_im_tau(cal_n, t_rem, r);
  guard_ = guard_rel;
  dual_ = y_ < 1.0;
  if (!dual_) {
    // q^{2n}/(1-q^{2n}) with q^2 = exp(-2 pi y)
    const double q2 = std::exp(-2.0 * kPi * y_);
    double p = q2;
    while (p > 1e-18 && coef_.size() < 64) {
      coef_.push_back(p / (1.0 - p));
      p *= q2;
    }
  } else {
    // 1/(1 - q'^{2n}) with q'^2 = exp(-2 pi / y)
    const double q2 = std::exp(-2.0 * kPi / y_);
    double p = q2;
    for (int n = 0; n < 64; ++n) {
      coef_.push_back(1.0 / (1.0 - p));
      p *= q2;
    }
    dual_step_ = 2.0 * kPi / y_;
    dual_base_ = std::exp(-dual_step_);
  }
}

bool AFunction::try_eval(double x, double& out) const {
  const double period = 2.0 * kPi * r_;
  double v = x / period;
  v -= std::round(v);
  if (!(std::abs(v) >= guard_) || !std::isfinite(v)) return false;
  if (!dual_) {
    const double th = kPi * v;
    const double s = std::sin(th), c = std::cos(th);
    double sum = c / s;
    // sin(2 n th) by the Chebyshev recurrence
    const double c2 = c * c - s * s;
    double prev = 0.0, cur = 2.0 * s * c;
    for (double k : coef_) {
      sum += 4.0 * k * cur;
      const double next = 2.0 * c2 * cur - prev;
      prev = cur;
      cur = next;
    }
    out = sum / (2.0 * r_);
    return true;
  }
  // w = exp(-s|v|) gives coth(pi v / y) and both geometric ratios exp(-s(1 -+ v)).
  const double av = std::abs(v);
  const double em = std::expm1(-dual_step_ * av);
  const double w = std::exp(-dual_step_ * av);
  const double coth = (2.0 + em) / -em;
  double sum = -2.0 * kPi * v / y_ + (kPi / y_) * std::copysign(coth, v);
  if (dual_step_ > 80.0) {
    out = sum / period;
    return true;
  }
  const double c = dual_base_;
  const double a = (v > 0.0) ? c / w : c * w;
  const double b = (v > 0.0) ? c * w : c / w;
  double an = a, bn = b;
  double tail = 0.0;
  for (double k : coef_) {
    tail += k * (an - bn);
    if (an < 1e-18 && bn < 1e-18) break;
    an *= a;
    bn *= b;
  }
  sum -= (2.0 * kPi / y_) * tail;
  out = sum / period;
  return true;
}

double AFunction::operator()(double x) const {
  double out;
  if (!try_eval(x, out)) fail(ErrorKind::PoleProximity, "A-function evaluated at a pole");
  return out;
}

}  // namespace edyson
