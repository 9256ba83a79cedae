#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace edyson {

using cplx = std::complex<double>;

/// Complex number stored as mantissa * exp(log_scale) with |mantissa| == 1 (or 0).
/// Lets theta products and ratios span far beyond the double exponent range.
struct Scaled {
  cplx mant{0.0, 0.0};
  double log_scale = 0.0;

  Scaled() = default;
  Scaled(cplx m, double ls) : mant(m), log_scale(ls) { normalize(); }

  static Scaled from(cplx z) { return Scaled(z, 0.0); }
  static Scaled one() { return Scaled(cplx(1.0, 0.0), 0.0); }
  /// exp(w) without overflow.
  static Scaled exp_of(cplx w) {
    Scaled s;
    s.mant = cplx(std::cos(w.imag()), std::sin(w.imag()));
    s.log_scale = w.real();
    return s;
  }

  Scaled& normalize() {
    double a = std::abs(mant);
    if (a == 0.0 || !std::isfinite(a)) {
      if (a == 0.0) log_scale = 0.0;
      return *this;
    }
    log_scale += std::log(a);
    mant /= a;
    return *this;
  }

  bool is_zero() const { return mant == cplx(0.0, 0.0); }
  double log_abs() const {
    return is_zero() ? -std::numeric_limits<double>::infinity() : log_scale + std::log(std::abs(mant));
  }
  /// Plain value; may overflow to inf or underflow to 0.
  cplx value() const { return is_zero() ? cplx(0.0, 0.0) : mant * std::exp(log_scale); }
  /// Value multiplied by exp(-shift).
  cplx value_shifted(double shift) const {
    return is_zero() ? cplx(0.0, 0.0) : mant * std::exp(log_scale - shift);
  }

  Scaled operator-() const {
    Scaled s = *this;
    s.mant = -s.mant;
    return s;
  }
  Scaled& operator*=(const Scaled& o) {
    mant *= o.mant;
    log_scale += o.log_scale;
    return normalize();
  }
  Scaled& operator*=(cplx z) {
    mant *= z;
    return normalize();
  }
  Scaled& operator/=(const Scaled& o) {
    mant /= o.mant;
    log_scale -= o.log_scale;
    return normalize();
  }
  Scaled& operator+=(const Scaled& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    double m = std::max(log_scale, o.log_scale);
    mant = mant * std::exp(log_scale - m) + o.mant * std::exp(o.log_scale - m);
    log_scale = m;
    if (mant == cplx(0.0, 0.0)) log_scale = 0.0;
    return normalize();
  }
  Scaled& operator-=(const Scaled& o) { return *this += -o; }

  friend Scaled operator*(Scaled a, const Scaled& b) { return a *= b; }
  friend Scaled operator*(Scaled a, cplx b) { return a *= b; }
  friend Scaled operator/(Scaled a, const Scaled& b) { return a /= b; }
  friend Scaled operator+(Scaled a, const Scaled& b) { return a += b; }
  friend Scaled operator-(Scaled a, const Scaled& b) { return a -= b; }

  Scaled pow(double p) const {
    // Real power of a positive-real-like number; phase handled by the principal branch.
    if (is_zero()) return *this;
    Scaled s;
    s.mant = std::pow(mant, p);
    s.log_scale = log_scale * p;
    return s.normalize();
  }
  Scaled ipow(int k) const {
    Scaled s = one();
    Scaled b = *this;
    unsigned n = static_cast<unsigned>(k < 0 ? -k : k);
    while (n) {
      if (n & 1u) s *= b;
      b *= b;
      n >>= 1u;
    }
    if (k < 0) return one() / s;
    return s;
  }
};

}  // namespace edyson
