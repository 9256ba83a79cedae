#include <cmath>
#include <limits>

#include "elliptic_dyson/kernels.hpp"

namespace edyson {

BoundaryCond default_boundary(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::B:
    case FamilyTag::Cvee:
    case FamilyTag::BC: return kAbsorbReflect;
    case FamilyTag::C:
    case FamilyTag::Bvee: return kAbsorbAbsorb;
    case FamilyTag::D: return kReflectReflect;
    case FamilyTag::A: break;
  }
  fail(ErrorKind::InvalidArgument, "type A has no interval boundary");
}

namespace {

double gauss(double d, double t) { return std::exp(-d * d / (2.0 * t)) / std::sqrt(2.0 * kPi * t); }

void check_args(double t, double y, double x, double r) {
  require(t >= 0.0, "transition time must be nonnegative");
  require(r > 0.0, "r must be positive");
  const double slack = 1e-12 * kPi * r;
  require(x >= -slack && x <= kPi * r + slack && y >= -slack && y <= kPi * r + slack,
          "transition density arguments must lie in [0, pi r]");
}

}  // namespace

double p_interval_images(BoundaryCond bc, double t, double y, double x, double r) {
  check_args(t, y, x, r);
  require(t > 0.0, "image sum needs t > 0");
  const double period = 2.0 * kPi * r;
  // Gaussian tail exp(-d^2/2t) < 1e-16 beyond |d| > sqrt(2 t * 37)
  const long kmax = static_cast<long>(std::ceil(std::sqrt(74.0 * t) / period)) + 2;
  // Image signs: odd reflections at an absorbing wall flip sign.
  const double mirror = (bc.at_zero == Wall::Absorb) ? -1.0 : 1.0;
  const bool antiperiodic = bc.at_zero != bc.at_pi_r;
  double sum = 0.0;
  for (long k = -kmax; k <= kmax; ++k) {
    const double sign = (antiperiodic && (k % 2 != 0)) ? -1.0 : 1.0;
    const double shift = period * static_cast<double>(k);
    sum += sign * (gauss(y - x + shift, t) + mirror * gauss(y + x + shift, t));
  }
  return sum;
}

double p_interval_spectral(BoundaryCond bc, double t, double y, double x, double r) {
  check_args(t, y, x, r);
  require(t > 0.0, "spectral sum needs t > 0");
  const double inv = 1.0 / (kPi * r);
  const double mixed = bc.at_zero != bc.at_pi_r;
  double sum = 0.0;
  if (!mixed) {
    const bool absorb = bc.at_zero == Wall::Absorb;
    if (!absorb) sum = inv;
    for (int n = 1; n < 100000; ++n) {
      const double e = std::exp(-static_cast<double>(n) * n * t / (2.0 * r * r));
      const double term = absorb ? std::sin(n * y / r) * std::sin(n * x / r) : std::cos(n * y / r) * std::cos(n * x / r);
      sum += 2.0 * inv * e * term;
      if (e < 1e-18) break;
    }
    return sum;
  }
  const bool absorb_zero = bc.at_zero == Wall::Absorb;
  for (int n = 1; n < 100000; ++n) {
    const double k = n - 0.5;
    const double e = std::exp(-k * k * t / (2.0 * r * r));
    const double term = absorb_zero ? std::sin(k * y / r) * std::sin(k * x / r) : std::cos(k * y / r) * std::cos(k * x / r);
    sum += 2.0 * inv * e * term;
    if (e < 1e-18) break;
  }
  return sum;
}

double p_interval(BoundaryCond bc, double t, double y, double x, double r) {
  check_args(t, y, x, r);
  if (t == 0.0) return (x == y) ? std::numeric_limits<double>::infinity() : 0.0;
  return (t < r * r) ? p_interval_images(bc, t, y, x, r) : p_interval_spectral(bc, t, y, x, r);
}

double p_half_line(Wall wall, double t, double y, double x) {
  require(t >= 0.0, "transition time must be nonnegative");
  if (t == 0.0) return (x == y) ? std::numeric_limits<double>::infinity() : 0.0;
  const double mirror = (wall == Wall::Absorb) ? -1.0 : 1.0;
  return gauss(y - x, t) + mirror * gauss(y + x, t);
}

double p_bessel(double dim, double t, double y, double x) {
  require(dim >= 1.0, "Bessel dimension must be at least 1");
  require(t > 0.0 && x > 0.0 && y > 0.0, "Bessel density needs t > 0, x > 0, y >= 0");
  const double nu = (dim - 2.0) / 2.0;
  const double z = x * y / t;
  if (z > 600.0) {
    // leading large-argument form, I_nu(z) ~ e^z / sqrt(2 pi z)
    return std::pow(y / x, nu) * (y / t) * std::exp(-(x - y) * (x - y) / (2.0 * t)) / std::sqrt(2.0 * kPi * z);
  }
  double bessel = 0.0;
  if (nu >= 0.0) {
    bessel = std::cyl_bessel_i(nu, z);
  } else {
    // reflection formula for negative order
    bessel = std::cyl_bessel_i(-nu, z) + (2.0 / kPi) * std::sin(-nu * kPi) * std::cyl_bessel_k(-nu, z);
  }
  return std::pow(y / x, nu) * (y / t) * std::exp(-(x * x + y * y) / (2.0 * t)) * bessel;
}

}  // namespace edyson
