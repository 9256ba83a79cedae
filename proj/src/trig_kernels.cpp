#include <cmath>
#include <vector>

#include "elliptic_dyson/kernels.hpp"

namespace edyson {

namespace {

void require_cd(FamilyTag tag) {
  require(tag == FamilyTag::C || tag == FamilyTag::D, "trigonometric kernels exist only for families C and D");
}

BoundaryCond trig_boundary(FamilyTag tag) { return tag == FamilyTag::C ? kAbsorbAbsorb : kReflectReflect; }

// Kernel times s at or above this multiple of r^2 use the spectral remainder route.
constexpr double kRemainderSwitch = 0.5;

double pair_ratio(double z, double uj, double ul, double r) {
  return std::sin((z - ul) / (2.0 * r)) * std::sin((z + ul) / (2.0 * r)) /
         (std::sin((uj - ul) / (2.0 * r)) * std::sin((uj + ul) / (2.0 * r)));
}

// 1 + 2 sum_{n=1}^{m} cos(n d / r), equal to sin((2m+1) d / 2r) / sin(d / 2r).
double dirichlet_sum(int m, double d, double r) {
  double s = 1.0;
  for (int n = 1; n <= m; ++n) s += 2.0 * std::cos(n * d / r);
  return s;
}

double dirichlet(int m, double d, double r) {
  const double den = std::sin(d / (2.0 * r));
  if (std::abs(den) < 1e-4) return dirichlet_sum(m, d, r);
  return std::sin((2.0 * m + 1.0) * d / (2.0 * r)) / den;
}

}  // namespace

TrigInterp::TrigInterp(FamilyTag tag, const Config& u, double r)
    : tag_(tag), n_(static_cast<int>(u.size())), r_(r), u_(u.values()) {
  require_cd(tag);
  require(r > 0.0, "r must be positive");
  Eigen::MatrixXd f(n_, n_);
  for (int j = 1; j <= n_; ++j)
    for (int k = 1; k <= n_; ++k) f(j - 1, k - 1) = basis(j, u_[static_cast<size_t>(k - 1)]);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(f);
  require(std::abs(lu.determinant()) > 0.0, "trigonometric basis matrix is singular");
  coeffs_ = lu.inverse();
}

double TrigInterp::basis(int k, double z) const {
  return tag_ == FamilyTag::C ? std::sin(k * z / r_) : std::cos((k - 1) * z / r_);
}

double TrigInterp::rate(int k) const {
  const double m = tag_ == FamilyTag::C ? k : k - 1;
  return m * m / (2.0 * r_ * r_);
}

double TrigInterp::phi(int j, double z) const {
  require(j >= 1 && j <= n_, "interpolation index out of range");
  const double uj = u_[static_cast<size_t>(j - 1)];
  double out = tag_ == FamilyTag::C ? std::sin(z / r_) / std::sin(uj / r_) : 1.0;
  for (int l = 0; l < n_; ++l)
    if (l != j - 1) out *= pair_ratio(z, uj, u_[static_cast<size_t>(l)], r_);
  return out;
}

double TrigInterp::m_mart(int j, double t, double y) const {
  require(j >= 1 && j <= n_, "martingale index out of range");
  double s = 0.0;
  for (int k = 1; k <= n_; ++k) s += coeffs_(j - 1, k - 1) * std::exp(rate(k) * t) * basis(k, y);
  return s;
}

double TrigInterp::det_closed_form() const {
  const int n = n_;
  double out = ((n * (n - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  if (tag_ == FamilyTag::C) {
    out *= std::ldexp(1.0, n * (n - 1));
    for (double x : u_) out *= std::sin(x / r_);
  } else {
    out *= std::ldexp(1.0, (n - 1) * (n - 1));
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      const double uj = u_[static_cast<size_t>(j)], uk = u_[static_cast<size_t>(k)];
      out *= std::sin((uk - uj) / (2.0 * r_)) * std::sin((uk + uj) / (2.0 * r_));
    }
  return out;
}

double TrigInterp::det_direct() const {
  Eigen::MatrixXd f(n_, n_);
  for (int j = 1; j <= n_; ++j)
    for (int k = 1; k <= n_; ++k) f(j - 1, k - 1) = basis(j, u_[static_cast<size_t>(k - 1)]);
  return f.determinant();
}

double kernel_eq_trig_sum(FamilyTag tag, double dt, double x, double y, int n, double r) {
  require_cd(tag);
  require(n >= 1 && r > 0.0, "invalid equilibrium kernel parameters");
  const double inv = 1.0 / (kPi * r);
  double s = 0.0;
  if (tag == FamilyTag::C) {
    for (int l = 1; l <= n; ++l)
      s += 2.0 * inv * std::exp(l * l * dt / (2.0 * r * r)) * std::sin(l * x / r) * std::sin(l * y / r);
  } else {
    s = inv;
    for (int l = 1; l <= n - 1; ++l)
      s += 2.0 * inv * std::exp(l * l * dt / (2.0 * r * r)) * std::cos(l * x / r) * std::cos(l * y / r);
  }
  return s;
}

double kernel_eq_trig(FamilyTag tag, double dt, double x, double y, int n, double r) {
  require_cd(tag);
  if (dt > 0.0) return kernel_eq_trig_sum(tag, dt, x, y, n, r);
  if (dt == 0.0) {
    const double inv = 1.0 / (2.0 * kPi * r);
    if (tag == FamilyTag::C) return inv * (dirichlet(n, y - x, r) - dirichlet(n, y + x, r));
    return inv * (dirichlet(n - 1, y - x, r) + dirichlet(n - 1, y + x, r));
  }
  return kernel_eq_trig_sum(tag, dt, x, y, n, r) - p_interval(trig_boundary(tag), -dt, x, y, r);
}

double equilibrium_density(FamilyTag tag, double x, int n, double r) { return kernel_eq_trig(tag, 0.0, x, x, n, r); }

double kernel_trig(const TrigInterp& ti, double s, double x, double t, double y) {
  require(s >= 0.0 && t >= 0.0, "kernel times must be nonnegative");
  const int n = ti.n();
  const double r = ti.r();
  const FamilyTag tag = ti.tag();
  const BoundaryCond bc = trig_boundary(tag);
  const auto& u = ti.nodes();
  if (s < kRemainderSwitch * r * r) {
    double g = 0.0;
    for (int j = 1; j <= n; ++j) g += p_interval(bc, s, x, u[static_cast<size_t>(j - 1)], r) * ti.m_mart(j, t, y);
    if (s > t) g -= p_interval(bc, s - t, x, y, r);
    return g;
  }
  // Equilibrium part plus the decaying remainder over modes l > N.
  double rem = 0.0;
  const double weight = 2.0 / (kPi * r);
  for (int l = n + 1; l < 100000; ++l) {
    const double decay = std::exp(-ti.rate(l) * s);
    if (decay < 1e-300) break;
    double inner = 0.0;
    for (int k = 1; k <= n; ++k) {
      double b = 0.0;
      for (int j = 1; j <= n; ++j) b += ti.basis(l, u[static_cast<size_t>(j - 1)]) * ti.coeff(j, k);
      inner += std::exp(ti.rate(k) * t - ti.rate(l) * s) * ti.basis(k, y) * b;
    }
    const double term = weight * ti.basis(l, x) * inner;
    rem += term;
    if (std::exp(ti.rate(n) * t - ti.rate(l) * s) < 1e-18 * (1.0 + std::abs(rem))) break;
  }
  double g = kernel_eq_trig_sum(tag, t - s, x, y, n, r) + rem;
  if (s > t) g -= p_interval(bc, s - t, x, y, r);
  return g;
}

double kernel_trig(FamilyTag tag, const Config& u, double s, double x, double t, double y, double r) {
  return kernel_trig(TrigInterp(tag, u, r), s, x, t, y);
}

double phi_half_line(std::span<const double> u, int j, double z) {
  const int n = static_cast<int>(u.size());
  require(j >= 1 && j <= n, "interpolation index out of range");
  const double uj = u[static_cast<size_t>(j - 1)];
  double out = 1.0;
  for (int l = 0; l < n; ++l) {
    if (l == j - 1) continue;
    const double ul = u[static_cast<size_t>(l)];
    out *= (z * z - ul * ul) / (uj * uj - ul * ul);
  }
  return out;
}

namespace {

// Monomial coefficients of z^shift * phi_half_line(u, j, z).
std::vector<double> half_line_poly(std::span<const double> u, int j, int shift) {
  std::vector<double> c(static_cast<size_t>(shift + 1), 0.0);
  c[static_cast<size_t>(shift)] = 1.0;
  const double uj = u[static_cast<size_t>(j - 1)];
  for (size_t l = 0; l < u.size(); ++l) {
    if (static_cast<int>(l) == j - 1) continue;
    const double ul2 = u[l] * u[l];
    const double den = uj * uj - ul2;
    std::vector<double> next(c.size() + 2, 0.0);
    for (size_t m = 0; m < c.size(); ++m) {
      next[m + 2] += c[m] / den;
      next[m] -= ul2 * c[m] / den;
    }
    c = std::move(next);
  }
  return c;
}

// E[P(y + i sqrt(t) xi)] for a real polynomial P with standard normal xi.
double gaussian_average(const std::vector<double>& c, double t, double y) {
  double e_prev = 1.0, e_cur = y;
  double s = c[0];
  if (c.size() > 1) s += c[1] * y;
  for (size_t m = 2; m < c.size(); ++m) {
    const double e_next = y * e_cur - static_cast<double>(m - 1) * t * e_prev;
    s += c[m] * e_next;
    e_prev = e_cur;
    e_cur = e_next;
  }
  return s;
}

void check_half_line(std::span<const double> u, double s, double x, double t, double y) {
  require(!u.empty(), "empty configuration");
  for (size_t i = 0; i < u.size(); ++i) {
    require(u[i] > 0.0, "half-line configuration must be positive");
    if (i > 0) require(u[i] > u[i - 1], "half-line configuration must be strictly increasing");
  }
  require(s >= 0.0 && t >= 0.0, "kernel times must be nonnegative");
  require(x >= 0.0 && y >= 0.0, "half-line kernel arguments must be nonnegative");
}

}  // namespace

double kernel_bes(BesKind kind, std::span<const double> u, double s, double x, double t, double y) {
  check_half_line(u, s, x, t, y);
  const int n = static_cast<int>(u.size());
  double g = 0.0;
  if (kind == BesKind::BES3) {
    require(y > 0.0, "BES(3) gauge factor needs y > 0");
    for (int j = 1; j <= n; ++j) {
      const double uj = u[static_cast<size_t>(j - 1)];
      const double p = (x / uj) * p_half_line(Wall::Absorb, s, x, uj);
      g += p * gaussian_average(half_line_poly(u, j, 1), t, y) / y;
    }
    if (s > t) g -= (x / y) * p_half_line(Wall::Absorb, s - t, x, y);
    return g;
  }
  for (int j = 1; j <= n; ++j)
    g += p_half_line(Wall::Reflect, s, x, u[static_cast<size_t>(j - 1)]) * gaussian_average(half_line_poly(u, j, 0), t, y);
  if (s > t) g -= p_half_line(Wall::Reflect, s - t, x, y);
  return g;
}

double kernel_rational(FamilyTag tag, std::span<const double> u, double s, double x, double t, double y) {
  require_cd(tag);
  if (tag == FamilyTag::D) return kernel_bes(BesKind::BES1, u, s, x, t, y);
  check_half_line(u, s, x, t, y);
  double g = 0.0;
  for (int j = 1; j <= static_cast<int>(u.size()); ++j) {
    const double uj = u[static_cast<size_t>(j - 1)];
    g += p_half_line(Wall::Absorb, s, x, uj) * gaussian_average(half_line_poly(u, j, 1), t, y) / uj;
  }
  if (s > t) g -= p_half_line(Wall::Absorb, s - t, x, y);
  return g;
}

}  // namespace edyson
