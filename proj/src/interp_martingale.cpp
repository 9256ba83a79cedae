#include "elliptic_dyson/interp_martingale.hpp"

#include <cmath>

namespace edyson {

namespace {

constexpr double kOverflowExponent = 700.0;

std::vector<cplx> with_replaced(const Config& u, int j, cplx z) {
  std::vector<cplx> v = to_complex(u.values());
  v[static_cast<size_t>(j - 1)] = z;
  return v;
}

}  // namespace

Scaled phi_interp_scaled(const Family& fam, const Config& u, int j, cplx z, cplx tau0, double r) {
  require(j >= 1 && j <= fam.n(), "interpolation index out of range");
  const KFactors k(fam, tau0, r);
  const auto uc = to_complex(u.values());
  const cplx uj = uc[static_cast<size_t>(j - 1)];
  Scaled out = k.k_sym(with_replaced(u, j, z)) / k.k_sym(uc);
  out *= k.k1(z) / k.k1(uj);
  for (size_t l = 0; l < uc.size(); ++l) {
    if (static_cast<int>(l) == j - 1) continue;
    out *= k.k2(z, uc[l]) / k.k2(uj, uc[l]);
  }
  return out;
}

cplx phi_interp(const Family& fam, const Config& u, int j, cplx z, const ModularParam& tau0, double r) {
  return phi_interp_scaled(fam, u, j, z, tau0.tau(), r).value();
}

InterpCoeffs::InterpCoeffs(const Family& fam, const Config& u, cplx tau0, double r, double max_condition)
    : fam_(fam), u_(u), tau0_(tau0), r_(r) {
  const auto uc = to_complex(u.values());
  const RowNormalized rn = row_normalize(basis_matrix(fam, uc, tau0, r));
  condition_ = condition_estimate(rn.matrix);
  if (!(condition_ <= max_condition))
    fail(ErrorKind::NumericalConditioning, "basis matrix condition estimate exceeds limit");
  inv_ = rn.matrix.partialPivLu().inverse();
  scale_ = rn.row_log_scale;
}

cplx InterpCoeffs::phi(int j, int k) const {
  require(j >= 1 && j <= fam_.n() && k >= 1 && k <= fam_.n(), "coefficient index out of range");
  return inv_(j - 1, k - 1) * std::exp(-scale_[static_cast<size_t>(k - 1)]);
}

cplx InterpCoeffs::expand(int j, cplx z) const {
  require(j >= 1 && j <= fam_.n(), "interpolation index out of range");
  cplx s = 0.0;
  for (int k = 1; k <= fam_.n(); ++k) {
    const Scaled f = basis_f_scaled(fam_, k, z, tau0_, r_);
    s += inv_(j - 1, k - 1) * f.value_shifted(scale_[static_cast<size_t>(k - 1)]);
  }
  return s;
}

InterpCoeffs phi_coeffs(const Family& fam, const Config& u, const ModularParam& tau0, double r) {
  return InterpCoeffs(fam, u, tau0.tau(), r);
}

Scaled f_hat_scaled(const Family& fam, int j, double t, cplx x, const ProcessClock& clock) {
  const double jj = fam.j_value(j);
  const double r = clock.r();
  Scaled f = basis_f_scaled(fam, j, x, clock.tau_at(fam.cal_n(), t), r);
  f.log_scale += jj * jj * t / (2.0 * r * r);
  return f;
}

cplx f_hat(const Family& fam, int j, double t, cplx x, const ProcessClock& clock) {
  return f_hat_scaled(fam, j, t, x, clock).value();
}

cplx log_c0(const Family& fam, cplx tau) {
  const double n = fam.n();
  const cplx le = log_dedekind_eta(tau);
  switch (fam.tag()) {
    case FamilyTag::A: return -(n - 1) * (n - 2) / 2.0 * le;
    case FamilyTag::B:
    case FamilyTag::C: return -n * (n - 1) * le;
    case FamilyTag::Bvee: return -(n - 1) * (n - 1) * le - (n - 1) * log_dedekind_eta(2.0 * tau);
    case FamilyTag::Cvee: return -(n - 1) * (n - 1) * le - (n - 1) * log_dedekind_eta(0.5 * tau);
    case FamilyTag::BC: return -n * (n - 1) * le - n * log_dedekind_eta(2.0 * tau);
    case FamilyTag::D: return -n * (n - 2) * le;
  }
  return 0.0;
}

MartingaleCtx::MartingaleCtx(const Family& fam, const ProcessClock& clock, const Config& u)
    : fam_(fam),
      clock_(clock),
      u_(u),
      tau0_(clock.tau_at(fam.cal_n(), 0.0)),
      coeffs_(fam, u, tau0_, clock.r()) {
  const KFactors k(fam_, tau0_, clock_.r());
  const auto uc = to_complex(u_.values());
  log_c0_0_ = log_c0(fam_, tau0_);
  ksym0_ = k.k_sym(uc);
  k1_0_ = Scaled::one();
  for (const cplx& x : uc) k1_0_ *= k.k1(x);
  k2_0_ = Scaled::one();
  for (size_t j = 0; j < uc.size(); ++j)
    for (size_t l = j + 1; l < uc.size(); ++l) k2_0_ *= k.k2(uc[l], uc[j]);
  det0_ = macdonald_det_scaled(fam_, uc, tau0_, clock_.r());
}

void MartingaleCtx::check_time(double t) const {
  require(t >= 0.0 && t < clock_.t_star(), "time outside [0, t_star)");
  const double jmax = fam_.j_value(fam_.n());
  const double r = clock_.r();
  if (jmax * jmax * t / (2.0 * r * r) > kOverflowExponent)
    fail(ErrorKind::OverflowWindow, "growth exponent J^2 t / 2r^2 exceeds the overflow window");
}

std::vector<cplx> MartingaleCtx::m_mart_all(double t, cplx y) const {
  check_time(t);
  const int n = fam_.n();
  std::vector<Scaled> fh(static_cast<size_t>(n));
  for (int k = 1; k <= n; ++k) fh[static_cast<size_t>(k - 1)] = f_hat_scaled(fam_, k, t, y, clock_);
  std::vector<cplx> out(static_cast<size_t>(n), cplx(0.0));
  const auto& inv = coeffs_.normalized();
  const auto& sc = coeffs_.row_log_scale();
  for (int k = 0; k < n; ++k) {
    const cplx v = fh[static_cast<size_t>(k)].value_shifted(sc[static_cast<size_t>(k)]);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      fail(ErrorKind::OverflowWindow, "martingale function overflowed");
    for (int j = 0; j < n; ++j) out[static_cast<size_t>(j)] += inv(j, k) * v;
  }
  return out;
}

cplx MartingaleCtx::m_mart(int j, double t, cplx y) const {
  require(j >= 1 && j <= fam_.n(), "martingale index out of range");
  return m_mart_all(t, y)[static_cast<size_t>(j - 1)];
}

Scaled MartingaleCtx::d_mart_scaled(double t, std::span<const cplx> x) const {
  check_time(t);
  require(static_cast<int>(x.size()) == fam_.n(), "point count must equal N");
  const cplx tau = tau_at(t);
  const KFactors k(fam_, tau, clock_.r());
  Scaled out = Scaled::exp_of(log_c0(fam_, tau) - log_c0_0_);
  out *= k.k_sym(x) / ksym0_;
  Scaled num = Scaled::one();
  for (const cplx& z : x) num *= k.k1(z);
  for (size_t j = 0; j < x.size(); ++j)
    for (size_t l = j + 1; l < x.size(); ++l) num *= k.k2(x[l], x[j]);
  out *= num / (k1_0_ * k2_0_);
  return out;
}

double MartingaleCtx::d_mart(double t, std::span<const double> x) const {
  const auto xc = to_complex(x);
  return d_mart_scaled(t, xc).value().real();
}

double MartingaleCtx::d_mart_det(double t, std::span<const double> x) const {
  const int n = fam_.n();
  require(static_cast<int>(x.size()) == n, "point count must equal N");
  Eigen::MatrixXcd m(n, n);
  for (int k = 0; k < n; ++k) {
    const auto col = m_mart_all(t, x[static_cast<size_t>(k)]);
    for (int j = 0; j < n; ++j) m(j, k) = col[static_cast<size_t>(j)];
  }
  return m.determinant().real();
}

double MartingaleCtx::d_mart_ratio(double t, std::span<const double> x) const {
  check_time(t);
  const auto xc = to_complex(x);
  Scaled d = macdonald_det_scaled(fam_, xc, tau_at(t), clock_.r()) / det0_;
  const double r = clock_.r();
  d.log_scale += t * fam_.sum_j_squared() / (2.0 * r * r);
  return d.value().real();
}

}  // namespace edyson
