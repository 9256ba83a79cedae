#include <cmath>

#include "elliptic_dyson/kernels.hpp"
#include "elliptic_dyson/quadrature.hpp"

namespace edyson {

namespace {

constexpr double kGapTol = 1e-8;
constexpr int kMaxQuadOrder = 2048;

void require_cd(FamilyTag tag) {
  require(tag == FamilyTag::C || tag == FamilyTag::D, "trigonometric kernels exist only for families C and D");
}

}  // namespace

KernelContext KernelContext::elliptic(const Family& fam, const ProcessClock& clock, const Config& u,
                                      std::optional<BoundaryCond> bc) {
  require(fam.tag() != FamilyTag::A, "interval kernels are defined for the six non-A families");
  KernelContext ctx;
  ctx.mode_ = KernelMode::Elliptic;
  ctx.tag_ = fam.tag();
  ctx.n_ = fam.n();
  ctx.r_ = clock.r();
  ctx.bc_ = bc.value_or(default_boundary(fam.tag()));
  ctx.u_ = u.values();
  ctx.mart_ = std::make_shared<const MartingaleCtx>(fam, clock, u);
  return ctx;
}

KernelContext KernelContext::trigonometric(FamilyTag tag, const Config& u, double r) {
  require_cd(tag);
  KernelContext ctx;
  ctx.mode_ = KernelMode::Trigonometric;
  ctx.tag_ = tag;
  ctx.n_ = static_cast<int>(u.size());
  ctx.r_ = r;
  ctx.bc_ = tag == FamilyTag::C ? kAbsorbAbsorb : kReflectReflect;
  ctx.u_ = u.values();
  ctx.trig_ = std::make_shared<const TrigInterp>(tag, u, r);
  return ctx;
}

KernelContext KernelContext::equilibrium(FamilyTag tag, int n, double r) {
  require_cd(tag);
  require(n >= 1 && r > 0.0, "invalid equilibrium parameters");
  KernelContext ctx;
  ctx.mode_ = KernelMode::EquilibriumTrig;
  ctx.tag_ = tag;
  ctx.n_ = n;
  ctx.r_ = r;
  ctx.bc_ = tag == FamilyTag::C ? kAbsorbAbsorb : kReflectReflect;
  return ctx;
}

double KernelContext::kernel(double s, double x, double t, double y) const {
  switch (mode_) {
    case KernelMode::EquilibriumTrig: return kernel_eq_trig(tag_, t - s, x, y, n_, r_);
    case KernelMode::Trigonometric: return kernel_trig(*trig_, s, x, t, y);
    case KernelMode::Elliptic: break;
  }
  const double t_star = mart_->clock().t_star();
  require(s >= 0.0 && s < t_star && t >= 0.0 && t < t_star, "kernel times must lie in [0, t_star)");
  const auto m = mart_->m_mart_all(t, y);
  double g = 0.0;
  for (int j = 0; j < n_; ++j) {
    const double p = p_interval(bc_, s, x, u_[static_cast<size_t>(j)], r_);
    if (p != 0.0) g += p * m[static_cast<size_t>(j)].real();
  }
  if (s > t) g -= p_interval(bc_, s - t, x, y, r_);
  return g;
}

void KernelContext::left(double t, double x, std::span<double> out) const {
  require(static_cast<int>(out.size()) == n_, "output span must have length N");
  if (mode_ == KernelMode::EquilibriumTrig) {
    const double w = 2.0 / (kPi * r_);
    for (int l = 1; l <= n_; ++l) {
      if (tag_ == FamilyTag::C) out[static_cast<size_t>(l - 1)] = w * std::sin(l * x / r_);
      else out[static_cast<size_t>(l - 1)] = (l == 1) ? 0.5 * w : w * std::cos((l - 1) * x / r_);
    }
    return;
  }
  for (int j = 0; j < n_; ++j) out[static_cast<size_t>(j)] = p_interval(bc_, t, x, u_[static_cast<size_t>(j)], r_);
}

void KernelContext::right(double t, double y, std::span<double> out) const {
  require(static_cast<int>(out.size()) == n_, "output span must have length N");
  switch (mode_) {
    case KernelMode::EquilibriumTrig:
      for (int l = 1; l <= n_; ++l)
        out[static_cast<size_t>(l - 1)] = tag_ == FamilyTag::C ? std::sin(l * y / r_) : std::cos((l - 1) * y / r_);
      return;
    case KernelMode::Trigonometric:
      for (int j = 1; j <= n_; ++j) out[static_cast<size_t>(j - 1)] = trig_->m_mart(j, t, y);
      return;
    case KernelMode::Elliptic: {
      const auto m = mart_->m_mart_all(t, y);
      for (int j = 0; j < n_; ++j) out[static_cast<size_t>(j)] = m[static_cast<size_t>(j)].real();
      return;
    }
  }
}

double corr_kernel(const KernelContext& ctx, double s, double x, double t, double y) { return ctx.kernel(s, x, t, y); }

double corr_function(const KernelContext& ctx, std::span<const SpaceTimePoint> points) {
  const int m = static_cast<int>(points.size());
  if (m == 0) return 1.0;
  Eigen::MatrixXd k(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const auto& a = points[static_cast<size_t>(i)];
      const auto& b = points[static_cast<size_t>(j)];
      k(i, j) = ctx.kernel(a.t, a.x, b.t, b.x);
    }
  return k.determinant();
}

namespace {

double rank_gap(const KernelContext& ctx, double t, double a, double b, int order) {
  const int n = ctx.n();
  const QuadratureRule q = gauss_legendre(order, a, b);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  std::vector<double> lv(static_cast<size_t>(n)), rv(static_cast<size_t>(n));
  for (size_t i = 0; i < q.nodes.size(); ++i) {
    ctx.left(t, q.nodes[i], lv);
    ctx.right(t, q.nodes[i], rv);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) g(j, k) += q.weights[i] * rv[static_cast<size_t>(j)] * lv[static_cast<size_t>(k)];
  }
  return (Eigen::MatrixXd::Identity(n, n) - g).determinant();
}

double nystrom_gap(const std::function<double(double, double)>& kernel, double a, double b, int order) {
  const QuadratureRule q = gauss_legendre(order, a, b);
  Eigen::MatrixXd m(order, order);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) {
      const double wi = std::sqrt(q.weights[static_cast<size_t>(i)]);
      const double wj = std::sqrt(q.weights[static_cast<size_t>(j)]);
      m(i, j) = (i == j ? 1.0 : 0.0) - wi * kernel(q.nodes[static_cast<size_t>(i)], q.nodes[static_cast<size_t>(j)]) * wj;
    }
  return m.partialPivLu().determinant();
}

template <class F>
double doubled_until_converged(F&& eval, int order) {
  require(order >= 4, "quadrature order must be at least 4");
  double prev = eval(order);
  while (order < kMaxQuadOrder) {
    order *= 2;
    const double cur = eval(order);
    if (std::abs(cur - prev) < kGapTol) return cur;
    prev = cur;
  }
  fail(ErrorKind::QuadratureNonConvergence, "gap probability did not converge under order doubling");
}

}  // namespace

double fredholm_gap(const KernelContext& ctx, double t, double a, double b, int quad_order) {
  require(quad_order >= 4, "quadrature order must be at least 4");
  require(a <= b, "interval must satisfy a <= b");
  const double slack = 1e-12 * kPi * ctx.r();
  require(a >= -slack && b <= kPi * ctx.r() + slack, "interval must lie in [0, pi r]");
  if (ctx.mode() != KernelMode::EquilibriumTrig) require(t > 0.0, "gap probability needs t > 0");
  if (a == b) return 1.0;
  return doubled_until_converged([&](int order) { return rank_gap(ctx, t, a, b, order); }, quad_order);
}

double fredholm_gap_nystrom(const std::function<double(double, double)>& kernel, double a, double b, int quad_order) {
  require(quad_order >= 4, "quadrature order must be at least 4");
  require(a <= b, "interval must satisfy a <= b");
  if (a == b) return 1.0;
  return doubled_until_converged([&](int order) { return nystrom_gap(kernel, a, b, order); }, quad_order);
}

}  // namespace edyson
