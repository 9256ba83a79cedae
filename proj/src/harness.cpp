#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "elliptic_dyson/harness.hpp"
#include "elliptic_dyson/interp_martingale.hpp"
#include "elliptic_dyson/kernels.hpp"
#include "elliptic_dyson/quadrature.hpp"
#include "elliptic_dyson/sde.hpp"

namespace edyson {

namespace checks {

Record make_le(std::string name, std::string anchor, int criterion, double measured, double tolerance, double expected) {
  Record r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.criterion = criterion;
  r.measured = measured;
  r.expected = expected;
  r.tolerance = tolerance;
  r.comparison = "le";
  r.pass = std::isfinite(measured) && measured <= tolerance;
  return r;
}

Record make_ge(std::string name, std::string anchor, int criterion, double measured, double bound) {
  Record r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.criterion = criterion;
  r.measured = measured;
  r.expected = bound;
  r.tolerance = bound;
  r.comparison = "ge";
  r.pass = std::isfinite(measured) && measured >= bound;
  return r;
}

std::vector<double> spread_config(int n, double r) {
  std::vector<double> u(static_cast<size_t>(n));
  for (int j = 1; j <= n; ++j) u[static_cast<size_t>(j - 1)] = (j - 0.5) * kPi * r / n;
  return u;
}

void parallel_for(int threads, size_t count, const std::function<void(size_t)>& f) {
  const size_t workers = std::min(static_cast<size_t>(std::max(1, resolve_threads(threads))), std::max<size_t>(count, 1));
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr err;
  std::atomic<bool> failed{false};
  auto body = [&] {
    for (size_t i = next++; i < count && !failed; i = next++) {
      try {
        f(i);
      } catch (...) {
        if (!failed.exchange(true)) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (size_t w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace checks

namespace {

Model elliptic_model(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::B: return Model::EllipticB;
    case FamilyTag::C: return Model::EllipticC;
    case FamilyTag::D: return Model::EllipticD;
    default: break;
  }
  fail(ErrorKind::InvalidArgument, "transition densities are available for families B, C and D");
}

double karlin_mcgregor(BoundaryCond bc, double dt, const std::vector<double>& x, const std::vector<double>& y, double r) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd m(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m(a, b) = p_interval(bc, dt, y[static_cast<size_t>(a)], x[static_cast<size_t>(b)], r);
  return m.determinant();
}

}  // namespace

double transition_density(FamilyTag tag, double s, const std::vector<double>& x, double t, const std::vector<double>& y,
                          double t_star, double r) {
  elliptic_model(tag);
  require(x.size() == y.size() && x.size() >= 2, "configurations must have equal length N >= 2");
  require(0.0 <= s && s < t && t < t_star, "need 0 <= s < t < t_star");
  const Family fam(tag, static_cast<int>(x.size()));
  const ProcessClock clock(t_star, r);
  const MartingaleCtx ctx(fam, clock, Config(fam, checks::spread_config(fam.n(), r), r));
  const double ratio = ctx.d_mart(t, y) / ctx.d_mart(s, x);
  return ratio * karlin_mcgregor(default_boundary(tag), t - s, x, y, r);
}

double kolmogorov_residual(FamilyTag tag, double s, const std::vector<double>& x, double t, const std::vector<double>& y,
                           double t_star, double r, double h) {
  const Model model = elliptic_model(tag);
  require(x.size() == 2 && y.size() == 2, "the Kolmogorov residual is defined for N = 2");
  require(h >= 1e-6 * r && h <= 1e-2 * r, "step h must lie in [1e-6, 1e-2] in units of r");
  require(s - h >= 0.0 && s + 10.0 * h < t, "s must stay 10 h away from 0 and t");
  const double gap = 10.0 * h;
  require(x[0] > gap && x[1] - x[0] > gap && kPi * r - x[1] > gap, "x must stay 10 h away from walls and diagonals");
  auto p = [&](double ss, const std::vector<double>& xx) { return transition_density(tag, ss, xx, t, y, t_star, r); };
  const double p0 = p(s, x);
  const double ds = (p(s + h, x) - p(s - h, x)) / (2.0 * h);
  double lap = 0.0, adv = 0.0;
  const std::vector<double> b = drift(ModelParams{model, 2.0, r, t_star}, s, x);
  for (size_t j = 0; j < 2; ++j) {
    std::vector<double> xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    const double pp = p(s, xp), pm = p(s, xm);
    lap += (pp - 2.0 * p0 + pm) / (h * h);
    adv += b[j] * (pp - pm) / (2.0 * h);
  }
  const double scale = std::max({std::abs(ds), std::abs(0.5 * lap), std::abs(adv)});
  require(scale > 0.0, "degenerate transition density at the probe point");
  return std::abs(-ds - 0.5 * lap - adv) / scale;
}

double verify_integral_identity(int n, double t, double t_star, double r, const std::vector<double>& u, int quad_order) {
  require(n >= 2 && static_cast<int>(u.size()) == n, "configuration must have length N >= 2");
  require(n <= 4, "tensor quadrature is limited to N <= 4");
  require(t > 0.0 && t < t_star, "need 0 < t < t_star");
  require(quad_order >= 4, "quadrature order must be at least 4");
  Config(Family(FamilyTag::D, n), u, r);
  const double len = 2.0 * kPi * r;
  const double cal = 2.0 * (n - 1);
  const cplx tau_t(0.0, cal * (t_star - t) / (len * r));
  const cplx tau_0(0.0, cal * t_star / (len * r));
  const cplx tau_heat(0.0, t / (len * r));
  const QuadratureRule q = gauss_legendre(quad_order, 0.0, kPi * r);
  const size_t m = q.nodes.size();

  // One-particle reflecting densities written with theta_3.
  std::vector<std::vector<double>> dens(static_cast<size_t>(n), std::vector<double>(m));
  for (int l = 0; l < n; ++l)
    for (size_t a = 0; a < m; ++a) {
      const double x = q.nodes[a], ul = u[static_cast<size_t>(l)];
      const cplx v = theta_scaled(ThetaKind::Theta3, (x - ul) / len, tau_heat).value() +
                     theta_scaled(ThetaKind::Theta3, (x + ul) / len, tau_heat).value();
      dens[static_cast<size_t>(l)][a] = q.weights[a] * v.real() / len;
    }

  // theta_1 tables relative to a common log scale.
  const double ref = theta_scaled(ThetaKind::Theta1, 0.25, tau_t).log_abs();
  std::vector<double> minus(m * m), plus(m * m);
  for (size_t a = 0; a < m; ++a)
    for (size_t b = 0; b < m; ++b) {
      minus[a * m + b] = theta_scaled(ThetaKind::Theta1, (q.nodes[b] - q.nodes[a]) / len, tau_t).value_shifted(ref).real();
      plus[a * m + b] = theta_scaled(ThetaKind::Theta1, (q.nodes[b] + q.nodes[a]) / len, tau_t).value_shifted(ref).real();
    }
  double log_const = 0.0;
  double sign = 1.0;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      const double uj = u[static_cast<size_t>(j)], uk = u[static_cast<size_t>(k)];
      const Scaled dm = theta_scaled(ThetaKind::Theta1, (uk - uj) / len, tau_0);
      const Scaled dp = theta_scaled(ThetaKind::Theta1, (uk + uj) / len, tau_0);
      log_const += 2.0 * ref - dm.log_abs() - dp.log_abs();
      sign *= (dm.mant.real() < 0.0 ? -1.0 : 1.0) * (dp.mant.real() < 0.0 ? -1.0 : 1.0);
    }

  double lhs = 0.0;
  std::vector<size_t> idx(static_cast<size_t>(n), 0);
  const size_t total = static_cast<size_t>(std::pow(static_cast<double>(m), n));
  for (size_t flat = 0; flat < total; ++flat) {
    size_t rem = flat;
    for (int l = n - 1; l >= 0; --l) {
      idx[static_cast<size_t>(l)] = rem % m;
      rem /= m;
    }
    double w = 1.0;
    for (int l = 0; l < n; ++l) w *= dens[static_cast<size_t>(l)][idx[static_cast<size_t>(l)]];
    for (int j = 0; j < n && w != 0.0; ++j)
      for (int k = j + 1; k < n; ++k) {
        const size_t a = idx[static_cast<size_t>(j)], b = idx[static_cast<size_t>(k)];
        w *= minus[a * m + b] * plus[a * m + b];
      }
    lhs += w;
  }
  lhs *= sign * std::exp(log_const);
  const double expo = static_cast<double>(n * (n - 2));
  const double rhs = std::exp(expo * (log_dedekind_eta(tau_t) - log_dedekind_eta(tau_0)).real());
  return std::abs(lhs - rhs) / std::abs(rhs);
}

Report run_suite(const RunConfig& cfg) {
  cfg.validate();
  std::vector<checks::Group> groups;
  auto add = [&](std::vector<checks::Group> g) {
    for (auto& x : g) groups.push_back(std::move(x));
  };
  const Suite s = cfg.suite;
  const bool all = s == Suite::All;
  if (all || s == Suite::Identities) add(checks::identities(cfg));
  if (all || s == Suite::MartingaleMc) add(checks::martingale_mc(cfg));
  if (all || s == Suite::Kolmogorov) add(checks::kolmogorov(cfg));
  if (all || s == Suite::IntegralIdentity) add(checks::integral_identity(cfg));
  if (all || s == Suite::KernelVsMc) add(checks::kernel_vs_mc(cfg));
  if (all || s == Suite::Relaxation) add(checks::relaxation(cfg));
  if (all || s == Suite::Pinning) add(checks::pinning(cfg));
  if (all || s == Suite::Fredholm) add(checks::fredholm(cfg));

  std::vector<std::vector<Record>> slots(groups.size());
  checks::parallel_for(cfg.threads, groups.size(), [&](size_t i) {
    try {
      slots[i] = groups[i].run();
    } catch (const std::exception& e) {
      Record r;
      r.name = groups[i].name;
      r.anchor = "plumbing";
      r.criterion = groups[i].criterion;
      r.measured = std::nan("");
      r.comparison = "error";
      r.pass = false;
      r.note = e.what();
      slots[i] = {r};
    }
  });
  Report rep;
  rep.config = cfg;
  for (auto& sl : slots)
    for (auto& r : sl) rep.records.push_back(std::move(r));
  return rep;
}

}  // namespace edyson
