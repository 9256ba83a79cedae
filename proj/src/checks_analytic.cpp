#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "elliptic_dyson/harness.hpp"
#include "elliptic_dyson/kernels.hpp"
#include "elliptic_dyson/quadrature.hpp"
#include "elliptic_dyson/rng.hpp"

namespace edyson::checks {

namespace {

constexpr FamilyTag kBCD[] = {FamilyTag::B, FamilyTag::C, FamilyTag::D};

std::string fam_n(FamilyTag tag, int n) { return std::string(to_string(tag)) + ".N" + std::to_string(n); }

Record make_lt(std::string name, std::string anchor, int criterion, double measured, double bound) {
  Record r = make_le(std::move(name), std::move(anchor), criterion, measured, bound);
  r.comparison = "lt";
  r.pass = std::isfinite(measured) && measured < bound;
  return r;
}

// ---- criterion 5 ----

std::vector<Record> kolmogorov_family(const RunConfig& cfg, FamilyTag tag) {
  CounterStream rng(cfg.seed, 5000 + static_cast<uint64_t>(tag), 0x0b0b);
  const Family fam(tag, 2);
  const double ts = cfg.t_star;
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double s = (0.1 + 0.3 * rng.uniform()) * ts;
    const double t = s + (0.05 + 0.15 * rng.uniform()) * ts;
    const auto x = random_config(fam, cfg.r, cfg.seed, 5000 + 2 * static_cast<uint64_t>(i), 0.05).values();
    const auto y = random_config(fam, cfg.r, cfg.seed, 5001 + 2 * static_cast<uint64_t>(i), 0.05).values();
    worst = std::max(worst, kolmogorov_residual(tag, s, x, t, y, ts, cfg.r, 1e-4 * cfg.r));
  }
  return {make_le(std::string("kolmogorov.") + fam_n(tag, 2), "transition.backward_kolmogorov", 5, worst,
                  cfg.tol.kolmogorov_residual)};
}

// ---- criterion 6 ----

std::vector<Record> integral_n(const RunConfig& cfg, int n) {
  const int order = n == 2 ? 128 : 64;
  const double t = 0.2 * cfg.t_star;
  double worst = 0.0;
  const Family fam(FamilyTag::D, n);
  for (const auto& u : {spread_config(n, cfg.r), random_config(fam, cfg.r, cfg.seed, 6000 + static_cast<uint64_t>(n), 0.05).values()})
    worst = std::max(worst, verify_integral_identity(n, t, cfg.t_star, cfg.r, u, order));
  return {make_le("integral_identity.D.N" + std::to_string(n), "normalization.multiple_integral", 6, worst,
                  n == 2 ? cfg.tol.integral_n2 : cfg.tol.integral_n3)};
}

// ---- criterion 8 ----

std::vector<Record> equilibrium_mass(const RunConfig& cfg) {
  std::vector<Record> out;
  const QuadratureRule q = gauss_legendre(64, 0.0, kPi * cfg.r);
  for (FamilyTag tag : {FamilyTag::C, FamilyTag::D}) {
    if (!cfg.family_selected(tag)) continue;
    for (int n : {2, 3}) {
      if (!cfg.n_selected(n)) continue;
      double m = 0.0;
      for (size_t i = 0; i < q.nodes.size(); ++i) m += q.weights[i] * equilibrium_density(tag, q.nodes[i], n, cfg.r);
      out.push_back(make_le("equilibrium.mass." + fam_n(tag, n), "equilibrium.particle_number", 8, std::abs(m - n),
                            cfg.tol.equilibrium_mass));
    }
  }
  return out;
}

std::vector<Record> relaxation_family(const RunConfig& cfg, FamilyTag tag, int n) {
  std::vector<Record> out;
  const double r = cfg.r;
  const double shifts[] = {1.0, 2.0, 4.0, 8.0};
  const double pairs[][2] = {{0.0, 0.0}, {0.2, 0.5}, {0.5, 0.2}};
  for (int c = 0; c < 3; ++c) {
    const Config u = random_config(Family(tag, n), r, cfg.seed, 8000 + 10 * static_cast<uint64_t>(n) + static_cast<uint64_t>(c));
    const TrigInterp ti(tag, u, r);
    double worst_ratio = 0.0;
    for (const auto& st : pairs) {
      const double s = st[0] * r * r, t = st[1] * r * r;
      double prev = std::numeric_limits<double>::infinity();
      for (double shift : shifts) {
        const double big_t = shift * r * r;
        double sup = 0.0;
        for (int i = 0; i < 20; ++i)
          for (int j = 0; j < 20; ++j) {
            const double x = (i + 0.5) * kPi * r / 20.0, y = (j + 0.5) * kPi * r / 20.0;
            sup = std::max(sup, std::abs(kernel_trig(ti, s + big_t, x, t + big_t, y) - kernel_eq_trig(tag, t - s, x, y, n, r)));
          }
        if (std::isfinite(prev)) worst_ratio = std::max(worst_ratio, sup / prev);
        prev = sup;
      }
    }
    out.push_back(make_lt("relaxation." + fam_n(tag, n) + ".config" + std::to_string(c + 1), "equilibrium.relaxation", 8,
                          worst_ratio, 1.0));
  }
  return out;
}

// ---- criterion 10 ----

std::vector<Record> fredholm_family(const RunConfig& cfg, FamilyTag tag, int n) {
  std::vector<Record> out;
  const double r = cfg.r;
  const Family fam(tag, n);
  const ProcessClock clock(cfg.t_star, r);
  const KernelContext ctx = KernelContext::elliptic(fam, clock, Config(fam, spread_config(n, r), r));
  const double t = 0.3 * cfg.t_star;
  const double intervals[][2] = {{0.2, 1.0}, {0.5, 2.0}, {1.0, 2.8}, {0.05, 3.0}};
  double gauge = 0.0, routes = 0.0, range = 0.0;
  int monotone_violations = 0;
  for (const auto& iv : intervals) {
    const double a = iv[0] * r, b = iv[1] * r;
    auto k = [&](double x, double y) { return ctx.kernel(t, x, t, y); };
    auto kg = [&](double x, double y) { return (y / x) * ctx.kernel(t, x, t, y); };
    const double plain = fredholm_gap_nystrom(k, a, b);
    const double gauged = fredholm_gap_nystrom(kg, a, b);
    const double rank = fredholm_gap(ctx, t, a, b);
    gauge = std::max(gauge, std::abs(plain - gauged));
    routes = std::max(routes, std::abs(plain - rank));
    for (double g : {plain, gauged, rank}) range = std::max(range, std::max(-g, g - 1.0));
    double prev = 1.0;
    for (int m = 1; m <= 6; ++m) {
      const double g = fredholm_gap(ctx, t, a, a + (b - a) * m / 6.0);
      range = std::max(range, std::max(-g, g - 1.0));
      if (g > prev + 1e-9) ++monotone_violations;
      prev = g;
    }
  }
  out.push_back(make_le("fredholm.gauge." + fam_n(tag, n), "fredholm.gauge_invariance", 10, gauge, cfg.tol.gauge_abs));
  Record rr = make_le("fredholm.range." + fam_n(tag, n), "fredholm.probability_range", 10, std::max(range, 0.0), cfg.tol.gap_slack);
  out.push_back(rr);
  out.push_back(make_le("fredholm.rank_vs_nystrom." + fam_n(tag, n), "fredholm.finite_rank_reduction", 0, routes, 1e-8));
  out.push_back(make_le("fredholm.monotone." + fam_n(tag, n), "fredholm.monotonicity", 0, monotone_violations, 0.0));
  return out;
}

std::vector<Record> fredholm_equilibrium(const RunConfig& cfg) {
  double range = 0.0;
  for (FamilyTag tag : {FamilyTag::C, FamilyTag::D})
    for (int n : {2, 3}) {
      const KernelContext ctx = KernelContext::equilibrium(tag, n, cfg.r);
      for (double b : {0.5, 1.5, 2.5, kPi}) {
        const double g = fredholm_gap(ctx, 0.0, 0.0, b * cfg.r);
        range = std::max(range, std::max(-g, g - 1.0));
      }
    }
  return {make_le("fredholm.range.equilibrium", "fredholm.probability_range", 10, std::max(range, 0.0), cfg.tol.gap_slack)};
}

}  // namespace

std::vector<Group> kolmogorov(const RunConfig& cfg) {
  std::vector<Group> g;
  if (!cfg.n_selected(2)) return g;
  for (FamilyTag tag : kBCD)
    if (cfg.family_selected(tag))
      g.push_back({std::string("kolmogorov.") + to_string(tag), 5, [cfg, tag] { return kolmogorov_family(cfg, tag); }});
  return g;
}

std::vector<Group> integral_identity(const RunConfig& cfg) {
  std::vector<Group> g;
  if (!cfg.family_selected(FamilyTag::D)) return g;
  for (int n : {2, 3})
    if (cfg.n_selected(n)) g.push_back({"integral_identity.N" + std::to_string(n), 6, [cfg, n] { return integral_n(cfg, n); }});
  return g;
}

std::vector<Group> relaxation(const RunConfig& cfg) {
  std::vector<Group> g;
  g.push_back({"equilibrium.mass", 8, [cfg] { return equilibrium_mass(cfg); }});
  for (FamilyTag tag : {FamilyTag::C, FamilyTag::D})
    for (int n : {2, 3})
      if (cfg.family_selected(tag) && cfg.n_selected(n))
        g.push_back({"relaxation." + fam_n(tag, n), 8, [cfg, tag, n] { return relaxation_family(cfg, tag, n); }});
  return g;
}

std::vector<Group> fredholm(const RunConfig& cfg) {
  std::vector<Group> g;
  for (FamilyTag tag : kBCD)
    for (int n : {2, 3})
      if (cfg.family_selected(tag) && cfg.n_selected(n))
        g.push_back({"fredholm." + fam_n(tag, n), 10, [cfg, tag, n] { return fredholm_family(cfg, tag, n); }});
  g.push_back({"fredholm.equilibrium", 10, [cfg] { return fredholm_equilibrium(cfg); }});
  return g;
}

}  // namespace edyson::checks
