#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "elliptic_dyson/harness.hpp"
#include "elliptic_dyson/interp_martingale.hpp"
#include "elliptic_dyson/kernels.hpp"
#include "elliptic_dyson/quadrature.hpp"
#include "elliptic_dyson/rng.hpp"
#include "elliptic_dyson/sde.hpp"

namespace edyson::checks {

namespace {

constexpr FamilyTag kBCD[] = {FamilyTag::B, FamilyTag::C, FamilyTag::D};
constexpr double kPinEps[] = {1e-1, 1e-2, 1e-3};
constexpr double kPinDt = 1e-3;
constexpr double kPinGrading = 0.1;

std::string fam_n(FamilyTag tag, int n) { return std::string(to_string(tag)) + ".N" + std::to_string(n); }

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

Model elliptic_model(FamilyTag tag) {
  return tag == FamilyTag::B ? Model::EllipticB : tag == FamilyTag::C ? Model::EllipticC : Model::EllipticD;
}

struct MeanSe {
  double mean = 0.0, se = 0.0;
};

MeanSe mean_se(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += x;
  const double m = s / n;
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / (n - 1.0) / n)};
}

// ---- criterion 4 ----

std::vector<Record> martingale_family(const RunConfig& cfg, FamilyTag tag, int n) {
  std::vector<Record> out;
  const Family fam(tag, n);
  const ProcessClock clock(cfg.t_star, cfg.r);
  const MartingaleCtx ctx(fam, clock, Config(fam, spread_config(n, cfg.r), cfg.r));
  const auto& u = ctx.config().values();
  for (double frac : {0.1, 0.3}) {
    const double t = frac * cfg.t_star;
    const uint32_t tag_id = 0x4000u + 16u * static_cast<uint32_t>(tag) + static_cast<uint32_t>(n) + (frac < 0.2 ? 0u : 8u);
    std::vector<double> d(static_cast<size_t>(cfg.mc_paths));
    parallel_for(cfg.threads, d.size(), [&](size_t i) {
      CounterStream rng(cfg.seed, i, tag_id);
      std::vector<double> x(static_cast<size_t>(n));
      for (int j = 0; j < n; ++j) x[static_cast<size_t>(j)] = u[static_cast<size_t>(j)] + std::sqrt(t) * rng.normal();
      d[i] = ctx.d_mart(t, x);
    });
    const MeanSe ms = mean_se(d);
    Record rec = make_le("martingale.mean." + fam_n(tag, n) + ".t" + fmt(frac), "martingale.normalization", 4,
                         std::abs(ms.mean - 1.0) / ms.se, cfg.tol.mc_sigmas);
    rec.note = "mean " + fmt(ms.mean) + " se " + fmt(ms.se) + " paths " + std::to_string(cfg.mc_paths);
    out.push_back(rec);
  }
  return out;
}

// ---- criterion 7 ----

std::vector<Record> kernel_vs_mc_run(const RunConfig& cfg) {
  std::vector<Record> out;
  const int n = 2, bins = 20;
  const double r = cfg.r, t = 0.3 * cfg.t_star;
  SdeSpec spec;
  spec.params = ModelParams{Model::EllipticD, 2.0, r, cfg.t_star};
  spec.u = spread_config(n, r);
  spec.dt = cfg.dt;
  spec.record_times = {t};
  spec.n_paths = cfg.mc_paths;
  spec.seed = cfg.seed;
  spec.threads = cfg.threads;
  const PathEnsemble ens = simulate(spec);
  const Histogram h = empirical_density(ens, t, bins, 0.0, kPi * r);

  const Family fam(FamilyTag::D, n);
  const KernelContext ctx = KernelContext::elliptic(fam, ProcessClock(cfg.t_star, r), Config(fam, spec.u, r));
  int agree = 0;
  double worst = 0.0;
  for (size_t b = 0; b < h.density.size(); ++b) {
    const double lo = h.lo + static_cast<double>(b) * h.bin_width();
    const QuadratureRule q = gauss_legendre(16, lo, lo + h.bin_width());
    double avg = 0.0;
    for (size_t i = 0; i < q.nodes.size(); ++i) avg += q.weights[i] * ctx.density(t, q.nodes[i]);
    avg /= h.bin_width();
    const double z = std::abs(h.density[b] - avg) / h.std_error[b];
    worst = std::max(worst, z);
    if (z <= cfg.tol.mc_sigmas) ++agree;
  }
  Record rec = make_ge("kernel_vs_mc.D.N2.bins_within_4se", "kernel.density_vs_simulation", 7, agree, cfg.tol.kernel_bins_required);
  rec.note = "worst z " + fmt(worst) + " of " + std::to_string(bins) + " bins, paths " + std::to_string(cfg.mc_paths);
  out.push_back(rec);
  const double frac = static_cast<double>(ens.flagged_count()) / ens.n_paths();
  out.push_back(make_le("sde.flagged_fraction.D.N2", "sde.ordering_preservation", 0, frac, 1e-3));
  return out;
}

// ---- criterion 9 ----

std::vector<Record> pinning_family(const RunConfig& cfg, FamilyTag tag) {
  std::vector<Record> out;
  const int n = 2;
  const double r = cfg.r, ts = cfg.t_star;
  SdeSpec spec;
  spec.params = ModelParams{elliptic_model(tag), 2.0, r, ts};
  spec.u = spread_config(n, r);
  spec.dt = kPinDt * ts;
  spec.grading = kPinGrading;
  for (double e : kPinEps) spec.record_times.push_back(ts - e * ts);
  spec.n_paths = cfg.mc_paths;
  spec.seed = cfg.seed + 0x9000 + static_cast<uint64_t>(tag);
  spec.threads = cfg.threads;
  const PathEnsemble ens = simulate(spec);
  const auto target = pinning_target(spec.params.model, n, r);

  std::vector<double> bias(std::size(kPinEps)), bias_se(std::size(kPinEps));
  double worst_z = 0.0;
  std::string note;
  for (size_t e = 0; e < std::size(kPinEps); ++e) {
    double sum_bias = 0.0, sum_var = 0.0;
    for (int j = 0; j < n; ++j) {
      std::vector<double> xs;
      xs.reserve(static_cast<size_t>(ens.n_paths()));
      for (size_t p = 0; p < static_cast<size_t>(ens.n_paths()); ++p)
        if (!ens.flagged[p]) xs.push_back(ens.at(p, e, static_cast<size_t>(j)));
      const MeanSe ms = mean_se(xs);
      const double dev = std::abs(ms.mean - target[static_cast<size_t>(j)]);
      sum_bias += dev;
      sum_var += ms.se * ms.se;
      if (e + 1 == std::size(kPinEps)) {
        worst_z = std::max(worst_z, dev / ms.se);
        note += "x" + std::to_string(j + 1) + " mean " + fmt(ms.mean) + " target " + fmt(target[static_cast<size_t>(j)]) +
                " se " + fmt(ms.se) + "; ";
      }
    }
    bias[e] = sum_bias;
    bias_se[e] = std::sqrt(sum_var);
  }
  Record rec = make_le("pinning.endpoint_mean." + fam_n(tag, n), "sde.pinned_configuration", 9, worst_z, cfg.tol.pinning_sigmas);
  rec.note = note + "paths " + std::to_string(cfg.mc_paths);
  out.push_back(rec);

  int violations = 0;
  for (size_t e = 1; e < bias.size(); ++e)
    if (bias[e] > bias[e - 1] + cfg.tol.mc_sigmas * std::hypot(bias_se[e], bias_se[e - 1])) ++violations;
  Record mono = make_le("pinning.bias_monotone." + fam_n(tag, n), "sde.pinned_configuration", 0, violations, 0.0);
  mono.note = "bias " + fmt(bias[0]) + ", " + fmt(bias[1]) + ", " + fmt(bias[2]);
  out.push_back(mono);
  if (tag == FamilyTag::C)
    out.push_back(make_le("sde.no_wall_hits.C.N2", "sde.absorbing_walls_unreached", 0, static_cast<double>(ens.flagged_count()), 0.0));
  return out;
}

}  // namespace

std::vector<Group> martingale_mc(const RunConfig& cfg) {
  std::vector<Group> g;
  for (FamilyTag tag : kBCD)
    for (int n : {2, 3})
      if (cfg.family_selected(tag) && cfg.n_selected(n))
        g.push_back({"martingale." + fam_n(tag, n), 4, [cfg, tag, n] { return martingale_family(cfg, tag, n); }});
  return g;
}

std::vector<Group> kernel_vs_mc(const RunConfig& cfg) {
  if (!cfg.family_selected(FamilyTag::D) || !cfg.n_selected(2)) return {};
  return {{"kernel_vs_mc.D.N2", 7, [cfg] { return kernel_vs_mc_run(cfg); }}};
}

std::vector<Group> pinning(const RunConfig& cfg) {
  std::vector<Group> g;
  if (!cfg.n_selected(2)) return g;
  for (FamilyTag tag : kBCD)
    if (cfg.family_selected(tag))
      g.push_back({std::string("pinning.") + to_string(tag), 9, [cfg, tag] { return pinning_family(cfg, tag); }});
  return g;
}

}  // namespace edyson::checks
