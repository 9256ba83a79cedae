#include "elliptic_dyson/sde.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

#include "elliptic_dyson/kernels.hpp"
#include "elliptic_dyson/rng.hpp"

namespace edyson {

namespace {

constexpr Model kAllModels[] = {Model::EllipticA, Model::EllipticB, Model::EllipticC, Model::EllipticD,
                                Model::TrigA,     Model::TrigB,     Model::TrigC,     Model::TrigD,
                                Model::RationalA, Model::RationalC, Model::RationalD};

enum class Regime { Elliptic, Trig, Rational };

Regime regime(Model m) {
  switch (m) {
    case Model::EllipticA:
    case Model::EllipticB:
    case Model::EllipticC:
    case Model::EllipticD: return Regime::Elliptic;
    case Model::TrigA:
    case Model::TrigB:
    case Model::TrigC:
    case Model::TrigD: return Regime::Trig;
    default: return Regime::Rational;
  }
}

enum class WallKind { None, Absorb, Reflect };

struct Walls {
  WallKind lower = WallKind::None;
  WallKind upper = WallKind::None;
  double upper_pos = 0.0;
};

Walls walls_of(Model m, double r) {
  const FamilyTag f = model_family(m);
  if (f == FamilyTag::A) return {};
  if (regime(m) == Regime::Rational)
    return {f == FamilyTag::D ? WallKind::Reflect : WallKind::Absorb, WallKind::None, 0.0};
  switch (f) {
    case FamilyTag::B: return {WallKind::Absorb, WallKind::Reflect, kPi * r};
    case FamilyTag::C: return {WallKind::Absorb, WallKind::Absorb, kPi * r};
    default: return {WallKind::Reflect, WallKind::Reflect, kPi * r};
  }
}

int cal_n_of(Model m, int n) {
  switch (model_family(m)) {
    case FamilyTag::A: return n;
    case FamilyTag::B: return 2 * n - 1;
    case FamilyTag::C: return 2 * (n + 1);
    default: return 2 * (n - 1);
  }
}

double kappa_of(int n, double r) { return (n % 2 == 0) ? kPi * r * (n - 1) : kPi * r * (n - 2); }

/// Drift of one model frozen at one time.
class DriftField {
public:
  DriftField(const ModelParams& p, int n, double t, double guard)
      : p_(p), n_(n), regime_(regime(p.model)), fam_(model_family(p.model)), guard_(guard),
        period_(2.0 * kPi * p.r), walls_(walls_of(p.model, p.r)) {
    if (regime_ == Regime::Elliptic) {
      const double t_rem = p.t_star - t;
      require(t_rem > 0.0, "elliptic drift needs t < t_star");
      const int cal = cal_n_of(p.model, n);
      require(cal > 0, "elliptic model needs N >= 2");
      af_ = AFunction(cal, t_rem, p.r, guard / period_);
    }
  }

  /// Interaction g(z) with a pole check.
  bool g(double z, double& out) const {
    switch (regime_) {
      case Regime::Elliptic: return af_.try_eval(z, out);
      case Regime::Trig: {
        const double red = z - period_ * std::round(z / period_);
        if (!(std::abs(red) >= guard_)) return false;
        out = 1.0 / (2.0 * p_.r * std::tan(z / (2.0 * p_.r)));
        return true;
      }
      case Regime::Rational:
        if (!(std::abs(z) >= guard_)) return false;
        out = 1.0 / z;
        return true;
    }
    return false;
  }

  bool eval(const double* x, double* out) const {
    double v = 0.0;
    if (fam_ == FamilyTag::A) {
      double coll = 0.0;
      if (regime_ != Regime::Rational) {
        double s = 0.0;
        for (int j = 0; j < n_; ++j) s += x[j];
        if (!g(s - kappa_of(n_, p_.r), coll)) return false;
      }
      for (int j = 0; j < n_; ++j) out[j] = coll;
      for (int j = 0; j < n_; ++j)
        for (int k = j + 1; k < n_; ++k) {
          if (!g(x[j] - x[k], v)) return false;
          out[j] += v;
          out[k] -= v;
        }
      for (int j = 0; j < n_; ++j) out[j] *= 0.5 * p_.beta;
      return true;
    }
    for (int j = 0; j < n_; ++j) {
      out[j] = 0.0;
      if (fam_ == FamilyTag::B) {
        if (!g(x[j], v)) return false;
        out[j] = v;
      } else if (fam_ == FamilyTag::C) {
        if (!g(2.0 * x[j], v)) return false;
        out[j] = 2.0 * v;
      }
    }
    for (int j = 0; j < n_; ++j)
      for (int k = j + 1; k < n_; ++k) {
        if (!g(x[j] - x[k], v)) return false;
        out[j] += v;
        out[k] -= v;
        if (!g(x[j] + x[k], v)) return false;
        out[j] += v;
        out[k] += v;
      }
    return true;
  }

  /// Fold reflecting walls.
  void fold(double* x) const {
    for (int j = 0; j < n_; ++j) {
      for (int it = 0; it < 64; ++it) {
        if (walls_.lower == WallKind::Reflect && x[j] < 0.0) {
          x[j] = -x[j];
        } else if (walls_.upper == WallKind::Reflect && x[j] > walls_.upper_pos) {
          x[j] = 2.0 * walls_.upper_pos - x[j];
        } else {
          break;
        }
      }
    }
  }

  /// Ordered, inside the domain, and away from every drift singularity.
  bool admissible(const double* x) const {
    for (int j = 0; j < n_; ++j) {
      if (!std::isfinite(x[j])) return false;
      if (j > 0 && !(x[j] > x[j - 1])) return false;
    }
    if (walls_.lower != WallKind::None && x[0] < 0.0) return false;
    if (walls_.lower == WallKind::Absorb && !(x[0] > 0.0)) return false;
    if (walls_.upper != WallKind::None && x[n_ - 1] > walls_.upper_pos) return false;
    if (walls_.upper == WallKind::Absorb && !(x[n_ - 1] < walls_.upper_pos)) return false;
    return poles_clear(x);
  }

  bool clear(double z) const {
    if (regime_ == Regime::Rational) return std::abs(z) >= guard_;
    return std::abs(z - period_ * std::round(z / period_)) >= guard_;
  }

  /// Every drift argument is at least `guard` away from a pole.
  bool poles_clear(const double* x) const {
    if (fam_ == FamilyTag::A) {
      if (regime_ != Regime::Rational) {
        double s = 0.0;
        for (int j = 0; j < n_; ++j) s += x[j];
        if (!clear(s - kappa_of(n_, p_.r))) return false;
      }
      for (int j = 0; j < n_; ++j)
        for (int k = j + 1; k < n_; ++k)
          if (!clear(x[j] - x[k])) return false;
      return true;
    }
    for (int j = 0; j < n_; ++j) {
      if (fam_ == FamilyTag::B && !clear(x[j])) return false;
      if (fam_ == FamilyTag::C && !clear(2.0 * x[j])) return false;
      for (int k = j + 1; k < n_; ++k)
        if (!clear(x[j] - x[k]) || !clear(x[j] + x[k])) return false;
    }
    return true;
  }

private:
  ModelParams p_;
  int n_;
  Regime regime_;
  FamilyTag fam_;
  double guard_;
  double period_;
  Walls walls_;
  AFunction af_;
};

std::array<double, 2> normals_at(const std::array<uint32_t, 2>& key, uint64_t path, uint32_t step, uint32_t node,
                                 uint32_t chunk) {
  return normal_pair(philox4x32({static_cast<uint32_t>(path), step, node, chunk}, key));
}

void fill_normals(const std::array<uint32_t, 2>& key, uint64_t path, uint32_t step, uint32_t node, int n, double* out) {
  for (int c = 0; 2 * c < n; ++c) {
    const auto z = normals_at(key, path, step, node, static_cast<uint32_t>(c));
    out[2 * c] = z[0];
    if (2 * c + 1 < n) out[2 * c + 1] = z[1];
  }
}

struct StepContext {
  const ModelParams* params;
  int n;
  double guard;
  std::array<uint32_t, 2> key;
  uint64_t path;
  uint32_t step;
  int max_depth;
  const DriftField* base_field;
  double base_time;
};

bool advance(const StepContext& c, std::vector<double>& x, double t, double h, const std::vector<double>& dw,
             uint32_t node, int depth, int& reached) {
  reached = std::max(reached, depth);
  const int n = c.n;
  std::vector<double> d(static_cast<size_t>(n)), y(static_cast<size_t>(n));
  bool ok;
  if (t == c.base_time) {
    ok = c.base_field->eval(x.data(), d.data());
    if (ok) {
      for (int j = 0; j < n; ++j) y[static_cast<size_t>(j)] = x[static_cast<size_t>(j)] + d[static_cast<size_t>(j)] * h + dw[static_cast<size_t>(j)];
      c.base_field->fold(y.data());
      if (c.base_field->admissible(y.data())) {
        x = y;
        return true;
      }
    }
  } else {
    const DriftField field(*c.params, n, t, c.guard);
    ok = field.eval(x.data(), d.data());
    if (ok) {
      for (int j = 0; j < n; ++j) y[static_cast<size_t>(j)] = x[static_cast<size_t>(j)] + d[static_cast<size_t>(j)] * h + dw[static_cast<size_t>(j)];
      field.fold(y.data());
      if (field.admissible(y.data())) {
        x = y;
        return true;
      }
    }
  }
  if (depth >= c.max_depth) return false;
  std::vector<double> xi(static_cast<size_t>(n)), wa(static_cast<size_t>(n)), wb(static_cast<size_t>(n));
  fill_normals(c.key, c.path, c.step, node, n, xi.data());
  const double half_sd = 0.5 * std::sqrt(h);
  for (size_t j = 0; j < xi.size(); ++j) {
    wa[j] = 0.5 * dw[j] + half_sd * xi[j];
    wb[j] = dw[j] - wa[j];
  }
  std::vector<double> xa = x;
  if (!advance(c, xa, t, 0.5 * h, wa, 2 * node, depth + 1, reached)) return false;
  if (!advance(c, xa, t + 0.5 * h, 0.5 * h, wb, 2 * node + 1, depth + 1, reached)) return false;
  x = xa;
  return true;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

}  // namespace

const char* to_string(Model m) {
  switch (m) {
    case Model::EllipticA: return "EllipticA";
    case Model::EllipticB: return "EllipticB";
    case Model::EllipticC: return "EllipticC";
    case Model::EllipticD: return "EllipticD";
    case Model::TrigA: return "TrigA";
    case Model::TrigB: return "TrigB";
    case Model::TrigC: return "TrigC";
    case Model::TrigD: return "TrigD";
    case Model::RationalA: return "RationalA";
    case Model::RationalC: return "RationalC";
    case Model::RationalD: return "RationalD";
  }
  return "?";
}

Model parse_model(std::string_view name) {
  const std::string key = lower(name);
  for (Model m : kAllModels)
    if (lower(to_string(m)) == key) return m;
  fail(ErrorKind::InvalidArgument, "unknown model name: " + std::string(name));
}

bool is_elliptic(Model m) { return regime(m) == Regime::Elliptic; }

FamilyTag model_family(Model m) {
  switch (m) {
    case Model::EllipticA:
    case Model::TrigA:
    case Model::RationalA: return FamilyTag::A;
    case Model::EllipticB:
    case Model::TrigB: return FamilyTag::B;
    case Model::EllipticC:
    case Model::TrigC:
    case Model::RationalC: return FamilyTag::C;
    default: return FamilyTag::D;
  }
}

std::vector<double> drift(const ModelParams& p, double t, std::span<const double> x, double guard) {
  const int n = static_cast<int>(x.size());
  require(n >= 1, "drift needs at least one particle");
  const DriftField field(p, n, t, guard);
  std::vector<double> out(static_cast<size_t>(n));
  if (!field.eval(x.data(), out.data())) fail(ErrorKind::PoleProximity, "drift argument within guard of a singularity");
  return out;
}

std::vector<double> pinning_target(Model m, int n, double r) {
  require(is_elliptic(m), "pinning targets exist for elliptic models only");
  std::vector<double> v(static_cast<size_t>(n));
  for (int j = 1; j <= n; ++j) {
    double val = 0.0;
    switch (model_family(m)) {
      case FamilyTag::A: val = (n % 2 == 0) ? kPi * r * (2 * j - 1) / n : 2.0 * kPi * r * (j - 1) / n; break;
      case FamilyTag::B: val = kPi * r * (2 * j - 1) / (2 * n - 1); break;
      case FamilyTag::C: val = kPi * r * j / (n + 1); break;
      default: val = kPi * r * (j - 1) / (n - 1); break;
    }
    v[static_cast<size_t>(j - 1)] = val;
  }
  return v;
}

int resolve_threads(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("ELLIPTIC_DYSON_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::max(1, n);
}

std::vector<double> build_time_grid(const SdeSpec& spec) {
  require(spec.dt > 0.0, "dt must be positive");
  require(!spec.record_times.empty(), "at least one record time is required");
  std::vector<double> rec = spec.record_times;
  std::sort(rec.begin(), rec.end());
  rec.erase(std::unique(rec.begin(), rec.end()), rec.end());
  require(rec.front() >= 0.0, "record times must be nonnegative");
  const bool ell = is_elliptic(spec.params.model);
  if (ell) require(rec.back() < spec.params.t_star, "record times must precede t_star");
  std::vector<double> grid{0.0};
  double t = 0.0;
  for (double target : rec) {
    if (target <= t) continue;
    if (spec.grading > 0.0 && ell) {
      while (t < target) {
        double h = std::min(spec.dt, spec.grading * (spec.params.t_star - t));
        if (target - (t + h) < 0.25 * h) h = target - t;
        t = (h == target - t) ? target : t + h;
        grid.push_back(t);
      }
    } else {
      const double start = t;
      const long steps = std::max(1L, static_cast<long>(std::ceil((target - start) / spec.dt - 1e-9)));
      for (long i = 1; i < steps; ++i) grid.push_back(start + (target - start) * static_cast<double>(i) / steps);
      grid.push_back(target);
      t = target;
    }
  }
  return grid;
}

size_t PathEnsemble::time_index(double t) const {
  for (size_t i = 0; i < times.size(); ++i)
    if (std::abs(times[i] - t) <= 1e-12 * std::max(1.0, std::abs(t))) return i;
  fail(ErrorKind::InvalidArgument, "time is not a recorded grid time");
}

size_t PathEnsemble::flagged_count() const {
  return static_cast<size_t>(std::count(flagged.begin(), flagged.end(), uint8_t{1}));
}

std::vector<double> sample_equilibrium(FamilyTag tag, int n, double r, uint64_t seed, uint64_t index) {
  require(tag == FamilyTag::C || tag == FamilyTag::D, "equilibrium sampling exists for C and D only");
  require(n >= 1, "need at least one particle");
  const double len = kPi * r;
  const double rho_max = (tag == FamilyTag::C ? 2.0 * n : 2.0 * n - 1.0) / len;
  const double bound = std::pow(rho_max, n);
  CounterStream rng(seed, index, 0x45515354u);
  std::vector<double> x(static_cast<size_t>(n));
  Eigen::MatrixXd k(n, n);
  for (int attempt = 0; attempt < 10000000; ++attempt) {
    for (double& v : x) v = len * rng.uniform();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        k(i, j) = kernel_eq_trig(tag, 0.0, x[static_cast<size_t>(i)], x[static_cast<size_t>(j)], n, r);
    const double det = k.determinant();
    if (rng.uniform() * bound < det) {
      std::sort(x.begin(), x.end());
      return x;
    }
  }
  fail(ErrorKind::NumericalConditioning, "equilibrium rejection sampler did not accept");
}

PathEnsemble simulate(const SdeSpec& spec) {
  const ModelParams& p = spec.params;
  const int n = static_cast<int>(spec.u.size());
  require(n >= 1, "configuration must be nonempty");
  require(spec.n_paths >= 1, "n_paths must be positive");
  require(spec.max_halvings >= 0 && spec.max_halvings <= 24, "max_halvings must lie in [0, 24]");
  require(p.r > 0.0, "r must be positive");
  if (is_elliptic(p.model)) {
    require(std::isfinite(p.t_star) && p.t_star > 0.0, "elliptic models need a finite t_star");
    require(n >= 2, "elliptic models need N >= 2");
  }
  if (spec.initial == InitialLaw::Equilibrium)
    require(p.model == Model::TrigC || p.model == Model::TrigD, "equilibrium start exists for TrigC and TrigD");
  if (spec.enforce_gap_guard && spec.initial == InitialLaw::Fixed && n >= 2) {
    double gap = std::numeric_limits<double>::infinity();
    for (int j = 1; j < n; ++j) gap = std::min(gap, spec.u[static_cast<size_t>(j)] - spec.u[static_cast<size_t>(j - 1)]);
    require(spec.dt < spec.gap_factor * gap * gap, "dt violates the gap guard dt < factor * min_gap^2");
  }
  const double guard = spec.pole_guard * p.r;
  if (spec.initial == InitialLaw::Fixed)
    require(DriftField(p, n, 0.0, guard).admissible(spec.u.data()), "initial configuration is not admissible for the model");

  const std::vector<double> grid = build_time_grid(spec);
  std::vector<double> rec = spec.record_times;
  std::sort(rec.begin(), rec.end());
  rec.erase(std::unique(rec.begin(), rec.end()), rec.end());
  std::vector<int> slot_of_grid(grid.size(), -1);
  for (size_t i = 0, g = 0; i < rec.size(); ++i) {
    while (g < grid.size() && grid[g] != rec[i]) ++g;
    require(g < grid.size(), "record time missing from grid");
    slot_of_grid[g] = static_cast<int>(i);
  }

  PathEnsemble ens;
  ens.spec = spec;
  ens.n = n;
  ens.times = rec;
  ens.steps = grid.size() - 1;
  const size_t n_paths = static_cast<size_t>(spec.n_paths);
  const size_t n_rec = rec.size();
  ens.positions.assign(n_paths * n_rec * static_cast<size_t>(n), std::numeric_limits<double>::quiet_NaN());
  ens.flagged.assign(n_paths, 0);
  const auto key = philox_key(spec.seed);

  const int workers = std::min<int>(resolve_threads(spec.threads), static_cast<int>(n_paths));
  std::vector<std::vector<PathEvent>> events(static_cast<size_t>(workers));
  std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));

  auto run_block = [&](int w) {
    try {
      const size_t begin = n_paths * static_cast<size_t>(w) / static_cast<size_t>(workers);
      const size_t end = n_paths * static_cast<size_t>(w + 1) / static_cast<size_t>(workers);
      const size_t m = end - begin;
      std::vector<double> state(m * static_cast<size_t>(n));
      for (size_t i = 0; i < m; ++i) {
        std::vector<double> x0 = spec.initial == InitialLaw::Fixed
                                     ? spec.u
                                     : sample_equilibrium(model_family(p.model), n, p.r, spec.seed, begin + i);
        std::copy(x0.begin(), x0.end(), state.begin() + static_cast<long>(i * static_cast<size_t>(n)));
      }
      std::vector<uint8_t> flag(m, 0);
      auto record = [&](size_t g) {
        const int s = slot_of_grid[g];
        if (s < 0) return;
        for (size_t i = 0; i < m; ++i) {
          if (flag[i]) continue;
          double* dst = &ens.positions[((begin + i) * n_rec + static_cast<size_t>(s)) * static_cast<size_t>(n)];
          std::copy_n(&state[i * static_cast<size_t>(n)], n, dst);
        }
      };
      record(0);
      std::vector<double> x(static_cast<size_t>(n)), dw(static_cast<size_t>(n)), d(static_cast<size_t>(n));
      for (size_t g = 0; g + 1 < grid.size(); ++g) {
        const double t = grid[g];
        const double h = grid[g + 1] - t;
        const DriftField field(p, n, t, guard);
        const double sd = std::sqrt(h);
        StepContext ctx{&p, n, guard, key, 0, static_cast<uint32_t>(g), spec.max_halvings, &field, t};
        for (size_t i = 0; i < m; ++i) {
          if (flag[i]) continue;
          double* xs = &state[i * static_cast<size_t>(n)];
          const uint64_t path = begin + i;
          fill_normals(key, path, static_cast<uint32_t>(g), 0, n, dw.data());
          for (double& v : dw) v *= sd;
          // fast path: one Euler step
          if (field.eval(xs, d.data())) {
            for (int j = 0; j < n; ++j) x[static_cast<size_t>(j)] = xs[j] + d[static_cast<size_t>(j)] * h + dw[static_cast<size_t>(j)];
            field.fold(x.data());
            if (field.admissible(x.data())) {
              std::copy_n(x.data(), n, xs);
              continue;
            }
          }
          std::vector<double> cur(xs, xs + n);
          ctx.path = path;
          int reached = 0;
          const bool ok = advance(ctx, cur, t, h, dw, 1, 0, reached);
          auto& ev = events[static_cast<size_t>(w)];
          ev.push_back({path, static_cast<uint32_t>(g), EventKind::StepRetried, static_cast<uint8_t>(reached), t});
          if (ok) {
            std::copy_n(cur.data(), n, xs);
          } else {
            flag[i] = 1;
            ev.push_back({path, static_cast<uint32_t>(g), EventKind::PathFlagged, static_cast<uint8_t>(reached), t});
          }
        }
        record(g + 1);
      }
      for (size_t i = 0; i < m; ++i) ens.flagged[begin + i] = flag[i];
    } catch (...) {
      errors[static_cast<size_t>(w)] = std::current_exception();
    }
  };

  if (workers == 1) {
    run_block(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run_block, w);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (auto& ev : events) ens.events.insert(ens.events.end(), ev.begin(), ev.end());
  std::stable_sort(ens.events.begin(), ens.events.end(), [](const PathEvent& a, const PathEvent& b) {
    return a.path != b.path ? a.path < b.path : a.step < b.step;
  });
  if (static_cast<double>(ens.flagged_count()) > 0.01 * static_cast<double>(n_paths))
    fail(ErrorKind::EnsembleDegraded, "more than 1% of paths exhausted the step-halving budget");
  return ens;
}

Histogram empirical_density(const PathEnsemble& ens, double t, int bins, double lo, double hi) {
  require(bins >= 1 && hi > lo, "invalid histogram range");
  const size_t ti = ens.time_index(t);
  Histogram h;
  h.lo = lo;
  h.hi = hi;
  const size_t nb = static_cast<size_t>(bins);
  std::vector<double> sum(nb, 0.0), sum2(nb, 0.0), count(nb);
  size_t used = 0;
  const double width = (hi - lo) / bins;
  for (size_t p = 0; p < static_cast<size_t>(ens.n_paths()); ++p) {
    if (ens.flagged[p]) continue;
    ++used;
    std::fill(count.begin(), count.end(), 0.0);
    for (size_t j = 0; j < static_cast<size_t>(ens.n); ++j) {
      const double x = ens.at(p, ti, j);
      if (!(x >= lo && x <= hi)) continue;
      const size_t b = std::min(nb - 1, static_cast<size_t>((x - lo) / width));
      count[b] += 1.0;
    }
    for (size_t b = 0; b < nb; ++b) {
      sum[b] += count[b];
      sum2[b] += count[b] * count[b];
    }
  }
  require(used > 1, "not enough unflagged paths");
  h.density.resize(nb);
  h.std_error.resize(nb);
  const double u = static_cast<double>(used);
  for (size_t b = 0; b < nb; ++b) {
    const double mean = sum[b] / u;
    const double var = std::max(0.0, (sum2[b] - u * mean * mean) / (u - 1.0));
    h.density[b] = mean / width;
    h.std_error[b] = std::sqrt(var / u) / width;
  }
  return h;
}

Histogram empirical_density(const PathEnsemble& ens, double t, int bins) {
  const Model m = ens.spec.params.model;
  const double r = ens.spec.params.r;
  if (model_family(m) != FamilyTag::A && regime(m) != Regime::Rational) return empirical_density(ens, t, bins, 0.0, kPi * r);
  const size_t ti = ens.time_index(t);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (size_t p = 0; p < static_cast<size_t>(ens.n_paths()); ++p) {
    if (ens.flagged[p]) continue;
    for (size_t j = 0; j < static_cast<size_t>(ens.n); ++j) {
      lo = std::min(lo, ens.at(p, ti, j));
      hi = std::max(hi, ens.at(p, ti, j));
    }
  }
  if (regime(m) == Regime::Rational && model_family(m) != FamilyTag::A) lo = 0.0;
  return empirical_density(ens, t, bins, lo, hi);
}

}  // namespace edyson
