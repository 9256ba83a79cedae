#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "elliptic_dyson/root_systems.hpp"

namespace edyson {

enum class Model { EllipticA, EllipticB, EllipticC, EllipticD, TrigA, TrigB, TrigC, TrigD, RationalA, RationalC, RationalD };

const char* to_string(Model m);
Model parse_model(std::string_view name);
bool is_elliptic(Model m);
/// Root-system letter of the model (A, B, C or D).
FamilyTag model_family(Model m);

struct ModelParams {
  Model model = Model::EllipticD;
  double beta = 2.0;
  double r = 1.0;
  double t_star = std::numeric_limits<double>::infinity();
};

/// Drift vector at time t; throws PoleProximity within `guard` of a singularity.
std::vector<double> drift(const ModelParams& p, double t, std::span<const double> x, double guard = 1e-10);

/// Pinning configuration approached as t -> t_star.
std::vector<double> pinning_target(Model m, int n, double r);

enum class InitialLaw { Fixed, Equilibrium };

struct SdeSpec {
  ModelParams params;
  std::vector<double> u;
  InitialLaw initial = InitialLaw::Fixed;
  double dt = 1e-4;
  /// When positive, steps are also capped by grading * (t_star - t).
  double grading = 0.0;
  /// Times at which positions are stored; the simulation ends at the largest.
  std::vector<double> record_times;
  int n_paths = 1000;
  uint64_t seed = 0;
  int max_halvings = 20;
  /// Enforce dt < gap_factor * (min gap of u)^2.
  double gap_factor = 0.01;
  bool enforce_gap_guard = true;
  /// Minimum distance to a drift singularity, in units of r.
  double pole_guard = 1e-8;
  /// 0 picks the hardware concurrency, capped by ELLIPTIC_DYSON_THREADS.
  int threads = 0;
};

enum class EventKind : uint8_t { StepRetried = 1, PathFlagged = 2 };

struct PathEvent {
  uint64_t path;
  uint32_t step;
  EventKind kind;
  uint8_t depth;
  double time;
};

struct PathEnsemble {
  SdeSpec spec;
  int n = 0;
  std::vector<double> times;
  /// positions[(p * times.size() + i) * n + j]
  std::vector<double> positions;
  std::vector<uint8_t> flagged;
  std::vector<PathEvent> events;
  size_t steps = 0;

  int n_paths() const { return spec.n_paths; }
  double at(size_t path, size_t time_index, size_t j) const {
    return positions[(path * times.size() + time_index) * static_cast<size_t>(n) + j];
  }
  size_t time_index(double t) const;
  size_t flagged_count() const;
};

/// Worker count after applying ELLIPTIC_DYSON_THREADS.
int resolve_threads(int requested);

std::vector<double> build_time_grid(const SdeSpec& spec);
PathEnsemble simulate(const SdeSpec& spec);

/// Draw from the equal-time equilibrium point process of TrigC or TrigD by rejection.
std::vector<double> sample_equilibrium(FamilyTag tag, int n, double r, uint64_t seed, uint64_t index);

struct Histogram {
  double lo = 0.0, hi = 0.0;
  std::vector<double> density;
  std::vector<double> std_error;
  double bin_width() const { return (hi - lo) / static_cast<double>(density.size()); }
  double bin_center(size_t b) const { return lo + (static_cast<double>(b) + 0.5) * bin_width(); }
};

/// Particle density at a recorded time over [lo, hi]; unflagged paths only; mass N when all particles fall inside.
Histogram empirical_density(const PathEnsemble& ens, double t, int bins, double lo, double hi);
Histogram empirical_density(const PathEnsemble& ens, double t, int bins);

/// Binary frame: magic, version, spec hash, seed, dims, then little-endian float64 positions.
void write_binary(const PathEnsemble& ens, const std::string& path);
PathEnsemble read_binary(const std::string& path);
void write_csv(const PathEnsemble& ens, const std::string& path);
uint64_t spec_hash(const SdeSpec& spec);

}  // namespace edyson
