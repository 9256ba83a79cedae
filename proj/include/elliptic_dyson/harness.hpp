#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "elliptic_dyson/root_systems.hpp"

namespace edyson {

enum class Suite { Identities, MartingaleMc, Kolmogorov, IntegralIdentity, KernelVsMc, Relaxation, Pinning, Fredholm, All };
enum class ReportFormat { Json, Csv };

const char* to_string(Suite s);
Suite parse_suite(std::string_view name);
const char* to_string(ReportFormat f);
ReportFormat parse_format(std::string_view name);

struct Tolerances {
  double factorization_rel = 1e-9;
  double theta_rel = 1e-10;
  double heat_residual = 1e-5;
  double asymptotic_rel = 1e-6;
  double interp_delta = 1e-10;
  double interp_matrix = 1e-9;
  double mc_sigmas = 4.0;
  double kolmogorov_residual = 1e-3;
  double integral_n2 = 1e-6;
  double integral_n3 = 1e-4;
  int kernel_bins_required = 18;
  double equilibrium_mass = 1e-10;
  double pinning_sigmas = 5.0;
  double gauge_abs = 1e-8;
  double gap_slack = 1e-6;
};

struct RunConfig {
  Suite suite = Suite::Identities;
  /// Restricts family-indexed checks; empty keeps each check's default families.
  std::vector<FamilyTag> families;
  /// Restricts particle numbers; empty keeps each check's defaults.
  std::vector<int> ns;
  double t_star = 1.0;
  double r = 1.0;
  uint64_t seed = 42;
  int mc_paths = 100000;
  double dt = 1e-4;
  Tolerances tol;
  /// Worker threads; 0 picks the hardware count. Not part of the report.
  int threads = 0;
  std::string out;
  ReportFormat format = ReportFormat::Json;

  void validate() const;
  bool family_selected(FamilyTag tag) const;
  bool n_selected(int n) const;
};

/// One executed check. `anchor` names the identity or property exercised, or "plumbing".
struct Record {
  std::string name;
  std::string anchor;
  int criterion = 0;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  /// How measured is judged: "le" (measured <= tolerance), "lt", "ge", "range".
  std::string comparison = "le";
  bool pass = false;
  std::string note;
};

struct Report {
  RunConfig config;
  std::vector<Record> records;

  bool all_pass() const;
  /// Records of one acceptance criterion (1..11); 0 selects the supporting checks.
  std::vector<const Record*> criterion(int k) const;
};

Report run_suite(const RunConfig& cfg);

std::string to_json(const Report& rep);
std::string to_csv(const Report& rep);
std::string serialize(const Report& rep, ReportFormat fmt);
/// Parses a JSON report, returning its embedded configuration.
RunConfig config_from_report_json(const std::string& text);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

/// Relative deviation of the multiple integral of reflecting-interval densities times
/// theta_1 pair ratios from the Dedekind eta power. Tensor Gauss-Legendre of `quad_order` per axis.
double verify_integral_identity(int n, double t, double t_star, double r, const std::vector<double>& u, int quad_order);

/// Finite-difference residual of the backward Kolmogorov equation for the two-particle
/// transition density of family B, C or D, relative to the largest term.
double kolmogorov_residual(FamilyTag tag, double s, const std::vector<double>& x, double t,
                           const std::vector<double>& y, double t_star, double r, double h);

/// Transition density of the N-particle elliptic process between (s, x) and (t, y).
double transition_density(FamilyTag tag, double s, const std::vector<double>& x, double t,
                          const std::vector<double>& y, double t_star, double r);

namespace checks {

/// Independent unit of work; records come back in a fixed order.
struct Group {
  std::string name;
  int criterion = 0;
  std::function<std::vector<Record>()> run;
};

std::vector<Group> identities(const RunConfig& cfg);
std::vector<Group> martingale_mc(const RunConfig& cfg);
std::vector<Group> kolmogorov(const RunConfig& cfg);
std::vector<Group> integral_identity(const RunConfig& cfg);
std::vector<Group> kernel_vs_mc(const RunConfig& cfg);
std::vector<Group> relaxation(const RunConfig& cfg);
std::vector<Group> pinning(const RunConfig& cfg);
std::vector<Group> fredholm(const RunConfig& cfg);

Record make_le(std::string name, std::string anchor, int criterion, double measured, double tolerance,
               double expected = 0.0);
Record make_ge(std::string name, std::string anchor, int criterion, double measured, double bound);
/// Evenly spread configuration (j - 1/2) pi r / N.
std::vector<double> spread_config(int n, double r);
/// Runs f(i) for i in [0, count) across worker threads; results are stored by index.
void parallel_for(int threads, size_t count, const std::function<void(size_t)>& f);

}  // namespace checks

}  // namespace edyson
