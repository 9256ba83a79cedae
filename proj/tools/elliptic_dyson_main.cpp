#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "elliptic_dyson/harness.hpp"
#include "elliptic_dyson/kernels.hpp"
#include "elliptic_dyson/sde.hpp"

namespace {

using namespace edyson;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") std::cout << text;
  else write_text_file(out, text);
}

struct RunArgs {
  std::string suite = "identities";
  std::vector<std::string> families;
  std::vector<int> ns;
  double t_star = 1.0, r = 1.0, dt = 1e-4;
  uint64_t seed = 42;
  int paths = 100000;
  int threads = 0;
  std::string out, format = "json", from_report;
};

int do_run(const RunArgs& a, const CLI::App& cmd) {
  RunConfig cfg;
  if (!a.from_report.empty()) {
    cfg = config_from_report_json(read_text_file(a.from_report));
    if (cmd.count("--format")) cfg.format = parse_format(a.format);
  } else {
    cfg.suite = parse_suite(a.suite);
    for (const auto& f : a.families) cfg.families.push_back(parse_family(f));
    cfg.ns = a.ns;
    cfg.t_star = a.t_star;
    cfg.r = a.r;
    cfg.seed = a.seed;
    cfg.mc_paths = a.paths;
    cfg.dt = a.dt;
    cfg.format = parse_format(a.format);
  }
  cfg.threads = a.threads;
  cfg.out = a.out;
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const Report rep = run_suite(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit(cfg.out, serialize(rep, cfg.format));
  size_t failed = 0;
  for (const Record& r : rep.records) {
    if (!r.pass) {
      ++failed;
      std::cerr << "FAIL " << r.name << " measured=" << r.measured << " tolerance=" << r.tolerance;
      if (!r.note.empty()) std::cerr << " (" << r.note << ")";
      std::cerr << '\n';
    }
  }
  std::cerr << "suite " << to_string(cfg.suite) << ": " << rep.records.size() - failed << "/" << rep.records.size()
            << " checks passed in " << secs << " s\n";
  return failed == 0 ? 0 : kExitFail;
}

struct KernelArgs {
  std::string family = "D", mode = "elliptic";
  int n = 2;
  double t_star = 1.0, r = 1.0, s = 0.3, t = 0.3;
  std::vector<double> u;
  int grid = 50;
  std::string out, format = "csv";
};

int do_eval_kernel(const KernelArgs& a) {
  const FamilyTag tag = parse_family(a.family);
  require(a.grid >= 1 && a.grid <= 10000, "grid must lie in [1, 10000]");
  const ReportFormat fmt = parse_format(a.format);
  const double r = a.r;
  std::vector<double> u = a.u;
  if (u.empty()) u = checks::spread_config(a.n, r);
  const int n = static_cast<int>(u.size());
  const Family fam(tag, n);
  KernelContext ctx = [&] {
    if (a.mode == "elliptic") return KernelContext::elliptic(fam, ProcessClock(a.t_star, r), Config(fam, u, r));
    if (a.mode == "trig") return KernelContext::trigonometric(tag, Config(fam, u, r), r);
    if (a.mode == "equilibrium") return KernelContext::equilibrium(tag, n, r);
    fail(ErrorKind::InvalidArgument, "unknown kernel mode: " + a.mode);
  }();
  std::ostringstream csv;
  csv.precision(17);
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  if (fmt == ReportFormat::Csv) csv << "s,x,t,y,K\n";
  for (int i = 0; i < a.grid; ++i)
    for (int j = 0; j < a.grid; ++j) {
      const double x = (i + 0.5) * kPi * r / a.grid, y = (j + 0.5) * kPi * r / a.grid;
      const double k = ctx.kernel(a.s, x, a.t, y);
      if (fmt == ReportFormat::Csv) csv << a.s << ',' << x << ',' << a.t << ',' << y << ',' << k << '\n';
      else pts.push_back({{"s", a.s}, {"x", x}, {"t", a.t}, {"y", y}, {"K", k}});
    }
  if (fmt == ReportFormat::Csv) {
    emit(a.out, csv.str());
  } else {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["family"] = to_string(tag);
    j["mode"] = a.mode;
    j["u"] = u;
    j["r"] = r;
    j["t_star"] = a.t_star;
    j["points"] = pts;
    emit(a.out, j.dump(2) + "\n");
  }
  return 0;
}

struct SimArgs {
  std::string model = "EllipticD", format = "bin", out, initial = "fixed";
  int n = 2, paths = 1000, threads = 0;
  std::vector<double> u, record;
  double t_star = 1.0, r = 1.0, beta = 2.0, dt = 1e-4, grading = 0.0;
  uint64_t seed = 42;
};

int do_simulate(const SimArgs& a) {
  SdeSpec spec;
  spec.params = ModelParams{parse_model(a.model), a.beta, a.r, a.t_star};
  spec.u = a.u.empty() ? checks::spread_config(a.n, a.r) : a.u;
  spec.initial = a.initial == "equilibrium" ? InitialLaw::Equilibrium : InitialLaw::Fixed;
  require(a.initial == "fixed" || a.initial == "equilibrium", "initial must be fixed or equilibrium");
  spec.dt = a.dt;
  spec.grading = a.grading;
  spec.record_times = a.record;
  spec.n_paths = a.paths;
  spec.seed = a.seed;
  spec.threads = a.threads;
  require(!a.out.empty(), "--out is required for simulate");
  const PathEnsemble ens = simulate(spec);
  if (a.format == "bin") write_binary(ens, a.out);
  else if (a.format == "csv") write_csv(ens, a.out);
  else fail(ErrorKind::InvalidArgument, "format must be bin or csv");
  std::cerr << "simulated " << ens.n_paths() << " paths, " << ens.flagged_count() << " flagged, " << ens.events.size()
            << " step events\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elliptic Dyson models: validation suites, kernels and path simulation"};
  app.require_subcommand(1);

  RunArgs ra;
  auto* run = app.add_subcommand("run", "Run a validation suite and write a report");
  run->add_option("--suite", ra.suite,
                  "identities, martingale_mc, kolmogorov, integral_identity, kernel_vs_mc, relaxation, pinning, fredholm, all");
  run->add_option("--family", ra.families, "Restrict to families (A, B, Bvee, C, Cvee, BC, D)")->delimiter(',');
  run->add_option("--n", ra.ns, "Restrict to particle numbers")->delimiter(',');
  run->add_option("--tstar", ra.t_star, "Terminal time t*");
  run->add_option("--r", ra.r, "Length scale r");
  run->add_option("--seed", ra.seed, "Random seed");
  run->add_option("--paths", ra.paths, "Monte Carlo paths");
  run->add_option("--dt", ra.dt, "SDE time step");
  run->add_option("--threads", ra.threads, "Worker threads (0 = all cores)");
  run->add_option("--out", ra.out, "Report path (stdout when omitted)");
  run->add_option("--format", ra.format, "json or csv");
  run->add_option("--from-report", ra.from_report, "Re-run the configuration embedded in a JSON report");

  KernelArgs ka;
  auto* ek = app.add_subcommand("eval-kernel", "Evaluate a correlation kernel on an x-y grid");
  ek->add_option("--family", ka.family, "B, Bvee, C, Cvee, BC or D (C or D for trig and equilibrium)");
  ek->add_option("--n", ka.n, "Particle number when --u is omitted");
  ek->add_option("--mode", ka.mode, "elliptic, trig or equilibrium");
  ek->add_option("--u", ka.u, "Initial configuration")->delimiter(',');
  ek->add_option("--tstar", ka.t_star, "Terminal time t*");
  ek->add_option("--r", ka.r, "Length scale r");
  ek->add_option("--s", ka.s, "First time argument");
  ek->add_option("--t", ka.t, "Second time argument");
  ek->add_option("--grid", ka.grid, "Grid points per axis");
  ek->add_option("--out", ka.out, "Output path (stdout when omitted)");
  ek->add_option("--format", ka.format, "csv or json");

  SimArgs sa;
  auto* sim = app.add_subcommand("simulate", "Simulate a path ensemble");
  sim->add_option("--model", sa.model, "EllipticA..D, TrigA..D, RationalA, RationalC, RationalD");
  sim->add_option("--n", sa.n, "Particle number when --u is omitted");
  sim->add_option("--u", sa.u, "Initial configuration")->delimiter(',');
  sim->add_option("--initial", sa.initial, "fixed or equilibrium");
  sim->add_option("--tstar", sa.t_star, "Terminal time t* (elliptic models)");
  sim->add_option("--r", sa.r, "Length scale r");
  sim->add_option("--beta", sa.beta, "Inverse temperature (type A)");
  sim->add_option("--dt", sa.dt, "Time step");
  sim->add_option("--grading", sa.grading, "Cap steps by grading * (t* - t)");
  sim->add_option("--record", sa.record, "Record times")->delimiter(',')->required();
  sim->add_option("--paths", sa.paths, "Number of paths");
  sim->add_option("--seed", sa.seed, "Random seed");
  sim->add_option("--threads", sa.threads, "Worker threads (0 = all cores)");
  sim->add_option("--out", sa.out, "Output path")->required();
  sim->add_option("--format", sa.format, "bin or csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  try {
    if (*run) return do_run(ra, *run);
    if (*ek) return do_eval_kernel(ka);
    if (*sim) return do_simulate(sa);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::InvalidArgument ? kExitUsage : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
