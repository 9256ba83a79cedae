#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "elliptic_dyson/harness.hpp"

namespace {

using namespace edyson;

struct Criterion {
  int id;
  Suite suite;
  double budget_s;
  const char* title;
};

constexpr Criterion kCriteria[] = {
    {1, Suite::Identities, 10, "determinant factorization"},
    {2, Suite::Identities, 5, "theta identities"},
    {3, Suite::Identities, 5, "interpolation and biorthogonality"},
    {4, Suite::MartingaleMc, 120, "martingale normalization"},
    {5, Suite::Kolmogorov, 60, "backward Kolmogorov residual"},
    {6, Suite::IntegralIdentity, 180, "multiple-integral identity"},
    {7, Suite::KernelVsMc, 300, "kernel versus simulated density"},
    {8, Suite::Relaxation, 120, "equilibrium structure and relaxation"},
    {9, Suite::Pinning, 180, "pinned endpoints"},
    {10, Suite::Fredholm, 60, "Fredholm gauge invariance and range"},
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool run_criterion(const Criterion& c, std::map<Suite, std::pair<Report, double>>& cache) {
  auto it = cache.find(c.suite);
  if (it == cache.end()) {
    RunConfig cfg;
    cfg.suite = c.suite;
    const auto t0 = std::chrono::steady_clock::now();
    Report rep = run_suite(cfg);
    it = cache.emplace(c.suite, std::make_pair(std::move(rep), seconds_since(t0))).first;
  }
  const Report& rep = it->second.first;
  const double secs = it->second.second;
  const auto recs = rep.criterion(c.id);
  size_t passed = 0;
  for (const Record* r : recs) {
    if (r->pass) {
      ++passed;
    } else {
      std::printf("  failed %s: measured %.6g, %s %.6g%s%s\n", r->name.c_str(), r->measured, r->comparison.c_str(), r->tolerance,
                  r->note.empty() ? "" : " ; ", r->note.c_str());
    }
  }
  const bool in_budget = secs < c.budget_s;
  const bool ok = !recs.empty() && passed == recs.size() && in_budget;
  std::printf("criterion %d %s: %s (%zu/%zu checks, suite %s %.1f s, budget %.0f s)\n", c.id, ok ? "PASS" : "FAIL", c.title,
              passed, recs.size(), to_string(c.suite), secs, c.budget_s);
  return ok;
}

bool run_determinism() {
  RunConfig cfg;
  cfg.suite = Suite::All;
  const auto t0 = std::chrono::steady_clock::now();
  cfg.threads = 1;
  const std::string a = to_json(run_suite(cfg));
  const std::string b = to_json(run_suite(cfg));
  cfg.threads = 8;
  const std::string c = to_json(run_suite(cfg));
  const bool ok = a == b && a == c;
  if (a != b) std::printf("  two single-thread runs differ\n");
  if (a != c) std::printf("  1-thread and 8-thread runs differ\n");
  std::printf("criterion 11 %s: byte-identical reports across runs and worker counts (%zu bytes, %.1f s)\n", ok ? "PASS" : "FAIL",
              a.size(), seconds_since(t0));
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance gate"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-11); all when omitted")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  std::map<Suite, std::pair<Report, double>> cache;
  bool all_ok = true;
  for (const Criterion& c : kCriteria)
    if (only == 0 || only == c.id) all_ok = run_criterion(c, cache) && all_ok;
  if (only == 0 || only == 11) all_ok = run_determinism() && all_ok;
  std::cout.flush();
  return all_ok ? 0 : 1;
}
