#include <doctest.h>

#include <chrono>

#include "elliptic_dyson/harness.hpp"
#include "elliptic_dyson/quadrature.hpp"
#include "test_util.hpp"

using namespace edyson;

TEST_CASE("suite and format names") {
  CHECK(parse_suite("all") == Suite::All);
  CHECK(parse_suite("kernel_vs_mc") == Suite::KernelVsMc);
  CHECK(parse_format("CSV") == ReportFormat::Csv);
  CHECK_THROWS_AS(parse_suite("everything"), Error);
  CHECK_THROWS_AS(parse_format("xml"), Error);
  for (Suite s : {Suite::Identities, Suite::MartingaleMc, Suite::Kolmogorov, Suite::IntegralIdentity, Suite::KernelVsMc,
                  Suite::Relaxation, Suite::Pinning, Suite::Fredholm, Suite::All})
    CHECK(parse_suite(to_string(s)) == s);
}

TEST_CASE("run configuration validation") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.ns = {1};
  CHECK_THROWS_AS(c.validate(), Error);
  c = RunConfig{};
  c.tol.theta_rel = -1.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = RunConfig{};
  c.t_star = 0.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = RunConfig{};
  c.families = {FamilyTag::C};
  CHECK(c.family_selected(FamilyTag::C));
  CHECK_FALSE(c.family_selected(FamilyTag::D));
}

TEST_CASE("identity suite passes quickly") {
  RunConfig c;
  const auto start = std::chrono::steady_clock::now();
  const Report rep = run_suite(c);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(rep.all_pass());
  CHECK(secs < 60.0);
  CHECK(rep.criterion(1).size() == 21);
  for (const Record& r : rep.records) CHECK_FALSE(r.anchor.empty());
}

TEST_CASE("reports re-run from their embedded configuration") {
  RunConfig c;
  c.suite = Suite::Relaxation;
  c.families = {FamilyTag::C};
  c.ns = {2};
  c.seed = 7;
  const Report rep = run_suite(c);
  const std::string json = to_json(rep);
  const RunConfig back = config_from_report_json(json);
  CHECK(back.suite == Suite::Relaxation);
  CHECK(back.seed == 7);
  CHECK(to_json(run_suite(back)) == json);
  CHECK(json.find("\"schema\": 1") != std::string::npos);
  CHECK_THROWS_AS(config_from_report_json("{\"schema\": 2}"), Error);
  CHECK_THROWS_AS(config_from_report_json("not json"), Error);

  const std::string csv = to_csv(rep);
  CHECK(csv.rfind("name,anchor,criterion,measured,expected,tolerance,comparison,pass,note\n", 0) == 0);
  CHECK(static_cast<size_t>(std::count(csv.begin(), csv.end(), '\n')) == rep.records.size() + 1);
}

TEST_CASE("file errors carry the I/O kind") {
  try {
    write_text_file("/nonexistent-dir/x/report.json", "{}");
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
  CHECK_THROWS_AS(read_text_file("/nonexistent-dir/report.json"), Error);
}

TEST_CASE("multiple-integral identity") {
  const std::vector<double> u2{0.7, 2.2}, u3{0.5, 1.4, 2.6};
  CHECK(verify_integral_identity(2, 0.2, 1.0, 1.0, u2, 128) < 1e-6);
  CHECK(verify_integral_identity(3, 0.2, 1.0, 1.0, u3, 64) < 1e-4);
  CHECK_THROWS_AS(verify_integral_identity(5, 0.2, 1.0, 1.0, {0.3, 0.9, 1.5, 2.1, 2.7}, 8), Error);
  CHECK_THROWS_AS(verify_integral_identity(2, 1.2, 1.0, 1.0, u2, 16), Error);
}

TEST_CASE("backward Kolmogorov residual") {
  testutil::Rng rng(51);
  for (FamilyTag tag : {FamilyTag::B, FamilyTag::C, FamilyTag::D})
    for (int i = 0; i < 10; ++i) {
      const double s = rng.uniform(0.1, 0.4), t = s + rng.uniform(0.05, 0.2);
      const std::vector<double> x{rng.uniform(0.2, 1.4), rng.uniform(1.7, 2.9)};
      const std::vector<double> y{rng.uniform(0.2, 1.4), rng.uniform(1.7, 2.9)};
      CHECK(kolmogorov_residual(tag, s, x, t, y, 1.0, 1.0, 1e-4) < 1e-3);
    }
  const std::vector<double> x{1.0, 2.0};
  CHECK_THROWS_AS(kolmogorov_residual(FamilyTag::D, 0.2, x, 0.4, x, 1.0, 1.0, 0.1), Error);
  CHECK_THROWS_AS(kolmogorov_residual(FamilyTag::D, 0.2, x, 0.4, x, 1.0, 1.0, 1e-8), Error);
  CHECK_THROWS_AS(kolmogorov_residual(FamilyTag::A, 0.2, x, 0.4, x, 1.0, 1.0, 1e-4), Error);
}

TEST_CASE("transition density concentrates as the time gap closes") {
  const std::vector<double> x{1.0, 2.0};
  const double s = 0.3, t = s + 1e-3;
  const QuadratureRule q1 = gauss_legendre(64, x[0] - 0.3, x[0] + 0.3);
  const QuadratureRule q2 = gauss_legendre(64, x[1] - 0.3, x[1] + 0.3);
  double m = 0.0;
  for (size_t i = 0; i < q1.nodes.size(); ++i)
    for (size_t k = 0; k < q2.nodes.size(); ++k)
      m += q1.weights[i] * q2.weights[k] * transition_density(FamilyTag::C, s, x, t, {q1.nodes[i], q2.nodes[k]}, 1.0, 1.0);
  CHECK(std::abs(m - 1.0) < 1e-2);
}
