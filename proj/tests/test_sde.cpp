#include <doctest.h>

#include <cstdio>
#include <cstring>

#include "elliptic_dyson/harness.hpp"
#include "elliptic_dyson/kernels.hpp"
#include "elliptic_dyson/quadrature.hpp"
#include "elliptic_dyson/sde.hpp"
#include "test_util.hpp"

using namespace edyson;

namespace {

SdeSpec small_spec(Model m, int n, int paths) {
  SdeSpec s;
  s.params = ModelParams{m, 2.0, 1.0, 1.0};
  s.u = checks::spread_config(n, 1.0);
  s.dt = 1e-3;
  s.record_times = {0.1, 0.25};
  s.n_paths = paths;
  s.seed = 99;
  return s;
}

}  // namespace

TEST_CASE("drift symmetries and limits") {
  const ModelParams d{Model::EllipticD, 2.0, 1.0, 1.0};
  const std::vector<double> x{0.4, 1.3, 2.5};
  const std::vector<double> mirrored{kPi - x[2], kPi - x[1], kPi - x[0]};
  const auto a = drift(d, 0.3, x), b = drift(d, 0.3, mirrored);
  for (size_t j = 0; j < 3; ++j) CHECK(b[j] == doctest::Approx(-a[2 - j]).epsilon(1e-12));

  const std::vector<double> one{0.9};
  CHECK(drift(ModelParams{Model::TrigC, 2.0, 1.0}, 0.0, one)[0] == doctest::Approx(1.0 / std::tan(0.9)).epsilon(1e-14));

  const std::pair<Model, Model> pairs[] = {{Model::EllipticA, Model::TrigA},
                                           {Model::EllipticB, Model::TrigB},
                                           {Model::EllipticC, Model::TrigC},
                                           {Model::EllipticD, Model::TrigD}};
  for (const auto& [ell, trig] : pairs) {
    const auto e = drift(ModelParams{ell, 2.0, 1.0, 1e6}, 0.0, x);
    const auto t = drift(ModelParams{trig, 2.0, 1.0}, 0.0, x);
    for (size_t j = 0; j < 3; ++j) CHECK(std::abs(e[j] - t[j]) < 1e-6);
  }
  CHECK_THROWS_AS(drift(d, 0.3, std::vector<double>{0.5, 0.5}), Error);
  CHECK(parse_model("ellipticd") == Model::EllipticD);
  CHECK_THROWS_AS(parse_model("EllipticE"), Error);
}

TEST_CASE("pinning targets") {
  const auto b = pinning_target(Model::EllipticB, 3, 1.0);
  const auto c = pinning_target(Model::EllipticC, 3, 1.0);
  const auto d = pinning_target(Model::EllipticD, 3, 1.0);
  for (int j = 1; j <= 3; ++j) {
    CHECK(b[static_cast<size_t>(j - 1)] == doctest::Approx((2 * j - 1) * kPi / 5.0));
    CHECK(c[static_cast<size_t>(j - 1)] == doctest::Approx(j * kPi / 4.0));
    CHECK(d[static_cast<size_t>(j - 1)] == doctest::Approx((j - 1) * kPi / 2.0));
  }
}

TEST_CASE("reflecting Brownian motion on the half-line has the folded normal law") {
  SdeSpec s;
  s.params = ModelParams{Model::RationalD, 2.0, 1.0};
  s.u = {0.5};
  s.dt = 1e-2;
  s.record_times = {1.0};
  s.n_paths = 100000;
  s.seed = 3;
  const PathEnsemble ens = simulate(s);
  double sum = 0.0, sum2 = 0.0;
  for (size_t p = 0; p < ens.n_paths(); ++p) {
    const double x = ens.at(p, 0, 0);
    CHECK_FALSE(x < 0.0);
    sum += x;
    sum2 += x * x;
  }
  const double n = ens.n_paths(), mean = sum / n, se = std::sqrt((sum2 / n - mean * mean) / (n - 1));
  const double u = 0.5;
  const double folded = std::sqrt(2.0 / kPi) * std::exp(-u * u / 2.0) + u * std::erf(u / std::sqrt(2.0));
  CHECK(std::abs(mean - folded) < 4.0 * se);
}

TEST_CASE("simulation is deterministic and independent of the worker count") {
  SdeSpec s = small_spec(Model::EllipticC, 3, 400);
  s.threads = 1;
  const PathEnsemble a = simulate(s);
  const PathEnsemble b = simulate(s);
  s.threads = 3;
  const PathEnsemble c = simulate(s);
  REQUIRE(a.positions.size() == c.positions.size());
  CHECK(std::memcmp(a.positions.data(), b.positions.data(), a.positions.size() * sizeof(double)) == 0);
  CHECK(std::memcmp(a.positions.data(), c.positions.data(), a.positions.size() * sizeof(double)) == 0);
  CHECK(a.flagged == c.flagged);
  CHECK(a.events.size() == c.events.size());
  CHECK(spec_hash(a.spec) == spec_hash(b.spec));
}

TEST_CASE("paths stay ordered and inside the interval") {
  for (Model m : {Model::EllipticB, Model::EllipticC, Model::EllipticD, Model::TrigC, Model::TrigD}) {
    const PathEnsemble e = simulate(small_spec(m, 3, 300));
    for (size_t p = 0; p < e.n_paths(); ++p) {
      if (e.flagged[p]) continue;
      for (size_t i = 0; i < e.times.size(); ++i) {
        CHECK(e.at(p, i, 0) >= 0.0);
        CHECK(e.at(p, i, 2) <= kPi);
        CHECK(e.at(p, i, 0) < e.at(p, i, 1));
        CHECK(e.at(p, i, 1) < e.at(p, i, 2));
      }
    }
  }
}

TEST_CASE("flagged paths are rare at the default step") {
  for (Model m : {Model::EllipticB, Model::EllipticC, Model::EllipticD}) {
    SdeSpec s;
    s.params = ModelParams{m, 2.0, 1.0, 1.0};
    s.u = checks::spread_config(4, 1.0);
    s.record_times = {0.3};
    s.n_paths = 1000;
    s.seed = 12;
    const PathEnsemble e = simulate(s);
    CHECK(static_cast<double>(e.flagged_count()) / e.n_paths() < 1e-3);
  }
}

TEST_CASE("histogram normalization") {
  const PathEnsemble e = simulate(small_spec(Model::EllipticD, 3, 500));
  const Histogram h = empirical_density(e, 0.25, 30);
  double mass = 0.0;
  for (double d : h.density) mass += d * h.bin_width();
  CHECK(mass == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS(empirical_density(e, 0.2, 30), Error);
}

TEST_CASE("trigonometric D model started in equilibrium stays in equilibrium") {
  SdeSpec s;
  s.params = ModelParams{Model::TrigD, 2.0, 1.0};
  s.u = {0.5, 2.0};
  s.initial = InitialLaw::Equilibrium;
  s.dt = 1e-3;
  s.record_times = {0.0, 0.2};
  s.n_paths = 100000;
  s.seed = 21;
  const PathEnsemble e = simulate(s);
  for (double t : {0.0, 0.2}) {
    const Histogram h = empirical_density(e, t, 20, 0.0, kPi);
    int agree = 0;
    for (size_t b = 0; b < 20; ++b) {
      const double lo = h.lo + b * h.bin_width();
      const QuadratureRule q = gauss_legendre(16, lo, lo + h.bin_width());
      double avg = 0.0;
      for (size_t i = 0; i < q.nodes.size(); ++i) avg += q.weights[i] * equilibrium_density(FamilyTag::D, q.nodes[i], 2, 1.0);
      avg /= h.bin_width();
      if (std::abs(h.density[b] - avg) <= 4.0 * h.std_error[b]) ++agree;
    }
    CHECK(agree >= (t == 0.0 ? 20 : 18));
  }
}

TEST_CASE("binary round trip") {
  const PathEnsemble e = simulate(small_spec(Model::EllipticB, 2, 50));
  const std::string path = "edyson_roundtrip.bin";
  write_binary(e, path);
  const PathEnsemble f = read_binary(path);
  std::remove(path.c_str());
  CHECK(f.n == e.n);
  CHECK(f.times == e.times);
  CHECK(f.positions == e.positions);
  CHECK(f.n_paths() == e.n_paths());
  CHECK_THROWS_AS(read_binary("does/not/exist.bin"), Error);
}

TEST_CASE("simulation input guards") {
  SdeSpec s = small_spec(Model::EllipticD, 2, 10);
  s.dt = 0.1;
  CHECK_THROWS_AS(simulate(s), Error);
  s = small_spec(Model::EllipticD, 2, 10);
  s.record_times = {1.0};
  CHECK_THROWS_AS(simulate(s), Error);
  s = small_spec(Model::EllipticC, 2, 10);
  s.u = {2.0, 1.0};
  CHECK_THROWS_AS(simulate(s), Error);
  s = small_spec(Model::EllipticC, 2, 10);
  s.initial = InitialLaw::Equilibrium;
  CHECK_THROWS_AS(simulate(s), Error);
}

TEST_CASE("graded grid lands on the record times") {
  SdeSpec s = small_spec(Model::EllipticC, 2, 1);
  s.grading = 0.1;
  s.record_times = {0.9, 0.99, 0.999};
  const auto g = build_time_grid(s);
  for (double t : s.record_times) CHECK(std::find(g.begin(), g.end(), t) != g.end());
  for (size_t i = 1; i < g.size(); ++i) {
    CHECK(g[i] > g[i - 1]);
    CHECK(g[i] - g[i - 1] <= 1.25 * std::min(1e-3, 0.1 * (1.0 - g[i - 1])) + 1e-15);
  }
}
