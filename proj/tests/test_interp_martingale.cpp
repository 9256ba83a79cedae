#include <doctest.h>

#include "elliptic_dyson/interp_martingale.hpp"
#include "test_util.hpp"

using namespace edyson;
using testutil::rel_err;

namespace {

constexpr FamilyTag kNonA[] = {FamilyTag::B, FamilyTag::Bvee, FamilyTag::C, FamilyTag::Cvee, FamilyTag::BC, FamilyTag::D};

/// Cramer's rule: column j of [f_k(u_l)] replaced by f_k(z).
cplx phi_cramer(const Family& fam, const Config& u, int j, cplx z, const ModularParam& tau) {
  const int n = fam.n();
  Eigen::MatrixXcd f(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) f(k, l) = basis_f(fam, k + 1, u[static_cast<size_t>(l)], tau, 1.0);
  Eigen::MatrixXcd g = f;
  for (int k = 0; k < n; ++k) g(k, j - 1) = basis_f(fam, k + 1, z, tau, 1.0);
  return g.determinant() / f.determinant();
}

}  // namespace

TEST_CASE("interpolation functions are Lagrange functions and match the determinant ratio") {
  const ModularParam tau = ModularParam::imaginary(0.8);
  testutil::Rng rng(31);
  for (FamilyTag tag : kNonA)
    for (int n : {2, 3}) {
      const Family fam(tag, n);
      const Config u = random_config(fam, 1.0, 9, static_cast<uint64_t>(n));
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k)
          CHECK(std::abs(phi_interp(fam, u, j, u[static_cast<size_t>(k - 1)], tau, 1.0) - (j == k ? 1.0 : 0.0)) < 1e-10);
      for (int s = 0; s < 5; ++s) {
        const cplx z(rng.uniform(0.0, kPi), rng.uniform(-0.5, 0.5));
        for (int j = 1; j <= n; ++j) {
          const cplx ref = phi_cramer(fam, u, j, z, tau);
          CHECK(std::abs(phi_interp(fam, u, j, z, tau, 1.0) - ref) < 1e-9 * std::max(1.0, std::abs(ref)));
        }
      }
    }
}

TEST_CASE("expansion coefficients") {
  const ModularParam tau = ModularParam::imaginary(1.3);
  const Family d2(FamilyTag::D, 2);
  const Config u(d2, {0.6, 2.1}, 1.0);
  const InterpCoeffs c = phi_coeffs(d2, u, tau, 1.0);
  const cplx f11 = basis_f(d2, 1, u[0], tau, 1.0), f12 = basis_f(d2, 1, u[1], tau, 1.0);
  const cplx f21 = basis_f(d2, 2, u[0], tau, 1.0), f22 = basis_f(d2, 2, u[1], tau, 1.0);
  const cplx det = f11 * f22 - f12 * f21;
  // phi(j, k) is the coefficient of f_k in Phi_j
  CHECK(std::abs(c.phi(1, 1) - f22 / det) < 1e-12 * std::abs(f22 / det));
  CHECK(std::abs(c.phi(1, 2) + f12 / det) < 1e-12 * std::abs(f12 / det));
  CHECK(std::abs(c.phi(2, 1) + f21 / det) < 1e-12 * std::abs(f21 / det));
  CHECK(std::abs(c.phi(2, 2) - f11 / det) < 1e-12 * std::abs(f11 / det));

  testutil::Rng rng(32);
  for (FamilyTag tag : kNonA) {
    const Family fam(tag, 3);
    const Config v = random_config(fam, 1.0, 10, 3);
    const InterpCoeffs cc = phi_coeffs(fam, v, tau, 1.0);
    for (int j = 1; j <= 3; ++j)
      for (int k = 1; k <= 3; ++k) {
        cplx s = 0.0;
        for (int l = 1; l <= 3; ++l) s += basis_f(fam, j, v[static_cast<size_t>(l - 1)], tau, 1.0) * cc.phi(l, k);
        CHECK(std::abs(s - (j == k ? 1.0 : 0.0)) < 1e-9);
      }
    for (int s = 0; s < 5; ++s) {
      const cplx z(rng.uniform(0.0, kPi), rng.uniform(-0.3, 0.3));
      for (int j = 1; j <= 3; ++j) {
        const cplx ref = phi_interp(fam, v, j, z, tau, 1.0);
        CHECK(std::abs(cc.expand(j, z) - ref) < 1e-9 * std::max(1.0, std::abs(ref)));
      }
    }
  }
}

TEST_CASE("time-evolved basis functions") {
  const ProcessClock clock(1.0, 1.0);
  const testutil::Hermite gh(64);
  for (FamilyTag tag : {FamilyTag::B, FamilyTag::C, FamilyTag::D}) {
    const Family fam(tag, 3);
    const ModularParam tau0(clock.tau_at(fam.cal_n(), 0.0));
    for (int j = 1; j <= 3; ++j) {
      CHECK(rel_err(f_hat(fam, j, 0.0, 0.8, clock), basis_f(fam, j, 0.8, tau0, 1.0)) < 1e-14);
      for (double t : {0.1, 0.4}) {
        for (double x : {0.4, 1.7}) {
          const cplx ref = gh.expect([&](double z) { return basis_f(fam, j, cplx(x, std::sqrt(t) * z), tau0, 1.0); });
          const cplx got = f_hat(fam, j, t, x, clock);
          CHECK(std::abs(got - ref) < 1e-8 * std::max(1.0, std::abs(ref)));
        }
      }
    }
  }
  CHECK_THROWS_AS(f_hat(Family(FamilyTag::C, 2), 1, 1.0, 0.5, clock), Error);
}

TEST_CASE("time-evolved basis functions are space-time harmonic under Brownian increments") {
  const ProcessClock clock(1.0, 1.0);
  const Family fam(FamilyTag::C, 2);
  const double t1 = 0.1, t2 = 0.3, x = 1.1;
  testutil::Rng rng(33);
  const int m = 100000;
  double s = 0.0, ss = 0.0;
  for (int i = 0; i < m; ++i) {
    const double v = f_hat(fam, 2, t2, x + std::sqrt(t2 - t1) * rng.normal(), clock).imag();
    s += v;
    ss += v * v;
  }
  const double mean = s / m, se = std::sqrt((ss / m - mean * mean) / (m - 1));
  CHECK(std::abs(mean - f_hat(fam, 2, t1, x, clock).imag()) < 4.0 * se);
}

TEST_CASE("martingale functions") {
  const ProcessClock clock(1.0, 1.0);
  const testutil::Hermite gh(64);
  const Family c2(FamilyTag::C, 2);
  const Config u(c2, {0.9, 2.2}, 1.0);
  const MartingaleCtx ctx(c2, clock, u);
  const ModularParam tau0(clock.tau_at(c2.cal_n(), 0.0));
  for (int j = 1; j <= 2; ++j) {
    for (int k = 1; k <= 2; ++k) CHECK(std::abs(ctx.m_mart(j, 0.0, u[static_cast<size_t>(k - 1)]) - (j == k ? 1.0 : 0.0)) < 1e-10);
    for (double t : {0.1, 0.3})
      for (double y : {0.5, 1.6, 2.8}) {
        const cplx ref = gh.expect([&](double z) { return phi_interp(c2, u, j, cplx(y, std::sqrt(t) * z), tau0, 1.0); });
        const cplx got = ctx.m_mart(j, t, y);
        CHECK(std::abs(got - ref) < 1e-7 * std::max(1.0, std::abs(ref)));
        CHECK(std::abs(got.imag()) < 1e-10 * std::max(1.0, std::abs(got)));
      }
  }
}

TEST_CASE("determinantal martingale function") {
  const ProcessClock clock(1.0, 1.0);
  for (FamilyTag tag : {FamilyTag::B, FamilyTag::C, FamilyTag::D}) {
    const Family fam(tag, 3);
    const Config u = random_config(fam, 1.0, 12, 1);
    const MartingaleCtx ctx(fam, clock, u);
    CHECK(ctx.d_mart(0.0, u.values()) == doctest::Approx(1.0).epsilon(1e-12));
    const std::vector<double> coincident{0.5, 0.5, 2.0};
    CHECK(std::abs(ctx.d_mart(0.2, coincident)) < 1e-12);
  }
  const Family b3(FamilyTag::B, 3);
  const MartingaleCtx ctx(b3, clock, random_config(b3, 1.0, 12, 2));
  testutil::Rng rng(34);
  for (int i = 0; i < 20; ++i) {
    const double t = rng.uniform(0.0, 0.8);
    std::vector<double> x{rng.uniform(0.05, 1.0), rng.uniform(1.05, 2.0), rng.uniform(2.05, 3.1)};
    const double a = ctx.d_mart(t, x);
    const double b = ctx.d_mart_det(t, x);
    CHECK(std::abs(a - b) < 1e-8 * std::max(std::abs(b), 1e-8));
  }
}

TEST_CASE("tower property of the determinantal martingale by Gauss-Hermite") {
  const ProcessClock clock(1.0, 1.0);
  const testutil::Hermite gh(48);
  for (FamilyTag tag : {FamilyTag::C, FamilyTag::D}) {
    const Family fam(tag, 2);
    const MartingaleCtx ctx(fam, clock, Config(fam, {0.8, 2.0}, 1.0));
    const double t1 = 0.15, t2 = 0.35, sd = std::sqrt(t2 - t1);
    for (const auto& b : {std::vector<double>{0.5, 1.5}, std::vector<double>{1.2, 2.6}, std::vector<double>{0.3, 0.9}}) {
      double s = 0.0;
      for (size_t i = 0; i < gh.nodes.size(); ++i)
        for (size_t k = 0; k < gh.nodes.size(); ++k) {
          const std::vector<double> x{b[0] + sd * gh.nodes[i], b[1] + sd * gh.nodes[k]};
          s += gh.weights[i] * gh.weights[k] * ctx.d_mart(t2, x);
        }
      const double ref = ctx.d_mart(t1, b);
      CHECK(std::abs(s - ref) < 1e-8 * std::max(1.0, std::abs(ref)));
    }
  }
}
