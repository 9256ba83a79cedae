#include <doctest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "elliptic_dyson/special_fn.hpp"
#include "test_util.hpp"

using namespace edyson;
using testutil::rel_err;
using big = boost::multiprecision::cpp_dec_float_50;

namespace {

const cplx I(0.0, 1.0);

cplx log_theta1_dd(cplx v, cplx tau) {
  const ThetaJet j = theta_jet(ThetaKind::Theta1, v, tau);
  const cplx d = j.d1 / j.d0;
  return j.d2 / j.d0 - d * d;
}

}  // namespace

TEST_CASE("modular parameter requires a positive imaginary part") {
  CHECK_THROWS_AS(ModularParam(cplx(0.3, 0.0)), Error);
  CHECK_THROWS_AS(ModularParam(cplx(0.0, -1.0)), Error);
  const ModularParam m(cplx(0.1, 2.0));
  CHECK(std::abs(m.nome()) == doctest::Approx(std::exp(-2.0 * kPi)));
}

TEST_CASE("theta1 vanishes at the origin and has the small-nome asymptotics") {
  CHECK(std::abs(theta(ThetaKind::Theta1, 0.0, ModularParam::imaginary(1.0))) < 1e-15);
  const cplx v = theta(ThetaKind::Theta1, 0.3, ModularParam::imaginary(10.0));
  const double approx = 2.0 * std::exp(-10.0 * kPi / 4.0) * std::sin(0.3 * kPi);
  CHECK(rel_err(v, approx) < 1e-6);
}

TEST_CASE("theta3 at tau = i against a 50-digit direct series") {
  big sum = 0;
  const big pi = boost::math::constants::pi<big>();
  for (int n = -200; n <= 200; ++n) sum += exp(-pi * n * n);
  const double oracle = sum.convert_to<double>();
  CHECK(rel_err(theta(ThetaKind::Theta3, 0.0, ModularParam::imaginary(1.0)), oracle) < 1e-12);
}

TEST_CASE("theta1 derivatives") {
  CHECK(std::abs(theta1_dv(0.5, ModularParam::imaginary(1.0))) < 1e-14);
  const ModularParam tau = ModularParam::imaginary(0.8);
  const double h = 1e-5;
  const cplx fd = (theta(ThetaKind::Theta1, 0.2 + h, tau) - theta(ThetaKind::Theta1, 0.2 - h, tau)) / (2.0 * h);
  CHECK(rel_err(theta1_dv(0.2, tau), fd) < 1e-8);
  const cplx ht = 1e-5;
  const cplx dtau = (theta(ThetaKind::Theta1, 0.2, ModularParam(tau.tau() + ht)) -
                     theta(ThetaKind::Theta1, 0.2, ModularParam(tau.tau() - ht))) /
                    (2.0 * ht);
  CHECK(rel_err(theta1_dv2(0.2, tau), 4.0 * kPi * I * dtau) < 1e-7);
}

TEST_CASE("theta quasi-periodicity on random samples") {
  testutil::Rng rng(7);
  for (int k = 0; k < 100; ++k) {
    const cplx v(rng.uniform(-1, 1), rng.uniform(-0.5, 0.5));
    const cplx tau(rng.uniform(-0.5, 0.5), rng.uniform(0.3, 3.0));
    const ModularParam m(tau);
    const cplx t = theta(ThetaKind::Theta1, v, m);
    CHECK(rel_err(theta(ThetaKind::Theta1, v + 1.0, m), -t) < 1e-10);
    CHECK(rel_err(theta(ThetaKind::Theta1, v + tau, m), -std::exp(-I * kPi * (2.0 * v + tau)) * t) < 1e-10);
  }
}

TEST_CASE("theta cross-kind shifts and positivity") {
  testutil::Rng rng(8);
  for (int k = 0; k < 30; ++k) {
    const double v = rng.uniform(-1, 1);
    const ModularParam m = ModularParam::imaginary(rng.uniform(0.2, 3.0));
    const cplx tau = m.tau();
    CHECK(rel_err(theta(ThetaKind::Theta2, v, m), theta(ThetaKind::Theta1, v + 0.5, m)) < 1e-12);
    const cplx t3 = std::exp(I * kPi * (v + tau / 4.0)) * theta(ThetaKind::Theta1, v + (1.0 + tau) / 2.0, m);
    CHECK(rel_err(theta(ThetaKind::Theta3, v, m), t3) < 1e-12);
    const cplx t0 = -I * std::exp(I * kPi * (v + tau / 4.0)) * theta(ThetaKind::Theta1, v + tau / 2.0, m);
    CHECK(rel_err(theta(ThetaKind::Theta0, v, m), t0) < 1e-12);
  }
  for (double y : {0.05, 0.3, 1.0, 4.0})
    for (int i = 1; i < 40; ++i) {
      const double x = i / 40.0;
      CHECK(theta(ThetaKind::Theta1, x, ModularParam::imaginary(y)).real() > 0.0);
      CHECK(theta(ThetaKind::Theta0, 3.0 * x - 1.0, ModularParam::imaginary(y)).real() > 0.0);
    }
}

TEST_CASE("theta series reaches the truncation cap with an error") {
  SeriesOptions opt;
  opt.max_terms = 2;
  opt.switch_im_tau = 0.0;
  CHECK_THROWS_AS(theta_scaled(ThetaKind::Theta3, 0.1, cplx(0.0, 0.01), opt), Error);
}

TEST_CASE("A-function parity, pole and trigonometric limit") {
  testutil::Rng rng(9);
  for (int k = 0; k < 20; ++k) {
    const double cal = rng.uniform(1, 8), tr = rng.uniform(0.01, 2), x = rng.uniform(0.1, 6);
    CHECK(a_func(cal, tr, -x, 1.0) == doctest::Approx(-a_func(cal, tr, x, 1.0)).epsilon(1e-12));
  }
  CHECK(std::abs(a_func(3, 0.5, 1e-6, 1.0) * 1e-6 - 1.0) < 1e-4);
  CHECK(std::abs(a_func(3, 1e6, 0.7, 1.0) - 0.5 / std::tan(0.35)) < 1e-8);
  CHECK_THROWS_AS(a_func(3, 0.5, 0.0, 1.0), Error);
  CHECK_THROWS_AS(a_func(3, 0.5, 2.0 * kPi, 1.0), Error);
}

TEST_CASE("fast A-function evaluator agrees with the theta quotient across both series regimes") {
  for (double cal : {1.0, 2.0, 3.0, 6.0})
    for (int it = 0; it <= 40; ++it) {
      const double tr = std::pow(10.0, -3.0 + 4.0 * it / 40.0);
      const AFunction af(cal, tr, 1.0);
      for (int ix = 1; ix < 60; ++ix) {
        const double x = -2.0 * kPi + 4.0 * kPi * ix / 60.0;
        if (std::abs(std::remainder(x, 2.0 * kPi)) < 1e-3) continue;
        const double ref = a_func(cal, tr, x, 1.0);
        const double got = af(x);
        CHECK(std::isfinite(got));
        CHECK(std::abs(got - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
      }
    }
}

TEST_CASE("Dedekind eta") {
  const cplx tau(0.1, 0.7);
  CHECK(rel_err(dedekind_eta(ModularParam(tau)), std::exp(I * kPi * tau / 12.0 + log_q0(tau))) < 1e-14);

  big prod = 1;
  const big pi = boost::math::constants::pi<big>();
  for (int n = 1; n < 40; ++n) prod *= 1 - exp(-2 * pi * n);
  const double oracle = (exp(-pi / 12) * prod).convert_to<double>();
  CHECK(rel_err(dedekind_eta(ModularParam::imaginary(1.0)), oracle) < 1e-12);

  // log-derivative along the B schedule
  const int n = 3;
  const double cal = 2 * n - 1, ts = 1.0, r = 1.0, t = 0.4, h = 1e-5;
  auto log_eta = [&](double s) { return log_dedekind_eta(cplx(0.0, cal * (ts - s) / (2.0 * kPi * r * r))).real(); };
  const double fd = (log_eta(t + h) - log_eta(t - h)) / (2.0 * h);
  CHECK(std::abs(fd - cal * eta1(cal, ts - t, r) / (2.0 * kPi * r)) < 1e-6 * std::max(1.0, std::abs(fd)));
}

TEST_CASE("quasi-period constant") {
  CHECK(eta1(2.0, 1e4, 1.0) == doctest::Approx(kPi / 12.0).epsilon(1e-14));
  const double t_rem = 2.0 * std::log(2.0);
  long double s = 0.0L;
  for (int n = 1; n <= 10000; ++n) {
    const long double q2n = std::pow(0.25L, n);
    s += n * q2n / (1.0L - q2n);
  }
  const double oracle = static_cast<double>(kPi * (1.0L / 12.0L - 2.0L * s));
  CHECK(std::abs(eta1(1.0, t_rem, 1.0) - oracle) < 1e-13);
}

TEST_CASE("Weierstrass functions") {
  const double w1 = kPi;
  const cplx w3(0.0, 0.9);
  const WeierstrassLattice lat(w1, w3);
  testutil::Rng rng(11);
  for (int k = 0; k < 20; ++k) {
    const cplx z(rng.uniform(0.1, 2.5), rng.uniform(-0.8, 0.8));
    const cplx u(rng.uniform(0.1, 2.5), rng.uniform(-0.8, 0.8));
    CHECK(rel_err(lat.p(-z), lat.p(z)) < 1e-12);
    CHECK(rel_err(lat.zeta(-z), -lat.zeta(z)) < 1e-12);
    const cplx lhs = lat.zeta(z + u) - lat.zeta(z) - lat.zeta(u);
    CHECK(std::abs(lhs * lhs - (lat.p(z + u) + lat.p(z) + lat.p(u))) < 1e-8 * std::max(1.0, std::abs(lhs * lhs)));
    // differences of p against the theta representation
    const cplx tau = w3 / w1;
    const cplx oracle = -(log_theta1_dd(z / (2.0 * w1), tau) - log_theta1_dd(u / (2.0 * w1), tau)) / (4.0 * w1 * w1);
    CHECK(std::abs(lat.p(z) - lat.p(u) - oracle) < 1e-9 * std::max(1.0, std::abs(oracle)));
  }
  // Legendre relation
  CHECK(std::abs(lat.eta_1() * w3 - lat.eta_3() * w1 - I * kPi / 2.0) < 1e-10);
  // Laurent expansion at the origin
  const cplx z0(1e-3, 5e-4);
  CHECK(std::abs(lat.p(z0) - 1.0 / (z0 * z0)) < 1e-5);
}

TEST_CASE("A-function from the Weierstrass zeta function") {
  const double cal = 4.0, tr = 0.35, r = 1.0;
  const WeierstrassLattice lat(kPi * r, cplx(0.0, cal * tr / (2.0 * r)));
  const double e1 = eta1(cal, tr, r);
  for (double x : {0.3, 1.1, 2.0, 2.9}) {
    CHECK(std::abs(a_func(cal, tr, x, r) - (lat.zeta(x).real() - e1 * x / (kPi * r))) < 1e-8);
  }
}
