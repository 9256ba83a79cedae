#include <doctest.h>

#include "elliptic_dyson/root_systems.hpp"
#include "test_util.hpp"

using namespace edyson;
using testutil::rel_err;

namespace {

constexpr FamilyTag kAll[] = {FamilyTag::A, FamilyTag::B, FamilyTag::Bvee, FamilyTag::C,
                              FamilyTag::Cvee, FamilyTag::BC, FamilyTag::D};

cplx f(const Family& fam, int j, double z, const ModularParam& tau) { return basis_f(fam, j, z, tau, 1.0); }

}  // namespace

TEST_CASE("family constants") {
  for (int n = 2; n <= 6; ++n) {
    CHECK(Family(FamilyTag::A, n).cal_n() == n);
    CHECK(Family(FamilyTag::B, n).cal_n() == 2 * n - 1);
    CHECK(Family(FamilyTag::Bvee, n).cal_n() == 2 * n);
    CHECK(Family(FamilyTag::Cvee, n).cal_n() == 2 * n);
    CHECK(Family(FamilyTag::C, n).cal_n() == 2 * (n + 1));
    CHECK(Family(FamilyTag::BC, n).cal_n() == 2 * n + 1);
    CHECK(Family(FamilyTag::D, n).cal_n() == 2 * (n - 1));
    for (int j = 1; j <= n; ++j) {
      CHECK(Family(FamilyTag::A, n).j_value(j) == j - 1);
      CHECK(Family(FamilyTag::D, n).j_value(j) == j - 1);
      CHECK(Family(FamilyTag::C, n).j_value(j) == j);
      CHECK(Family(FamilyTag::BC, n).j_value(j) == j);
      CHECK(Family(FamilyTag::Cvee, n).j_value(j) == j - 0.5);
    }
  }
  CHECK(Family(FamilyTag::B, 3).c1() == 1);
  CHECK(Family(FamilyTag::Cvee, 3).c1() == 1);
  CHECK(Family(FamilyTag::Bvee, 3).c1() == 2);
  CHECK(Family(FamilyTag::C, 3).c1() == 2);
  CHECK(Family(FamilyTag::B, 3).c2() == 1);
  CHECK(Family(FamilyTag::C, 3).c2() == 1);
  CHECK(Family(FamilyTag::Bvee, 3).c2() == 2);
  CHECK(Family(FamilyTag::Cvee, 3).c2() == 0.5);
  CHECK(Family(FamilyTag::A, 4).kappa(1.0) == doctest::Approx(3.0 * kPi));
  CHECK(Family(FamilyTag::A, 5).kappa(1.0) == doctest::Approx(3.0 * kPi));
  CHECK_THROWS_AS(Family(FamilyTag::C, 1), Error);
  CHECK_THROWS_AS(parse_family("E8"), Error);
  CHECK(parse_family("bvee") == FamilyTag::Bvee);
}

TEST_CASE("configurations are ordered and inside the alcove") {
  const Family fam(FamilyTag::C, 3);
  CHECK_THROWS_AS(Config(fam, {0.5, 0.4, 1.0}, 1.0), Error);
  CHECK_THROWS_AS(Config(fam, {0.0, 0.4, 1.0}, 1.0), Error);
  CHECK_THROWS_AS(Config(fam, {0.2, 0.4, 3.2}, 1.0), Error);
  CHECK_NOTHROW(Config(Family(FamilyTag::A, 3), {-1.0, 0.4, 5.0}, 1.0));
  for (uint64_t i = 0; i < 20; ++i) {
    const auto u = random_config(fam, 1.0, 3, i).values();
    CHECK(u.front() >= 0.02 * kPi);
    CHECK(u.back() <= kPi - 0.02 * kPi);
    for (size_t k = 1; k < u.size(); ++k) CHECK(u[k] - u[k - 1] >= 0.02 * kPi - 1e-12);
  }
}

TEST_CASE("basis function symmetries") {
  const ModularParam tau = ModularParam::imaginary(0.7);
  testutil::Rng rng(21);
  for (int k = 0; k < 10; ++k) {
    const cplx z(rng.uniform(0.1, 3.0), rng.uniform(-0.3, 0.3));
    const double x = rng.uniform(0.1, 3.0);
    for (int j = 1; j <= 3; ++j) {
      const Family d(FamilyTag::D, 3), b(FamilyTag::B, 3), c(FamilyTag::C, 3);
      CHECK(rel_err(basis_f(d, j, -z, tau, 1.0), basis_f(d, j, z, tau, 1.0)) < 1e-12);
      CHECK(std::abs(basis_f(b, j, 0.0, tau, 1.0)) < 1e-14);
      const cplx fb = f(b, j, x, tau), fc = f(c, j, x, tau);
      CHECK(std::abs(fb.imag()) < 1e-12 * std::abs(fb));
      CHECK(std::abs(fc.real()) < 1e-12 * std::abs(fc));
    }
  }
}

TEST_CASE("factor components") {
  const cplx tau(0.0, 0.8);
  testutil::Rng rng(22);
  for (FamilyTag tag : kAll) {
    const Family fam(tag, 3);
    const KFactors kf(fam, tau, 1.0);
    for (int k = 0; k < 10; ++k) {
      const cplx u(rng.uniform(0.1, 3.0), rng.uniform(-0.2, 0.2)), v(rng.uniform(0.1, 3.0), rng.uniform(-0.2, 0.2));
      CHECK(rel_err(kf.k2(u, v).value(), -kf.k2(v, u).value()) < 1e-12);
      if (tag == FamilyTag::A || tag == FamilyTag::D) CHECK(rel_err(kf.k1(u).value(), 1.0) < 1e-15);
    }
  }
  const Family a(FamilyTag::A, 3);
  const KFactors ka(a, tau, 1.0);
  const std::vector<cplx> p{0.3, 1.2, 2.0}, q{2.0, 0.3, 1.2};
  CHECK(rel_err(ka.k_sym(p).value(), ka.k_sym(q).value()) < 1e-12);
  for (int n : {2, 3, 4}) {
    const cplx qn = std::exp(cplx(0.0, kPi) * tau);
    const cplx expected = 4.0 * std::pow(qn, -n * (n - 1) / 4.0) * std::exp(-double(n * (n - 2)) * log_q0(tau));
    CHECK(rel_err(KFactors(Family(FamilyTag::D, n), tau, 1.0).k0().value(), expected) < 1e-14);
  }
}

TEST_CASE("determinant evaluation against explicit cofactor expansions") {
  const ModularParam tau = ModularParam::imaginary(0.9);
  for (uint64_t i = 0; i < 20; ++i) {
    const Family d2(FamilyTag::D, 2);
    const Config u = random_config(d2, 1.0, 5, i);
    const cplx direct = f(d2, 1, u[0], tau) * f(d2, 2, u[1], tau) - f(d2, 1, u[1], tau) * f(d2, 2, u[0], tau);
    CHECK(rel_err(factorized_det(d2, u, tau, 1.0), direct) < 1e-10);
  }
  for (uint64_t i = 0; i < 50; ++i) {
    const Family c3(FamilyTag::C, 3);
    const Config u = random_config(c3, 1.0, 6, i);
    cplx m[3][3];
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) m[j][k] = f(c3, j + 1, u[static_cast<size_t>(k)], tau);
    const cplx sarrus = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                        m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    CHECK(rel_err(sarrus, factorized_det(c3, u, tau, 1.0)) < 1e-9);
    CHECK(rel_err(macdonald_det(c3, u, tau, 1.0), sarrus) < 1e-10);
  }
}

TEST_CASE("repeated nodes give a vanishing determinant") {
  const cplx tau(0.0, 1.1);
  for (FamilyTag tag : kAll) {
    const Family fam(tag, 2);
    const std::vector<cplx> z{0.7, 0.7};
    double scale = 1.0;
    for (int j = 1; j <= 2; ++j) scale *= std::abs(basis_f(fam, j, 0.7, ModularParam(tau), 1.0));
    const Scaled d = macdonald_det_scaled(fam, z, tau, 1.0);
    CHECK(std::abs(d.value()) <= 1e-10 * std::max(scale, 1e-300));
  }
}

TEST_CASE("factorization sweep over all families") {
  for (FamilyTag tag : kAll)
    for (int n : {2, 3, 4})
      for (double y : {0.3, 1.0, 3.0})
        for (uint64_t i = 0; i < 10; ++i) {
          const Family fam(tag, n);
          const auto z = to_complex(random_config(fam, 1.0, 17, 100 * n + i).values());
          const Scaled m = macdonald_det_scaled(fam, z, cplx(0.0, y), 1.0);
          const Scaled fz = factorized_det_scaled(fam, z, cplx(0.0, y), 1.0);
          const cplx ratio = m.mant / fz.mant * std::exp(m.log_scale - fz.log_scale);
          CHECK(std::abs(ratio - 1.0) < 1e-9);
        }
}
