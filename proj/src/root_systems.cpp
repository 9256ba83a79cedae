#include "elliptic_dyson/root_systems.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "elliptic_dyson/rng.hpp"

namespace edyson {

const char* to_string(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::A: return "A";
    case FamilyTag::B: return "B";
    case FamilyTag::Bvee: return "Bvee";
    case FamilyTag::C: return "C";
    case FamilyTag::Cvee: return "Cvee";
    case FamilyTag::BC: return "BC";
    case FamilyTag::D: return "D";
  }
  return "?";
}

FamilyTag parse_family(std::string_view name) {
  auto same = [](std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
             return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
  };
  for (FamilyTag t : kAllFamilies)
    if (same(name, to_string(t))) return t;
  fail(ErrorKind::InvalidArgument, "unknown family '" + std::string(name) + "'");
}

Family::Family(FamilyTag tag, int n) : tag_(tag), n_(n) { require(n >= 2, "family requires N >= 2"); }

std::string Family::name() const { return std::string(to_string(tag_)) + std::to_string(n_); }

int Family::cal_n() const {
  switch (tag_) {
    case FamilyTag::A: return n_;
    case FamilyTag::B: return 2 * n_ - 1;
    case FamilyTag::Bvee:
    case FamilyTag::Cvee: return 2 * n_;
    case FamilyTag::C: return 2 * (n_ + 1);
    case FamilyTag::BC: return 2 * n_ + 1;
    case FamilyTag::D: return 2 * (n_ - 1);
  }
  return 0;
}

int Family::two_j(int j) const {
  switch (tag_) {
    case FamilyTag::A:
    case FamilyTag::B:
    case FamilyTag::Bvee:
    case FamilyTag::D: return 2 * (j - 1);
    case FamilyTag::C:
    case FamilyTag::BC: return 2 * j;
    case FamilyTag::Cvee: return 2 * j - 1;
  }
  return 0;
}

double Family::sum_j_squared() const {
  double s = 0.0;
  for (int j = 1; j <= n_; ++j) s += j_value(j) * j_value(j);
  return s;
}

double Family::c1() const {
  switch (tag_) {
    case FamilyTag::B:
    case FamilyTag::Cvee: return 1.0;
    case FamilyTag::Bvee:
    case FamilyTag::C: return 2.0;
    default: fail(ErrorKind::InvalidArgument, "c1 is defined only for B, Bvee, C, Cvee");
  }
}

double Family::c2() const {
  switch (tag_) {
    case FamilyTag::B:
    case FamilyTag::C: return 1.0;
    case FamilyTag::Bvee: return 2.0;
    case FamilyTag::Cvee: return 0.5;
    default: fail(ErrorKind::InvalidArgument, "c2 is defined only for B, Bvee, C, Cvee");
  }
}

double Family::kappa(double r) const {
  require(tag_ == FamilyTag::A, "kappa is defined only for type A");
  return (n_ % 2 == 0) ? kPi * r * (n_ - 1) : kPi * r * (n_ - 2);
}

double Family::domain_length(double r) const { return tag_ == FamilyTag::A ? 2.0 * kPi * r : kPi * r; }

Config::Config(const Family& fam, std::vector<double> u, double r) : u_(std::move(u)) {
  require(static_cast<int>(u_.size()) == fam.n(), "configuration size must equal N");
  for (size_t i = 0; i < u_.size(); ++i) {
    require(std::isfinite(u_[i]), "configuration entries must be finite");
    if (i > 0) require(u_[i - 1] < u_[i], "configuration must be strictly increasing");
  }
  if (fam.tag() != FamilyTag::A)
    require(u_.front() > 0.0 && u_.back() < kPi * r, "configuration must lie in (0, pi r)");
}

Config random_config(const Family& fam, double r, uint64_t seed, uint64_t index, double min_gap_frac) {
  const double len = fam.domain_length(r);
  const double gap = min_gap_frac * kPi * r;
  CounterStream rng(seed, index, 0x52435531u);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<double> u(static_cast<size_t>(fam.n()));
    for (double& x : u) x = len * rng.uniform();
    std::sort(u.begin(), u.end());
    bool ok = u.front() >= gap && len - u.back() >= gap;
    for (size_t i = 1; i < u.size() && ok; ++i) ok = u[i] - u[i - 1] >= gap;
    if (ok) return Config(fam, std::move(u), r);
  }
  fail(ErrorKind::InvalidArgument, "could not draw a configuration with the requested gap");
}

std::vector<cplx> to_complex(std::span<const double> x) { return std::vector<cplx>(x.begin(), x.end()); }

Scaled basis_f_scaled(const Family& fam, int j, cplx z, cplx tau, double r) {
  const double jj = fam.j_value(j);
  const double cn = fam.cal_n();
  const cplx nome_tau = cn * tau;
  const cplx arg = cn * z / (2.0 * kPi * r);
  const cplx phase = kI * jj * z / r;
  if (fam.tag() == FamilyTag::A) {
    const double shift = (fam.n() % 2 == 0) ? 0.0 : 0.5;
    return Scaled::exp_of(phase) * theta_scaled(ThetaKind::Theta1, jj * tau + arg + shift, nome_tau);
  }
  double shift = 0.5;
  double sign = -1.0;
  if (fam.tag() == FamilyTag::B || fam.tag() == FamilyTag::Bvee) shift = 0.0;
  if (fam.tag() == FamilyTag::D) sign = 1.0;
  Scaled plus = Scaled::exp_of(phase) * theta_scaled(ThetaKind::Theta1, jj * tau + arg + shift, nome_tau);
  Scaled minus = Scaled::exp_of(-phase) * theta_scaled(ThetaKind::Theta1, jj * tau - arg + shift, nome_tau);
  return sign > 0 ? plus + minus : plus - minus;
}

cplx basis_f(const Family& fam, int j, cplx z, const ModularParam& tau, double r) {
  require(j >= 1, "basis index starts at 1");
  return basis_f_scaled(fam, j, z, tau.tau(), r).value();
}

KFactors::KFactors(const Family& fam, cplx tau, double r) : fam_(fam), tau_(tau), r_(r) {
  require(tau.imag() > 0.0, "Im(tau) must be positive");
}

Scaled KFactors::k0() const {
  const double n = fam_.n();
  // q^a = exp(i pi tau a); q0^b = exp(b log q0)
  auto qpow = [&](double a) { return Scaled::exp_of(kI * kPi * tau_ * a); };
  auto q0pow = [&](cplx t, double b) { return Scaled::exp_of(b * log_q0(t)); };
  auto ipow = [](long k) {
    const long m = ((k % 4) + 4) % 4;
    static const cplx vals[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    return Scaled::from(vals[m]);
  };
  const long ni = fam_.n();
  switch (fam_.tag()) {
    case FamilyTag::A: {
      const long sgn = (ni % 2 == 0) ? 1 : -1;
      return ipow(-(ni - 1) * (3 * ni + 1 - sgn) / 2) * qpow(-(n - 1) * (3 * n - 2) / 8.0) *
             q0pow(tau_, -(n - 1) * (n - 2) / 2.0);
    }
    case FamilyTag::B:
      return Scaled::from(2.0) * qpow(-n * (n - 1) / 4.0) * q0pow(tau_, -n * (n - 1));
    case FamilyTag::Bvee:
      return Scaled::from(2.0) * qpow(-n * (n - 1) / 4.0) * q0pow(tau_, -(n - 1) * (n - 1)) *
             q0pow(2.0 * tau_, -(n - 1));
    case FamilyTag::C: return ipow(-ni) * qpow(-n * n / 4.0) * q0pow(tau_, -n * (n - 1));
    case FamilyTag::Cvee:
      return ipow(-ni) * qpow(-n * (2 * n - 1) / 8.0) * q0pow(tau_, -(n - 1) * (n - 1)) *
             q0pow(0.5 * tau_, -(n - 1));
    case FamilyTag::BC:
      return ipow(-ni) * qpow(-n * (n + 1) / 4.0) * q0pow(tau_, -n * (n - 1)) * q0pow(2.0 * tau_, -n);
    case FamilyTag::D:
      return Scaled::from(4.0) * qpow(-n * (n - 1) / 4.0) * q0pow(tau_, -n * (n - 2));
  }
  return Scaled::one();
}

Scaled KFactors::k_sym(std::span<const cplx> u) const {
  if (fam_.tag() != FamilyTag::A) return Scaled::one();
  cplx s = 0.0;
  for (const cplx& x : u) s += x;
  return theta_scaled(ThetaKind::Theta1, (s - fam_.kappa(r_)) / (2.0 * kPi * r_), tau_);
}

Scaled KFactors::k1(cplx u) const {
  const double pr = kPi * r_;
  switch (fam_.tag()) {
    case FamilyTag::A:
    case FamilyTag::D: return Scaled::one();
    case FamilyTag::B: return theta_scaled(ThetaKind::Theta1, u / (2.0 * pr), tau_);
    case FamilyTag::Bvee: return theta_scaled(ThetaKind::Theta1, u / pr, 2.0 * tau_);
    case FamilyTag::C: return theta_scaled(ThetaKind::Theta1, u / pr, tau_);
    case FamilyTag::Cvee: return theta_scaled(ThetaKind::Theta1, u / (2.0 * pr), 0.5 * tau_);
    case FamilyTag::BC:
      return theta_scaled(ThetaKind::Theta1, u / (2.0 * pr), tau_) *
             theta_scaled(ThetaKind::Theta0, u / pr, 2.0 * tau_);
  }
  return Scaled::one();
}

Scaled KFactors::k2(cplx u, cplx v) const {
  const double tpr = 2.0 * kPi * r_;
  Scaled diff = theta_scaled(ThetaKind::Theta1, (u - v) / tpr, tau_);
  if (fam_.tag() == FamilyTag::A) return diff;
  return diff * theta_scaled(ThetaKind::Theta1, (u + v) / tpr, tau_);
}

ScaledMatrix basis_matrix(const Family& fam, std::span<const cplx> z, cplx tau, double r) {
  const int n = fam.n();
  require(static_cast<int>(z.size()) == n, "point count must equal N");
  ScaledMatrix m(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(j, k) = basis_f_scaled(fam, j + 1, z[static_cast<size_t>(k)], tau, r);
  return m;
}

Scaled macdonald_det_scaled(const Family& fam, std::span<const cplx> z, cplx tau, double r) {
  return scaled_determinant(basis_matrix(fam, z, tau, r));
}

Scaled factorized_det_scaled(const Family& fam, std::span<const cplx> z, cplx tau, double r) {
  const KFactors k(fam, tau, r);
  Scaled out = k.k0() * k.k_sym(z);
  for (const cplx& x : z) out *= k.k1(x);
  for (size_t j = 0; j < z.size(); ++j)
    for (size_t l = j + 1; l < z.size(); ++l) out *= k.k2(z[l], z[j]);
  return out;
}

cplx macdonald_det(const Family& fam, const Config& u, const ModularParam& tau, double r) {
  const auto z = to_complex(u.values());
  return macdonald_det_scaled(fam, z, tau.tau(), r).value();
}

cplx factorized_det(const Family& fam, const Config& u, const ModularParam& tau, double r) {
  const auto z = to_complex(u.values());
  return factorized_det_scaled(fam, z, tau.tau(), r).value();
}

}  // namespace edyson
