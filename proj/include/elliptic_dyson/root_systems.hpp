#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "elliptic_dyson/linalg.hpp"
#include "elliptic_dyson/special_fn.hpp"

namespace edyson {

enum class FamilyTag { A, B, Bvee, C, Cvee, BC, D };

const char* to_string(FamilyTag tag);
/// Accepts A, B, Bvee, C, Cvee, BC, D. Throws InvalidArgument otherwise.
FamilyTag parse_family(std::string_view name);
inline constexpr FamilyTag kAllFamilies[] = {FamilyTag::A,  FamilyTag::B,  FamilyTag::Bvee, FamilyTag::C,
                                            FamilyTag::Cvee, FamilyTag::BC, FamilyTag::D};

/// A root-system family with its per-family constants.
class Family {
public:
  Family(FamilyTag tag, int n);

  FamilyTag tag() const { return tag_; }
  int n() const { return n_; }
  std::string name() const;

  int cal_n() const;
  /// Twice the offset J(j), j = 1..N.
  int two_j(int j) const;
  double j_value(int j) const { return 0.5 * two_j(j); }
  double sum_j_squared() const;
  /// Defined only for B, Bvee, C, Cvee.
  double c1() const;
  double c2() const;
  /// Type A only.
  double kappa(double r) const;
  /// Right end of the configuration domain: pi r, or 2 pi r for type A.
  double domain_length(double r) const;

  friend bool operator==(const Family&, const Family&) = default;

private:
  FamilyTag tag_;
  int n_;
};

/// Ordered configuration in the family's chamber.
class Config {
public:
  Config(const Family& fam, std::vector<double> u, double r);
  const std::vector<double>& values() const { return u_; }
  double operator[](size_t i) const { return u_[i]; }
  size_t size() const { return u_.size(); }

private:
  std::vector<double> u_;
};

/// Sorted uniform draws with minimum mutual and boundary gap `min_gap_frac * pi r`.
Config random_config(const Family& fam, double r, uint64_t seed, uint64_t index, double min_gap_frac = 0.02);

/// Basis function f_j(z; tau), j = 1..N.
Scaled basis_f_scaled(const Family& fam, int j, cplx z, cplx tau, double r);
cplx basis_f(const Family& fam, int j, cplx z, const ModularParam& tau, double r);

/// Factors of the product formula for det[f_j(u_k)].
class KFactors {
public:
  KFactors(const Family& fam, cplx tau, double r);

  Scaled k0() const;
  Scaled k_sym(std::span<const cplx> u) const;
  Scaled k1(cplx u) const;
  Scaled k2(cplx u, cplx v) const;

private:
  Family fam_;
  cplx tau_;
  double r_;
};

ScaledMatrix basis_matrix(const Family& fam, std::span<const cplx> z, cplx tau, double r);
Scaled macdonald_det_scaled(const Family& fam, std::span<const cplx> z, cplx tau, double r);
Scaled factorized_det_scaled(const Family& fam, std::span<const cplx> z, cplx tau, double r);

cplx macdonald_det(const Family& fam, const Config& u, const ModularParam& tau, double r);
cplx factorized_det(const Family& fam, const Config& u, const ModularParam& tau, double r);

std::vector<cplx> to_complex(std::span<const double> x);

}  // namespace edyson
