#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "elliptic_dyson/interp_martingale.hpp"

namespace edyson {

enum class Wall { Absorb, Reflect };

struct BoundaryCond {
  Wall at_zero = Wall::Absorb;
  Wall at_pi_r = Wall::Absorb;
  friend bool operator==(const BoundaryCond&, const BoundaryCond&) = default;
};

inline constexpr BoundaryCond kAbsorbAbsorb{Wall::Absorb, Wall::Absorb};
inline constexpr BoundaryCond kAbsorbReflect{Wall::Absorb, Wall::Reflect};
inline constexpr BoundaryCond kReflectAbsorb{Wall::Reflect, Wall::Absorb};
inline constexpr BoundaryCond kReflectReflect{Wall::Reflect, Wall::Reflect};

/// Boundary pair matched to the zeros of k1 at 0 and pi r.
BoundaryCond default_boundary(FamilyTag tag);

/// Brownian transition density on [0, pi r]. Image sum for t < r^2, spectral sum otherwise.
/// At t = 0 the delta limit is returned as 0 off the diagonal and +inf on it.
double p_interval(BoundaryCond bc, double t, double y, double x, double r);
double p_interval_images(BoundaryCond bc, double t, double y, double x, double r);
double p_interval_spectral(BoundaryCond bc, double t, double y, double x, double r);

/// Trigonometric interpolation data for C and D (products of sines, basis sin(jz/r) or cos((j-1)z/r)).
class TrigInterp {
public:
  TrigInterp(FamilyTag tag, const Config& u, double r);

  FamilyTag tag() const { return tag_; }
  int n() const { return n_; }
  double r() const { return r_; }
  const std::vector<double>& nodes() const { return u_; }
  double basis(int k, double z) const;
  /// Heat growth rate: E[f_k(x + i B_t)] = exp(rate(k) t) f_k(x).
  double rate(int k) const;
  double phi(int j, double z) const;
  double coeff(int j, int k) const { return coeffs_(j - 1, k - 1); }
  double m_mart(int j, double t, double y) const;
  /// Closed-form product for det[f_j(u_k)].
  double det_closed_form() const;
  double det_direct() const;

private:
  FamilyTag tag_;
  int n_;
  double r_;
  std::vector<double> u_;
  Eigen::MatrixXd coeffs_;
};

enum class KernelMode { Elliptic, Trigonometric, EquilibriumTrig };

/// Precomputed data for O(N) evaluation of a correlation kernel.
class KernelContext {
public:
  static KernelContext elliptic(const Family& fam, const ProcessClock& clock, const Config& u,
                                std::optional<BoundaryCond> bc = std::nullopt);
  static KernelContext trigonometric(FamilyTag tag, const Config& u, double r);
  static KernelContext equilibrium(FamilyTag tag, int n, double r);

  KernelMode mode() const { return mode_; }
  int n() const { return n_; }
  double r() const { return r_; }
  FamilyTag tag() const { return tag_; }
  BoundaryCond bc() const { return bc_; }
  const MartingaleCtx* martingale() const { return mart_.get(); }
  const TrigInterp* trig() const { return trig_.get(); }

  double kernel(double s, double x, double t, double y) const;
  double density(double t, double x) const { return kernel(t, x, t, x); }

  /// Equal-time rank-N factorization K(t,x;t,y) = sum_j left_j(t,x) right_j(t,y).
  void left(double t, double x, std::span<double> out) const;
  void right(double t, double y, std::span<double> out) const;

private:
  KernelContext() = default;

  KernelMode mode_ = KernelMode::Elliptic;
  FamilyTag tag_ = FamilyTag::C;
  int n_ = 0;
  double r_ = 1.0;
  BoundaryCond bc_{};
  std::vector<double> u_;
  std::shared_ptr<const MartingaleCtx> mart_;
  std::shared_ptr<const TrigInterp> trig_;
};

double corr_kernel(const KernelContext& ctx, double s, double x, double t, double y);

struct SpaceTimePoint {
  double t;
  double x;
};
double corr_function(const KernelContext& ctx, std::span<const SpaceTimePoint> points);

/// Gap probability of (a, b) at time t via the rank-N reduction; order doubles until the change is below 1e-8.
double fredholm_gap(const KernelContext& ctx, double t, double a, double b, int quad_order = 64);
/// Generic Nystrom determinant det(I - K) on (a, b) for an arbitrary kernel, order doubled to 1e-8.
double fredholm_gap_nystrom(const std::function<double(double, double)>& kernel, double a, double b,
                            int quad_order = 64);

/// Equilibrium kernels of the trigonometric C and D models; dt = t - s.
double kernel_eq_trig(FamilyTag tag, double dt, double x, double y, int n, double r);
double equilibrium_density(FamilyTag tag, double x, int n, double r);
/// Same t > s branch evaluated by the finite sine/cosine sum (no closed form).
double kernel_eq_trig_sum(FamilyTag tag, double dt, double x, double y, int n, double r);

double kernel_trig(FamilyTag tag, const Config& u, double s, double x, double t, double y, double r);
double kernel_trig(const TrigInterp& interp, double s, double x, double t, double y);

/// Rational (half-line) limits.
enum class BesKind { BES1, BES3 };
/// Lagrange polynomial in z^2 through u_l^2: prod_{l != j} (z^2 - u_l^2) / (u_j^2 - u_l^2).
double phi_half_line(std::span<const double> u, int j, double z);
/// Bessel process transition density of dimension `dim`.
double p_bessel(double dim, double t, double y, double x);
double p_half_line(Wall wall, double t, double y, double x);
double kernel_bes(BesKind kind, std::span<const double> u, double s, double x, double t, double y);
/// Kernel of the rational C (absorbing) or D (reflecting) half-line model.
double kernel_rational(FamilyTag tag, std::span<const double> u, double s, double x, double t, double y);

}  // namespace edyson
