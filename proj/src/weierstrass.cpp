#include <algorithm>
#include <cmath>

#include "elliptic_dyson/special_fn.hpp"

namespace edyson {

namespace {

constexpr int kTailOrder = 10;

double riemann_zeta_even(int two_k) {
  // zeta(2k) for the few values needed by the Eisenstein normalization
  switch (two_k) {
    case 4: return std::pow(kPi, 4) / 90.0;
    case 6: return std::pow(kPi, 6) / 945.0;
  }
  fail(ErrorKind::InvalidArgument, "unsupported zeta argument");
}

}  // namespace

WeierstrassLattice::WeierstrassLattice(double omega1, cplx omega3, int box) : omega1_(omega1), omega3_(omega3) {
  require(omega1 > 0.0, "omega1 must be positive");
  require(omega3.real() == 0.0 && omega3.imag() > 0.0, "omega3 must be positive imaginary");
  require(box >= 4, "lattice box too small");

  // Stretch the box along the short period so its inner radius is balanced.
  const double ratio = omega3.imag() / omega1;
  const int m_ext = static_cast<int>(std::min(4000.0, box * std::max(1.0, std::ceil(ratio))));
  const int n_ext = static_cast<int>(std::min(4000.0, box * std::max(1.0, std::ceil(1.0 / ratio))));
  points_.reserve(static_cast<size_t>((2 * m_ext + 1) * (2 * n_ext + 1)));
  for (int m = -m_ext; m <= m_ext; ++m)
    for (int n = -n_ext; n <= n_ext; ++n)
      if (m != 0 || n != 0) points_.push_back(2.0 * m * omega1 + 2.0 * static_cast<double>(n) * omega3);

  // Exact Eisenstein sums G_{2k} from E4, E6 and the Laurent recursion.
  const cplx tau = omega3 / omega1;
  const cplx scale = 2.0 * omega1;
  g_.assign(kTailOrder + 1, cplx(0.0));
  g_[2] = 2.0 * riemann_zeta_even(4) * eisenstein_e4(tau) / std::pow(scale, 4);
  g_[3] = 2.0 * riemann_zeta_even(6) * eisenstein_e6(tau) / std::pow(scale, 6);
  std::vector<cplx> c(kTailOrder + 1, cplx(0.0));
  c[2] = 3.0 * g_[2];
  c[3] = 5.0 * g_[3];
  for (int k = 4; k <= kTailOrder; ++k) {
    cplx s = 0.0;
    for (int m = 2; m <= k - 2; ++m) s += c[static_cast<size_t>(m)] * c[static_cast<size_t>(k - m)];
    c[static_cast<size_t>(k)] = 3.0 / ((2.0 * k + 1.0) * (k - 3.0)) * s;
    g_[static_cast<size_t>(k)] = c[static_cast<size_t>(k)] / (2.0 * k - 1.0);
  }

  // Tails: exact minus truncated box sums.
  std::vector<cplx> box_sum(kTailOrder + 1, cplx(0.0));
  for (const cplx& w : points_) {
    const cplx iw2 = 1.0 / (w * w);
    cplx p = iw2;
    for (int k = 2; k <= kTailOrder; ++k) {
      p *= iw2;
      box_sum[static_cast<size_t>(k)] += p;
    }
  }
  tail_.assign(kTailOrder + 1, cplx(0.0));
  for (int k = 2; k <= kTailOrder; ++k)
    tail_[static_cast<size_t>(k)] = g_[static_cast<size_t>(k)] - box_sum[static_cast<size_t>(k)];
  guard_ = 1e-12 * std::min(omega1, omega3.imag());
  eta1_ = zeta_local(cplx(omega1, 0.0));
  eta3_ = zeta_local(omega3);
}

cplx WeierstrassLattice::reduce(cplx z, long& m, long& n) const {
  n = std::lround(z.imag() / (2.0 * omega3_.imag()));
  m = std::lround(z.real() / (2.0 * omega1_));
  return z - 2.0 * static_cast<double>(m) * omega1_ - 2.0 * static_cast<double>(n) * omega3_;
}

cplx WeierstrassLattice::p_local(cplx z) const {
  if (std::abs(z) < guard_) fail(ErrorKind::PoleProximity, "Weierstrass function at a lattice point");
  cplx s = 1.0 / (z * z);
  for (const cplx& w : points_) {
    const cplx d = z - w;
    s += 1.0 / (d * d) - 1.0 / (w * w);
  }
  const cplx z2 = z * z;
  cplx zp = z2;
  for (int k = 2; k <= kTailOrder; ++k) {
    s += (2.0 * k - 1.0) * tail_[static_cast<size_t>(k)] * zp;
    zp *= z2;
  }
  return s;
}

cplx WeierstrassLattice::zeta_local(cplx z) const {
  if (std::abs(z) < guard_) fail(ErrorKind::PoleProximity, "Weierstrass function at a lattice point");
  cplx s = 1.0 / z;
  for (const cplx& w : points_) {
    const cplx iw = 1.0 / w;
    s += 1.0 / (z - w) + iw + z * iw * iw;
  }
  const cplx z2 = z * z;
  cplx zp = z2 * z;
  for (int k = 2; k <= kTailOrder; ++k) {
    s -= tail_[static_cast<size_t>(k)] * zp;
    zp *= z2;
  }
  return s;
}

cplx WeierstrassLattice::p(cplx z) const {
  long m, n;
  return p_local(reduce(z, m, n));
}

cplx WeierstrassLattice::zeta(cplx z) const {
  long m, n;
  const cplx zr = reduce(z, m, n);
  return zeta_local(zr) + 2.0 * static_cast<double>(m) * eta1_ + 2.0 * static_cast<double>(n) * eta3_;
}

cplx weierstrass_p(cplx z, double omega1, cplx omega3) { return WeierstrassLattice(omega1, omega3).p(z); }
cplx weierstrass_zeta(cplx z, double omega1, cplx omega3) { return WeierstrassLattice(omega1, omega3).zeta(z); }

}  // namespace edyson
