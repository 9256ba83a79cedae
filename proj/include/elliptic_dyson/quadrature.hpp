#pragma once

#include <vector>

namespace edyson {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n nodes on [a, b].
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// Composite Gauss-Legendre rule: `panels` equal panels with n nodes each.
QuadratureRule composite_gauss_legendre(int n, int panels, double a, double b);

}  // namespace edyson
