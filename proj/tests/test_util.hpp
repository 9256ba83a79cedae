#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace testutil {

using cplx = std::complex<double>;

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// Gauss-Hermite rule for E[f(Z)], Z standard normal, by Golub-Welsch.
struct Hermite {
  std::vector<double> nodes, weights;
  explicit Hermite(int n) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) j(k, k - 1) = j(k - 1, k) = std::sqrt(static_cast<double>(k));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    for (int k = 0; k < n; ++k) {
      nodes.push_back(es.eigenvalues()(k));
      const double v = es.eigenvectors()(0, k);
      weights.push_back(v * v);
    }
  }
  template <class F>
  auto expect(F&& f) const {
    decltype(f(0.0)) s{};
    for (size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(uint64_t seed) : gen(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); }
  double normal() { return std::normal_distribution<double>()(gen); }
};

}  // namespace testutil
