#pragma once

#include <Eigen/Dense>
#include <vector>

#include "elliptic_dyson/scaled.hpp"

namespace edyson {

/// Square matrix of scaled entries, row major.
struct ScaledMatrix {
  int n = 0;
  std::vector<Scaled> entries;

  explicit ScaledMatrix(int size) : n(size), entries(static_cast<size_t>(size * size)) {}
  Scaled& operator()(int i, int j) { return entries[static_cast<size_t>(i * n + j)]; }
  const Scaled& operator()(int i, int j) const { return entries[static_cast<size_t>(i * n + j)]; }
};

/// Rows divided by exp(row_log_scale[i]) so each row has unit-order entries.
struct RowNormalized {
  Eigen::MatrixXcd matrix;
  std::vector<double> row_log_scale;
};

RowNormalized row_normalize(const ScaledMatrix& m);

/// Determinant by LU with partial pivoting, returned in scaled form.
Scaled scaled_determinant(const ScaledMatrix& m);

/// 1-norm condition number estimate from an LU factorization.
double condition_estimate(const Eigen::MatrixXcd& m);

}  // namespace edyson
