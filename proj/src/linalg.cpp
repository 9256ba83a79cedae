#include "elliptic_dyson/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace edyson {

RowNormalized row_normalize(const ScaledMatrix& m) {
  RowNormalized out;
  out.matrix.resize(m.n, m.n);
  out.row_log_scale.assign(static_cast<size_t>(m.n), 0.0);
  for (int i = 0; i < m.n; ++i) {
    double s = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < m.n; ++j)
      if (!m(i, j).is_zero()) s = std::max(s, m(i, j).log_scale);
    if (!std::isfinite(s)) s = 0.0;
    out.row_log_scale[static_cast<size_t>(i)] = s;
    for (int j = 0; j < m.n; ++j) out.matrix(i, j) = m(i, j).value_shifted(s);
  }
  return out;
}

Scaled scaled_determinant(const ScaledMatrix& m) {
  const RowNormalized rn = row_normalize(m);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(rn.matrix);
  // LU diagonal product in scaled form avoids under/overflow for larger N.
  const Eigen::MatrixXcd& packed = lu.matrixLU();
  Scaled det = Scaled::from(static_cast<double>(lu.permutationP().determinant()));
  for (int i = 0; i < m.n; ++i) det *= Scaled::from(packed(i, i));
  double shift = 0.0;
  for (double s : rn.row_log_scale) shift += s;
  if (!det.is_zero()) det.log_scale += shift;
  return det;
}

double condition_estimate(const Eigen::MatrixXcd& m) {
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  const double rc = lu.rcond();
  return rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
}

}  // namespace edyson
