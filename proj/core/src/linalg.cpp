#include "tdpair/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace tdpair {

Matrix kron(const Matrix& a, const Matrix& b) {
  const long rows = a.rows() * b.rows();
  const long cols = a.cols() * b.cols();
  if (rows > kMaxDimension || cols > kMaxDimension)
    throw std::length_error("kron: result exceeds the dimension cap");
  Matrix out(rows, cols);
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

RelationResidual relation_residual(const Matrix& lhs, const Matrix& rhs) {
  RelationResidual r;
  r.lhs_norm = lhs.norm();
  r.rhs_norm = rhs.norm();
  r.residual = (lhs - rhs).norm();
  r.relative = r.residual / std::max({r.lhs_norm, r.rhs_norm, 1.0});
  return r;
}

}  // namespace tdpair
