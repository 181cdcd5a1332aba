#pragma once

#include <Eigen/Dense>

#include "tdpair/params.hpp"

namespace tdpair {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Hard cap on the tensor diameter: dense 4096 x 4096 is the largest size the
/// Frobenius-norm checks stay interactive at.
inline constexpr int kMaxDiameter = 12;
inline constexpr long kMaxDimension = 1L << kMaxDiameter;

/// Kronecker product. Throws std::length_error when the result would exceed
/// the dimension cap.
Matrix kron(const Matrix& a, const Matrix& b);

/// Frobenius-norm comparison of two sides of a matrix identity.
struct RelationResidual {
  double lhs_norm = 0.0;
  double rhs_norm = 0.0;
  double residual = 0.0;   // ||lhs - rhs||_F
  double relative = 0.0;   // residual / max(lhs_norm, rhs_norm, 1)
};

RelationResidual relation_residual(const Matrix& lhs, const Matrix& rhs);

}  // namespace tdpair
