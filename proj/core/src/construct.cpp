#include "tdpair/construct.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace tdpair {

Matrix pauli_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

Matrix pauli_minus() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

Matrix pauli_z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

namespace {

Matrix build_w(const ModelParams& params, const Tolerances& tol, bool starred) {
  if (params.diameter > kMaxDiameter)
    throw std::length_error("diameter exceeds the dense dimension cap");
  const DerivedScalars s = derive(params, tol);

  Matrix coupling = Matrix::Zero(2, 2);
  coupling(0, 1) = s.k_plus;
  coupling(1, 0) = s.k_minus;

  Matrix q_diag = Matrix::Zero(2, 2);   // q^{+-sigma_3/2}
  q_diag(0, 0) = starred ? 1.0 / s.q_half : s.q_half;
  q_diag(1, 1) = starred ? s.q_half : 1.0 / s.q_half;

  Matrix w(1, 1);
  w(0, 0) = std::cosh(starred ? params.alpha_star : params.alpha);
  for (int n = 1; n <= params.diameter; ++n) {
    const long dim = 1L << (n - 1);
    w = kron(coupling, Matrix::Identity(dim, dim)) + kron(q_diag, w);
  }
  return w;
}

}  // namespace

Matrix build_w0(const ModelParams& params, const Tolerances& tol) {
  return build_w(params, tol, false);
}

Matrix build_w1(const ModelParams& params, const Tolerances& tol) {
  return build_w(params, tol, true);
}

Matrix q_commutator(const Matrix& a, const Matrix& b, Complex q_half) {
  return q_half * a * b - (1.0 / q_half) * b * a;
}

std::pair<RelationResidual, RelationResidual> check_tridiagonal_relations(
    const Matrix& w0, const Matrix& w1, const DerivedScalars& scalars) {
  if (w0.rows() != w1.rows() || w0.cols() != w1.cols())
    throw std::invalid_argument("check_tridiagonal_relations: dimension mismatch");
  const Complex qh = scalars.q_half;
  auto one_side = [&](const Matrix& a, const Matrix& as) {
    const Matrix inner = q_commutator(a, as, qh);
    const Matrix middle = q_commutator(a, inner, 1.0 / qh);
    const Matrix lhs = a * middle - middle * a;
    const Matrix rhs = scalars.rho * (a * as - as * a);
    return relation_residual(lhs, rhs);
  };
  return {one_side(w0, w1), one_side(w1, w0)};
}

AskeyWilsonFit fit_aw_constants(const Matrix& w0, const Matrix& w1, Complex q) {
  if (w0.rows() != w1.rows() || w0.cols() != w1.cols())
    throw std::invalid_argument("fit_aw_constants: dimension mismatch");
  const long d = w0.rows();
  const long entries = d * d;
  const Complex beta = q + 1.0 / q;

  const Matrix& A = w0;
  const Matrix& As = w1;
  const Matrix sym = A * As + As * A;
  const Matrix lhs1 = A * A * As - beta * A * As * A + As * A * A;
  const Matrix lhs2 = As * As * A - beta * As * A * As + A * As * As;
  const Matrix a2 = A * A;
  const Matrix as2 = As * As;
  const Matrix id = Matrix::Identity(d, d);

  auto flatten = [entries](const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), entries);
  };

  // Unknowns: gamma, gamma*, varrho, varrho*, omega, eta, eta*.
  Matrix design = Matrix::Zero(2 * entries, 7);
  design.block(0, 0, entries, 1) = flatten(sym);
  design.block(0, 1, entries, 1) = flatten(a2);
  design.block(0, 2, entries, 1) = flatten(As);
  design.block(0, 4, entries, 1) = flatten(A);
  design.block(0, 5, entries, 1) = flatten(id);
  design.block(entries, 0, entries, 1) = flatten(as2);
  design.block(entries, 1, entries, 1) = flatten(sym);
  design.block(entries, 3, entries, 1) = flatten(A);
  design.block(entries, 4, entries, 1) = flatten(As);
  design.block(entries, 6, entries, 1) = flatten(id);

  Vector target(2 * entries);
  target.head(entries) = flatten(lhs1);
  target.tail(entries) = flatten(lhs2);

  Eigen::JacobiSVD<Matrix> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector x = svd.solve(target);

  AskeyWilsonFit fit;
  for (int i = 0; i < 7; ++i) fit.constants[i] = x(i);
  const double target_norm = target.norm();
  fit.relative_residual = (design * x - target).norm() / std::max(target_norm, 1e-300);
  return fit;
}

}  // namespace tdpair
