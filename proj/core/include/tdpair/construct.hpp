#pragma once

#include <array>
#include <utility>

#include "tdpair/linalg.hpp"
#include "tdpair/params.hpp"

namespace tdpair {

Matrix pauli_plus();
Matrix pauli_minus();
Matrix pauli_z();

/// W0 by the Kronecker recursion
///   W0^{(N)} = (k+ s+ + k- s-) (x) I^{(N-1)} + q^{s3/2} (x) W0^{(N-1)},
/// seeded with the 1x1 scalar W0^{(0)} = cosh(alpha).
Matrix build_w0(const ModelParams& params, const Tolerances& tol = {});

/// W1: same recursion with q^{-s3/2} and seed cosh(alpha*).
Matrix build_w1(const ModelParams& params, const Tolerances& tol = {});

/// q-commutator [A,B]_q = q^{1/2} A B - q^{-1/2} B A.
Matrix q_commutator(const Matrix& a, const Matrix& b, Complex q_half);

/// Residuals of the two tridiagonal relations
///   [A,[A,[A,A*]_q]_{q^-1}] = rho [A,A*]   and the starred counterpart,
/// with the triple bracket evaluated left-to-right, no simplification.
std::pair<RelationResidual, RelationResidual> check_tridiagonal_relations(
    const Matrix& w0, const Matrix& w1, const DerivedScalars& scalars);

/// Least-squares fit of the seven free constants of the Askey-Wilson
/// relations (beta fixed to q + q^{-1}) over all matrix entries of both
/// relations. The pair satisfies the relations iff the residual vanishes,
/// which happens for N = 1 and fails for N >= 2.
struct AskeyWilsonFit {
  // gamma, gamma*, varrho, varrho*, omega, eta, eta*
  std::array<Complex, 7> constants{};
  double relative_residual = 0.0;
};

AskeyWilsonFit fit_aw_constants(const Matrix& w0, const Matrix& w1, Complex q);

}  // namespace tdpair
