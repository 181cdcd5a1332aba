#pragma once

#include <vector>

#include "tdpair/blocktri.hpp"
#include "tdpair/linalg.hpp"
#include "tdpair/params.hpp"
#include "tdpair/spectral.hpp"

namespace tdpair {

/// Overlap data on the discrete support {lambda_tilde_s}.
///
/// F(n,i,k,s) is the pairing of the dual tilde-phi vector (s,k) with
/// psi_{n[i]}, divided by U_k(s); the level-0 row is identically 1.
struct OverlapTable {
  int diameter = 0;
  std::vector<Complex> lambda_tilde;            // [s], s = 0..N
  std::vector<std::vector<Complex>> U;          // U[s][k-1]
  std::vector<std::vector<Complex>> weights;    // weights[s][k-1] = Ntilde_{s[k]} U_k(s)^2
  // F indexed [s][k-1][position of (n,i) in the level-ordered psi family]
  std::vector<std::vector<std::vector<Complex>>> F;
  std::vector<EigenIndex> row_index;            // the (n,i) ordering of F rows

  Complex f(int n, int i, int k, int s) const;
  Complex u(int k, int s) const { return U[s][k - 1]; }
  Complex weight(int k, int s) const { return weights[s][k - 1]; }
};

/// U_k(s) by the two-branch recursion from U^{(0)}_1(0) = 1.
Complex overlap_U(const ModelParams& params, int k, int s);

/// Builds the full table. Throws std::domain_error when some |U_k(s)| falls
/// below the genericity tolerance (overlap degeneracy).
OverlapTable overlap_table(const ModelParams& params, const Tolerances& tol = {});

struct ResidualReport {
  double max_relative = 0.0;
};

/// Residual of lambda_tilde F_n = B F_{n+1} + A F_n + C F_{n-1} over all
/// (n, j, k, s), using the direct blocks.
ResidualReport check_recurrence(const ModelParams& params, const OverlapTable& table,
                                const BlockTriMatrix& blocks);

/// One level of the discrete q-difference operator
///   D(s) = Phi(s) eta + PhiBar(s) eta^{-1} + mu(s),   eta g(s) = g(s+1),
/// built from the tilde entries and U-ratios. Phi at s = N and PhiBar at
/// s = 0 are empty (no neighbor level).
struct QDiffOperator {
  int s = 0;
  Matrix phi;      // C(N,s) x C(N,s+1)
  Matrix phi_bar;  // C(N,s) x C(N,s-1)
  Matrix mu;       // C(N,s) x C(N,s)
};

QDiffOperator qdiff_operator(const ModelParams& params, int s,
                             const BlockTriMatrix& dual_blocks, const OverlapTable& table);

/// Residual of D(s) F_{n[j]} = lambda_n F_{n[j]} over all (n, j, s).
ResidualReport check_qdiff(const ModelParams& params, const OverlapTable& table,
                           const BlockTriMatrix& dual_blocks);

/// Gram matrix sum_{s,k} w_k(s) F_{n[ik]} F_{m[jk]} against diag(1/N_{n[i]}).
/// Weight realness is measured, never assumed.
struct GramReport {
  double max_diag_relative = 0.0;     // |G_ii - 1/N_i| / |1/N_i|
  double max_offdiag_relative = 0.0;  // |G_ij| / sqrt(|D_i D_j|)
  double max_weight_imag = 0.0;       // max |Im w| / max |w|
  Matrix gram;
};

GramReport weights_and_orthogonality(const ModelParams& params, const OverlapTable& table,
                                     const NormCoeffs& norms, const NormCoeffs& tilde_norms);

/// The three N = 2 rational functions of a free argument, with their zeros
/// and common pole. The square root in u12 uses the principal branch; the
/// pair is branch-symmetric so the choice only swaps the labels.
struct ClosedFormN2 {
  Complex f11, f12, f21;  // values at the requested argument
  Complex u11, u12_plus, u12_minus, u21;
  Complex pole;
  Complex pref11, pref12, pref21;  // constant prefactors of the three functions
};

/// Evaluates the closed forms at lambda_tilde. Throws std::domain_error when
/// N != 2 or the argument sits within tolerance of the pole.
ClosedFormN2 n2_closed_form(const ModelParams& params, Complex lambda_tilde,
                            const Tolerances& tol = {});

/// The leftover recurrence equation, evaluated as a polynomial in
/// lambda_tilde; its roots must reproduce the dual eigenvalue sequence.
/// Implemented for N = 1 and N = 2.
struct RootCheck {
  std::vector<Complex> roots;
  std::vector<Complex> expected;
  double max_mismatch = 0.0;  // greedy multiset matching distance
};

RootCheck eigenvalue_root_check(const ModelParams& params, const Tolerances& tol = {});

}  // namespace tdpair
