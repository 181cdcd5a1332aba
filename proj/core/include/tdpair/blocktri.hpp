#pragma once

#include <vector>

#include "tdpair/linalg.hpp"
#include "tdpair/params.hpp"
#include "tdpair/spectral.hpp"

namespace tdpair {

/// Block-tridiagonal representation of one standard generator in the other's
/// eigenbasis, stored per level.
///
/// Entries are keyed (i, j) with j the source rank:
///   W1 psi_{n[j]} = sum_i b_n[i,j] psi_{n+1[i]}
///                 + sum_i a_n[i,j] psi_{n[i]}
///                 + sum_i c_n[i,j] psi_{n-1[i]}.
/// The transposed matrices (X_n)_{[ji]} = (x_n)_{[ij]} of the coefficient
/// tables never appear here; assemble() places entries directly.
struct BlockTriMatrix {
  int diameter = 0;
  std::vector<Matrix> a;  // a[n]: C(N,n)   x C(N,n),  n = 0..N
  std::vector<Matrix> b;  // b[n]: C(N,n+1) x C(N,n),  n = 0..N-1 (b[N] empty)
  std::vector<Matrix> c;  // c[n]: C(N,n-1) x C(N,n),  n = 1..N   (c[0] empty)

  /// Full 2^N x 2^N matrix in the level-ordered eigenbasis. Entries outside
  /// the three block diagonals are exactly zero.
  Matrix assemble() const;
};

/// All blocks by the two-family index-partitioned recursion, seeded at
/// diameter 0 with the 1x1 entry cosh(alpha*) (one step reproduces the
/// N = 1 closed forms).
BlockTriMatrix entries_recursive(const ModelParams& params, const Tolerances& tol = {});

/// Basis-change oracle, independent of the recursion: the coefficient of
/// psi_{m[i]} in W1 psi_{n[j]} is N_{m[i]} pairing(dual psi_{m[i]}, W1 psi_{n[j]}).
/// Coefficients with |m - n| >= 2 must vanish; the largest one found is
/// reported, not dropped.
struct BasisChangeBlocks {
  BlockTriMatrix blocks;
  double max_off_block = 0.0;  // largest |coefficient| outside the tridiagonal band
};

BasisChangeBlocks entries_by_basis_change(const ModelParams& params, const Matrix& w1,
                                          const EigenBasis& psi_basis, const NormCoeffs& norms);

/// Convenience: builds w1, the psi basis and the norms internally.
BasisChangeBlocks entries_by_basis_change(const ModelParams& params,
                                          const Tolerances& tol = {});

enum class BlockMethod { recursive, basis_change };

/// Tilde blocks (W0 in the phi basis): either through the parameter
/// substitution applied to the direct recursion, or through the basis-change
/// expansion in the phi family.
BlockTriMatrix dual_entries(const ModelParams& params, BlockMethod method,
                            const Tolerances& tol = {});

}  // namespace tdpair
