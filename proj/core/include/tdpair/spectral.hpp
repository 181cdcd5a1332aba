#pragma once

#include <cstdint>
#include <vector>

#include "tdpair/linalg.hpp"
#include "tdpair/params.hpp"

namespace tdpair {

/// A sign sequence (eps_1 .. eps_N) together with its level
/// n = (N - sum eps_k)/2 and its rank inside the level under the canonical
/// recursive ordering. (level, rank) <-> epsilons is a bijection.
struct EigenIndex {
  std::vector<int> epsilons;  // each +1 or -1
  int level = 0;
  int rank = 1;               // 1-based, 1..binomial(N, level)
};

long binomial(int n, int k);

/// The canonical ordering of the level-n sign sequences for diameter N:
/// ranks 1..C(N-1,n) extend the level-n sequences of diameter N-1 by +1,
/// the remaining ranks extend the level-(n-1) sequences by -1. This is the
/// unique ordering consistent with the index offsets in the block-entry
/// recursion (all first-family indices come before the C(N-1,n) offset).
std::vector<std::vector<int>> canonical_order(int diameter, int level);

/// Index from (level, rank). Throws std::out_of_range on bad input.
EigenIndex make_eigen_index(int diameter, int level, int rank);

/// Index from a sign sequence (derives level and rank).
EigenIndex eigen_index_of(std::vector<int> epsilons);

/// Which closed-form family a vector belongs to.
///
/// psi / phi are the eigenvectors of W0 / W1. The tilde kinds are
/// the formal substitutions psi_tilde = phi|_{alpha* -> alpha} and
/// phi_tilde = psi|_{alpha -> alpha*} used to build the biorthogonal system.
enum class BasisKind : std::uint8_t { psi, phi, psi_tilde, phi_tilde };

/// Eigenvalue attached to a level for the given kind:
/// cosh(alpha + (N-2n) phi/2) for psi / psi_tilde,
/// cosh(alpha* + (N-2s) phi/2) for phi / phi_tilde.
Complex eigenvalue_of_level(const ModelParams& params, BasisKind kind, int level);

/// Closed-form vector for one index. Tensor factor l = N is the leftmost
/// Kronecker factor. Component values are part of the contract: no
/// unit-norm rescaling is ever applied.
Vector basis_vector(const ModelParams& params, BasisKind kind, const EigenIndex& idx);

Vector psi_vector(const ModelParams& params, const EigenIndex& idx);
Vector phi_vector(const ModelParams& params, const EigenIndex& idx);

/// Left (biorthogonal) partner of the psi or phi family: the unique-up-to-
/// scale vectors satisfying pairing(dual[n,i], primal[m,j]) = 0 whenever
/// (n,i) != (m,j), as an identity in the parameters.
///
/// For alpha, alpha*, phi purely imaginary and theta real these coincide with
/// the componentwise conjugates of the tilde vectors, so
/// pairing(dual, v) reproduces the conjugating pairing <tilde, v> of the
/// biorthogonality and overlap displays while staying analytic in the
/// parameters off the imaginary regime.
Vector dual_vector(const ModelParams& params, BasisKind kind, const EigenIndex& idx);

/// The full ordered family (levels ascending, canonical rank inside each).
struct EigenBasis {
  BasisKind kind = BasisKind::psi;
  int diameter = 0;
  std::vector<EigenIndex> indices;
  std::vector<Vector> vectors;      // parallel to indices
  std::vector<Complex> eigenvalues; // parallel to indices

  /// Position of (level, rank) in the ordered family.
  int position(int level, int rank) const;
};

EigenBasis eigenbasis(const ModelParams& params, BasisKind kind, const Tolerances& tol = {});

/// Bilinear (non-conjugating) form sum_i u_i v_i in the canonical basis.
Complex pairing(const Vector& u, const Vector& v);

/// Normalization coefficients from the two-branch recursion seeded with
/// N^{(0)} = 1; N_{n[i]} * pairing(dual psi_{n[i]}, psi_{n[i]}) = 1.
/// The tilde table is the same recursion at {alpha, phi} -> {-alpha*, -phi}.
struct NormCoeffs {
  int diameter = 0;
  bool tilde = false;
  std::vector<std::vector<Complex>> values;  // values[level][rank-1]
  Complex at(int level, int rank) const;
};

NormCoeffs norm_coeffs(const ModelParams& params, bool tilde, const Tolerances& tol = {});

}  // namespace tdpair
