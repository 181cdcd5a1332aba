#include "tdpair/blocktri.hpp"

#include <cmath>
#include <stdexcept>

#include "tdpair/construct.hpp"

namespace tdpair {

Matrix BlockTriMatrix::assemble() const {
  const long dim = 1L << diameter;
  Matrix full = Matrix::Zero(dim, dim);
  std::vector<long> offset(diameter + 2, 0);
  for (int n = 0; n <= diameter; ++n)
    offset[n + 1] = offset[n] + binomial(diameter, n);
  for (int n = 0; n <= diameter; ++n) {
    full.block(offset[n], offset[n], a[n].rows(), a[n].cols()) = a[n];
    if (n < diameter && b[n].size() > 0)
      full.block(offset[n + 1], offset[n], b[n].rows(), b[n].cols()) = b[n];
    if (n > 0 && c[n].size() > 0)
      full.block(offset[n - 1], offset[n], c[n].rows(), c[n].cols()) = c[n];
  }
  return full;
}

BlockTriMatrix entries_recursive(const ModelParams& params, const Tolerances& tol) {
  const ValidationReport report = validate(params, tol);
  if (!report.ok())
    throw std::invalid_argument("invalid model parameters: " + report.to_string());

  const Complex alpha = params.alpha;
  const Complex phi = params.phi;
  auto sh = [](Complex z) { return std::sinh(z); };
  auto ch = [](Complex z) { return std::cosh(z); };
  auto guard = [&tol](Complex denom) {
    if (std::abs(denom) <= tol.genericity)
      throw std::domain_error("entries_recursive: sinh denominator below tolerance");
    return denom;
  };

  // Diameter 0: the generator is the 1x1 scalar cosh(alpha*).
  std::vector<Matrix> a(1), b, c;
  a[0] = Matrix::Constant(1, 1, std::cosh(params.alpha_star));

  for (int m = 1; m <= params.diameter; ++m) {
    std::vector<Matrix> na(m + 1), nb(m + 1), nc(m + 1);
    for (int n = 0; n <= m; ++n) {
      // Ranks 1..C(m-1,n) extend level n of the previous diameter ("first
      // family"); the rest extend level n-1 ("second family"). Every rule
      // below partitions (i, j) by that split.
      const long rows = binomial(m, n);
      const long first = binomial(m - 1, n);

      const Complex sA = guard(sh(alpha + double(m - 1 - 2 * n) * phi / 2.0));
      const Complex sB = guard(sh(alpha + double(m + 1 - 2 * n) * phi / 2.0));

      Matrix A = Matrix::Zero(rows, rows);
      for (long i = 1; i <= rows; ++i) {
        for (long j = 1; j <= rows; ++j) {
          if (i <= first && j <= first) {
            if (i == j)
              A(i - 1, j - 1) =
                  (a[n](i - 1, i - 1) * sh(alpha + double(m - 2 - 2 * n) * phi / 2.0) -
                   sh(phi / 2.0)) /
                  sA;
            else
              A(i - 1, j - 1) =
                  sh(alpha + double(m - 2 - 2 * n) * phi / 2.0) / sA * a[n](i - 1, j - 1);
          } else if (i > first && j > first) {
            if (i == j)
              A(i - 1, j - 1) =
                  (a[n - 1](i - first - 1, i - first - 1) *
                       sh(alpha + double(m + 2 - 2 * n) * phi / 2.0) +
                   sh(phi / 2.0)) /
                  sB;
            else
              A(i - 1, j - 1) = sh(alpha + double(m + 2 - 2 * n) * phi / 2.0) / sB *
                                a[n - 1](i - first - 1, j - first - 1);
          } else if (i <= first && j > first) {
            A(i - 1, j - 1) = -std::exp(-alpha - double(m - 2 * n) * phi / 2.0) * sh(phi) /
                              sA * b[n - 1](i - 1, j - first - 1);
          } else {
            A(i - 1, j - 1) = std::exp(alpha + double(m - 2 * n) * phi / 2.0) * sh(phi) /
                              sB * c[n](i - first - 1, j - 1);
          }
        }
      }
      na[n] = std::move(A);

      if (n < m) {
        const long brows = binomial(m, n + 1);
        const long bfirst = binomial(m - 1, n + 1);
        Matrix B = Matrix::Zero(brows, rows);
        for (long i = 1; i <= brows; ++i) {
          for (long j = 1; j <= rows; ++j) {
            if (i <= bfirst && j <= first) {
              B(i - 1, j - 1) = std::exp(phi / 2.0) * b[n](i - 1, j - 1);
            } else if (i <= bfirst) {
              B(i - 1, j - 1) = 0.0;  // forced zero block
            } else if (j > first) {
              B(i - 1, j - 1) = std::exp(-phi / 2.0) * sB / sA *
                                b[n - 1](i - bfirst - 1, j - first - 1);
            } else {
              const Complex pref = std::exp(alpha + double(m - 1 - 2 * n) * phi / 2.0) *
                                   sh(phi / 2.0) / sA;
              if (j == i - bfirst)
                B(i - 1, j - 1) =
                    pref * (a[n](j - 1, j - 1) + ch(alpha + double(m - 1 - 2 * n) * phi / 2.0));
              else
                B(i - 1, j - 1) = pref * a[n](i - bfirst - 1, j - 1);
            }
          }
        }
        nb[n] = std::move(B);
      }

      if (n > 0) {
        const long crows = binomial(m, n - 1);
        const long cfirst = binomial(m - 1, n - 1);
        Matrix Cm = Matrix::Zero(crows, rows);
        for (long i = 1; i <= crows; ++i) {
          for (long j = 1; j <= rows; ++j) {
            if (i > cfirst && j > first) {
              Cm(i - 1, j - 1) = std::exp(phi / 2.0) * c[n - 1](i - cfirst - 1, j - first - 1);
            } else if (i > cfirst) {
              Cm(i - 1, j - 1) = 0.0;  // forced zero block
            } else if (j <= first) {
              Cm(i - 1, j - 1) = std::exp(-phi / 2.0) * sA / sB * c[n](i - 1, j - 1);
            } else {
              const Complex pref = -std::exp(-alpha - double(m + 1 - 2 * n) * phi / 2.0) *
                                   sh(phi / 2.0) / sB;
              if (i == j - first)
                Cm(i - 1, j - 1) =
                    pref * (a[n - 1](i - 1, i - 1) + ch(alpha + double(m + 1 - 2 * n) * phi / 2.0));
              else
                Cm(i - 1, j - 1) = pref * a[n - 1](i - 1, j - first - 1);
            }
          }
        }
        nc[n] = std::move(Cm);
      }
    }
    a = std::move(na);
    b = std::move(nb);
    c = std::move(nc);
  }

  BlockTriMatrix out;
  out.diameter = params.diameter;
  out.a = std::move(a);
  out.b = std::move(b);
  out.c = std::move(c);
  out.b.resize(params.diameter + 1);
  out.c.resize(params.diameter + 1);
  return out;
}

BasisChangeBlocks entries_by_basis_change(const ModelParams& params, const Matrix& w1,
                                          const EigenBasis& psi_basis,
                                          const NormCoeffs& norms) {
  const int N = params.diameter;
  if (psi_basis.diameter != N || norms.diameter != N)
    throw std::invalid_argument("entries_by_basis_change: inconsistent inputs");

  BlockTriMatrix blocks;
  blocks.diameter = N;
  blocks.a.resize(N + 1);
  blocks.b.resize(N + 1);
  blocks.c.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    blocks.a[n] = Matrix::Zero(binomial(N, n), binomial(N, n));
    if (n < N) blocks.b[n] = Matrix::Zero(binomial(N, n + 1), binomial(N, n));
    if (n > 0) blocks.c[n] = Matrix::Zero(binomial(N, n - 1), binomial(N, n));
  }

  const BasisKind dual_kind =
      psi_basis.kind == BasisKind::psi ? BasisKind::psi : BasisKind::phi;
  std::vector<Vector> duals(psi_basis.indices.size());
  for (size_t p = 0; p < psi_basis.indices.size(); ++p)
    duals[p] = dual_vector(params, dual_kind, psi_basis.indices[p]);

  double leakage = 0.0;
  for (size_t col = 0; col < psi_basis.indices.size(); ++col) {
    const EigenIndex& src = psi_basis.indices[col];
    const Vector image = w1 * psi_basis.vectors[col];
    const double scale = std::max(image.norm(), 1.0);
    for (size_t row = 0; row < psi_basis.indices.size(); ++row) {
      const EigenIndex& dst = psi_basis.indices[row];
      const Complex coef = norms.at(dst.level, dst.rank) * pairing(duals[row], image);
      const int dn = dst.level - src.level;
      if (dn == 0)
        blocks.a[src.level](dst.rank - 1, src.rank - 1) = coef;
      else if (dn == 1)
        blocks.b[src.level](dst.rank - 1, src.rank - 1) = coef;
      else if (dn == -1)
        blocks.c[src.level](dst.rank - 1, src.rank - 1) = coef;
      else
        leakage = std::max(leakage, std::abs(coef) / scale);
    }
  }
  return {std::move(blocks), leakage};
}

BasisChangeBlocks entries_by_basis_change(const ModelParams& params, const Tolerances& tol) {
  const Matrix w1 = build_w1(params, tol);
  const EigenBasis basis = eigenbasis(params, BasisKind::psi, tol);
  const NormCoeffs norms = norm_coeffs(params, false, tol);
  return entries_by_basis_change(params, w1, basis, norms);
}

BlockTriMatrix dual_entries(const ModelParams& params, BlockMethod method,
                            const Tolerances& tol) {
  if (method == BlockMethod::recursive)
    return entries_recursive(dual_substitution(params), tol);
  // Basis-change route in the phi family: expands W0 phi_{s[k]} over the
  // phi basis with the tilde norms.
  const Matrix w0 = build_w0(params, tol);
  const EigenBasis basis = eigenbasis(params, BasisKind::phi, tol);
  const NormCoeffs tilde = norm_coeffs(params, true, tol);
  return entries_by_basis_change(params, w0, basis, tilde).blocks;
}

}  // namespace tdpair
