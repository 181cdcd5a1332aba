#include "tdpair/overlaps.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace tdpair {

Complex OverlapTable::f(int n, int i, int k, int s) const {
  long pos = 0;
  for (int m = 0; m < n; ++m) pos += binomial(diameter, m);
  return F[s][k - 1][pos + i - 1];
}

Complex overlap_U(const ModelParams& params, int k, int s) {
  const int N = params.diameter;
  if (s < 0 || s > N || k < 1 || k > binomial(N, s))
    throw std::out_of_range("overlap_U: index out of range");
  Complex u = 1.0;  // U^{(0)}_1(0) = 1
  int m = N, kk = k, ss = s;
  while (m >= 1) {
    const long first = binomial(m - 1, ss);
    if (kk <= first) {
      u *= std::exp(params.alpha - params.alpha_star + double(ss) * params.phi) + 1.0;
    } else {
      u *= std::exp(params.alpha + params.alpha_star + double(m - ss) * params.phi) + 1.0;
      kk -= static_cast<int>(first);
      --ss;
    }
    --m;
  }
  return u;
}

OverlapTable overlap_table(const ModelParams& params, const Tolerances& tol) {
  const int N = params.diameter;
  const EigenBasis psis = eigenbasis(params, BasisKind::psi, tol);
  const NormCoeffs tilde = norm_coeffs(params, true, tol);

  OverlapTable table;
  table.diameter = N;
  table.row_index = psis.indices;
  table.lambda_tilde.resize(N + 1);
  table.U.resize(N + 1);
  table.weights.resize(N + 1);
  table.F.resize(N + 1);

  for (int s = 0; s <= N; ++s) {
    table.lambda_tilde[s] = eigenvalue_of_level(params, BasisKind::phi, s);
    const long ranks = binomial(N, s);
    table.U[s].resize(ranks);
    table.weights[s].resize(ranks);
    table.F[s].resize(ranks);
    int k = 0;
    for (auto& eps : canonical_order(N, s)) {
      EigenIndex idx;
      idx.level = s;
      idx.rank = ++k;
      idx.epsilons = std::move(eps);
      const Complex u = overlap_U(params, k, s);
      if (std::abs(u) <= tol.genericity)
        throw std::domain_error("overlap_table: U below tolerance (overlap degeneracy)");
      table.U[s][k - 1] = u;
      table.weights[s][k - 1] = tilde.at(s, k) * u * u;
      const Vector dual = dual_vector(params, BasisKind::phi, idx);
      auto& column = table.F[s][k - 1];
      column.resize(psis.vectors.size());
      for (size_t p = 0; p < psis.vectors.size(); ++p)
        column[p] = pairing(dual, psis.vectors[p]) / u;
    }
  }
  return table;
}

ResidualReport check_recurrence(const ModelParams& params, const OverlapTable& table,
                                const BlockTriMatrix& blocks) {
  const int N = params.diameter;
  ResidualReport report;
  for (int s = 0; s <= N; ++s) {
    const Complex lt = table.lambda_tilde[s];
    for (int k = 1; k <= binomial(N, s); ++k) {
      for (int n = 0; n <= N; ++n) {
        for (int j = 1; j <= binomial(N, n); ++j) {
          const Complex lhs = lt * table.f(n, j, k, s);
          Complex rhs = 0.0;
          if (n < N)
            for (int i = 1; i <= binomial(N, n + 1); ++i)
              rhs += blocks.b[n](i - 1, j - 1) * table.f(n + 1, i, k, s);
          for (int i = 1; i <= binomial(N, n); ++i)
            rhs += blocks.a[n](i - 1, j - 1) * table.f(n, i, k, s);
          if (n > 0)
            for (int i = 1; i <= binomial(N, n - 1); ++i)
              rhs += blocks.c[n](i - 1, j - 1) * table.f(n - 1, i, k, s);
          const double rel =
              std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0});
          report.max_relative = std::max(report.max_relative, rel);
        }
      }
    }
  }
  return report;
}

QDiffOperator qdiff_operator(const ModelParams& params, int s,
                             const BlockTriMatrix& dual_blocks, const OverlapTable& table) {
  const int N = params.diameter;
  if (s < 0 || s > N) throw std::out_of_range("qdiff_operator: level out of range");
  const long ds = binomial(N, s);
  QDiffOperator op;
  op.s = s;
  op.mu = Matrix::Zero(ds, ds);
  for (long k = 1; k <= ds; ++k)
    for (long l = 1; l <= ds; ++l)
      op.mu(k - 1, l - 1) =
          dual_blocks.a[s](l - 1, k - 1) * table.u(l, s) / table.u(k, s);
  if (s < N) {
    const long dsp = binomial(N, s + 1);
    op.phi = Matrix::Zero(ds, dsp);
    for (long k = 1; k <= ds; ++k)
      for (long l = 1; l <= dsp; ++l)
        op.phi(k - 1, l - 1) =
            dual_blocks.b[s](l - 1, k - 1) * table.u(l, s + 1) / table.u(k, s);
  }
  if (s > 0) {
    const long dsm = binomial(N, s - 1);
    op.phi_bar = Matrix::Zero(ds, dsm);
    for (long k = 1; k <= ds; ++k)
      for (long l = 1; l <= dsm; ++l)
        op.phi_bar(k - 1, l - 1) =
            dual_blocks.c[s](l - 1, k - 1) * table.u(l, s - 1) / table.u(k, s);
  }
  return op;
}

ResidualReport check_qdiff(const ModelParams& params, const OverlapTable& table,
                           const BlockTriMatrix& dual_blocks) {
  const int N = params.diameter;
  ResidualReport report;
  for (int s = 0; s <= N; ++s) {
    const QDiffOperator op = qdiff_operator(params, s, dual_blocks, table);
    const long ds = binomial(N, s);
    for (int n = 0; n <= N; ++n) {
      const Complex lam = eigenvalue_of_level(params, BasisKind::psi, n);
      for (int j = 1; j <= binomial(N, n); ++j) {
        Vector fs(ds);
        for (long k = 1; k <= ds; ++k) fs(k - 1) = table.f(n, j, static_cast<int>(k), s);
        Vector lhs = op.mu * fs;
        if (s < N) {
          const long dsp = binomial(N, s + 1);
          Vector fp(dsp);
          for (long l = 1; l <= dsp; ++l) fp(l - 1) = table.f(n, j, static_cast<int>(l), s + 1);
          lhs += op.phi * fp;
        }
        if (s > 0) {
          const long dsm = binomial(N, s - 1);
          Vector fm(dsm);
          for (long l = 1; l <= dsm; ++l) fm(l - 1) = table.f(n, j, static_cast<int>(l), s - 1);
          lhs += op.phi_bar * fm;
        }
        const Vector rhs = lam * fs;
        const double rel = (lhs - rhs).norm() / std::max({lhs.norm(), rhs.norm(), 1.0});
        report.max_relative = std::max(report.max_relative, rel);
      }
    }
  }
  return report;
}

GramReport weights_and_orthogonality(const ModelParams& params, const OverlapTable& table,
                                     const NormCoeffs& norms, const NormCoeffs& tilde_norms) {
  const int N = params.diameter;
  const long dim = 1L << N;
  GramReport report;
  report.gram = Matrix::Zero(dim, dim);

  double wmax = 0.0, wimag = 0.0;
  for (int s = 0; s <= N; ++s)
    for (int k = 1; k <= binomial(N, s); ++k) {
      const Complex w = tilde_norms.at(s, k) * table.u(k, s) * table.u(k, s);
      wmax = std::max(wmax, std::abs(w));
      wimag = std::max(wimag, std::abs(w.imag()));
    }
  report.max_weight_imag = wmax > 0 ? wimag / wmax : 0.0;

  // Fixed summation order: s outer, k inner.
  for (long row = 0; row < dim; ++row) {
    for (long col = 0; col < dim; ++col) {
      Complex acc = 0.0;
      for (int s = 0; s <= N; ++s)
        for (int k = 1; k <= binomial(N, s); ++k)
          acc += table.weights[s][k - 1] * table.F[s][k - 1][row] * table.F[s][k - 1][col];
      report.gram(row, col) = acc;
    }
  }

  for (long row = 0; row < dim; ++row) {
    const EigenIndex& ri = table.row_index[row];
    const Complex drow = 1.0 / norms.at(ri.level, ri.rank);
    report.max_diag_relative =
        std::max(report.max_diag_relative,
                 std::abs(report.gram(row, row) - drow) / std::abs(drow));
    for (long col = 0; col < dim; ++col) {
      if (col == row) continue;
      const EigenIndex& ci = table.row_index[col];
      const Complex dcol = 1.0 / norms.at(ci.level, ci.rank);
      const double scale = std::sqrt(std::abs(drow) * std::abs(dcol));
      report.max_offdiag_relative =
          std::max(report.max_offdiag_relative, std::abs(report.gram(row, col)) / scale);
    }
  }
  return report;
}

namespace {

// Zeros, pole and prefactors of the three N = 2 rational functions; the
// value fields are filled in by the caller.
ClosedFormN2 closed_form_data(const ModelParams& params) {
  const Complex al = params.alpha, as = params.alpha_star, phi = params.phi;
  auto sh = [](Complex z) { return std::sinh(z); };
  auto ch = [](Complex z) { return std::cosh(z); };

  // Common denominator of the three prefactors; also 1/4 of the pole's.
  const Complex den = sh(al - phi / 2.0) * ch(as) + ch(al + phi / 2.0) * sh(al) - sh(phi / 2.0);

  ClosedFormN2 cf;
  cf.u11 = -ch(al);
  // Pole of the rational solution. The sinh(alpha + 3 phi/2) term enters with
  // coefficient +3: with it the closed forms agree with the basis-change
  // overlaps at the simple spectrum points and the leftover equation's roots
  // reproduce the dual eigenvalues.
  const Complex vnum = sh(al + 2.0 * as + phi / 2.0) + sh(al - 2.0 * as + phi / 2.0) +
                       sh(2.0 * al + as + 3.0 * phi / 2.0) +
                       sh(2.0 * al - as + 3.0 * phi / 2.0) + sh(al + phi / 2.0) -
                       3.0 * sh(al - phi / 2.0) + sh(al - 3.0 * phi / 2.0) +
                       3.0 * sh(al + 3.0 * phi / 2.0) + 3.0 * sh(as + phi / 2.0) -
                       3.0 * sh(as - phi / 2.0);
  cf.pole = vnum / (4.0 * den);

  const Complex big_u = 4.0 * ch(al + phi / 2.0) + 2.0 * ch(as + phi / 2.0) +
                        2.0 * ch(as - phi / 2.0) - 2.0 * ch(al + 3.0 * phi / 2.0) -
                        2.0 * ch(al - phi / 2.0) - ch(as + 2.0 * al - phi / 2.0) -
                        ch(as - 2.0 * al + phi / 2.0) - ch(as + 2.0 * al + 3.0 * phi / 2.0) -
                        ch(as - 2.0 * al - 3.0 * phi / 2.0);
  const Complex big_v =
      (ch(2.0 * al) + ch(2.0 * al + phi) - 2.0) *
      (8.0 + 4.0 * ch(al + as) + 4.0 * ch(al - as) + 4.0 * ch(al + as + phi) +
       4.0 * ch(al - as + phi) + 4.0 * ch(phi) - 2.0 * ch(2.0 * al) + 2.0 * ch(2.0 * al + phi) +
       ch(2.0 * al + 2.0 * as) + ch(2.0 * al - 2.0 * as) + ch(2.0 * al + 2.0 * as + phi) +
       ch(2.0 * al - 2.0 * as + phi));
  const Complex root = std::sqrt(big_v);  // principal branch; the pair is symmetric
  const Complex quad_den = 4.0 * (ch(phi / 2.0) - ch(2.0 * al + phi / 2.0));
  cf.u12_plus = (big_u + 2.0 * sh(phi / 2.0) * root) / quad_den;
  cf.u12_minus = (big_u - 2.0 * sh(phi / 2.0) * root) / quad_den;
  cf.u21 = (sh(al - as - phi / 2.0) + sh(al + as - phi / 2.0) - sh(phi / 2.0) -
            sh(3.0 * phi / 2.0)) /
           (2.0 * sh(al + phi / 2.0));

  cf.pref11 = -std::exp(-al - phi / 2.0) * sh(phi) * (ch(al) + ch(as)) / den;
  cf.pref12 = std::exp(-al - phi / 2.0) * sh(al + phi / 2.0) * sh(al) / (sh(phi / 2.0) * den);
  cf.pref21 = -std::exp(-2.0 * al) * sh(al + phi / 2.0) * (ch(al) + ch(as)) / den;
  return cf;
}

}  // namespace

ClosedFormN2 n2_closed_form(const ModelParams& params, Complex lambda_tilde,
                            const Tolerances& tol) {
  if (params.diameter != 2)
    throw std::domain_error("n2_closed_form: defined for N = 2 only");
  ClosedFormN2 cf = closed_form_data(params);
  const Complex lt = lambda_tilde;
  if (std::abs(lt - cf.pole) <= tol.genericity)
    throw std::domain_error("n2_closed_form: argument within tolerance of the pole");
  cf.f11 = cf.pref11 * (lt - cf.u11) / (lt - cf.pole);
  cf.f12 = cf.pref12 * (lt - cf.u12_plus) * (lt - cf.u12_minus) / (lt - cf.pole);
  cf.f21 = cf.pref21 * (lt - cf.u21) / (lt - cf.pole);
  return cf;
}

namespace {

// Ascending-coefficient polynomial product.
std::vector<Complex> poly_mul(const std::vector<Complex>& p, const std::vector<Complex>& q) {
  std::vector<Complex> out(p.size() + q.size() - 1, Complex(0.0));
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  return out;
}

void poly_sub(std::vector<Complex>& p, const std::vector<Complex>& q, Complex scale) {
  if (p.size() < q.size()) p.resize(q.size(), Complex(0.0));
  for (size_t i = 0; i < q.size(); ++i) p[i] -= scale * q[i];
}

std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs) {
  const int deg = static_cast<int>(coeffs.size()) - 1;
  Matrix companion = Matrix::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs[i] / coeffs[deg];
  Eigen::ComplexEigenSolver<Matrix> solver(companion);
  std::vector<Complex> roots(deg);
  for (int i = 0; i < deg; ++i) roots[i] = solver.eigenvalues()(i);
  return roots;
}

double match_multisets(const std::vector<Complex>& got, std::vector<Complex> want) {
  double worst = 0.0;
  for (const Complex& g : got) {
    size_t best = 0;
    for (size_t i = 1; i < want.size(); ++i)
      if (std::abs(g - want[i]) < std::abs(g - want[best])) best = i;
    worst = std::max(worst, std::abs(g - want[best]));
    want.erase(want.begin() + static_cast<long>(best));
  }
  return worst;
}

}  // namespace

RootCheck eigenvalue_root_check(const ModelParams& params, const Tolerances& tol) {
  const int N = params.diameter;
  if (N != 1 && N != 2)
    throw std::domain_error("eigenvalue_root_check: implemented for N = 1, 2");
  const BlockTriMatrix blocks = entries_recursive(params, tol);

  std::vector<Complex> poly;
  if (N == 1) {
    // Leftover level-1 relation with F1 = (lam - a0)/b0 substituted:
    // lam^2 - (a0 + a1) lam + a0 a1 - c1 b0.
    const Complex a0 = blocks.a[0](0, 0), a1 = blocks.a[1](0, 0);
    const Complex b0 = blocks.b[0](0, 0), c1 = blocks.c[1](0, 0);
    poly = {a0 * a1 - c1 * b0, -(a0 + a1), Complex(1.0)};
  } else {
    // Leftover (n = 1, j = 2) relation with the closed forms substituted,
    // cleared of the common pole.
    const ClosedFormN2 cf = closed_form_data(params);
    const std::vector<Complex> quad =
        poly_mul({-cf.u12_plus, Complex(1.0)}, {-cf.u12_minus, Complex(1.0)});
    poly = poly_mul(quad, {Complex(0.0), Complex(1.0)});  // lam * Q(lam)
    for (auto& coef : poly) coef *= cf.pref12;
    poly_sub(poly, quad, blocks.a[1](1, 1) * cf.pref12);
    poly_sub(poly, {-cf.u21, Complex(1.0)}, blocks.b[1](0, 1) * cf.pref21);
    poly_sub(poly, {-cf.u11, Complex(1.0)}, blocks.a[1](0, 1) * cf.pref11);
    poly_sub(poly, {-cf.pole, Complex(1.0)}, blocks.c[1](0, 1));
  }

  RootCheck check;
  check.roots = poly_roots(poly);
  for (int s = 0; s <= N; ++s)
    check.expected.push_back(eigenvalue_of_level(params, BasisKind::phi, s));
  check.max_mismatch = match_multisets(check.roots, check.expected);
  return check;
}

}  // namespace tdpair
