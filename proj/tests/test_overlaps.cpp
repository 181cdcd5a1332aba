#include <doctest.h>

#include <cmath>

#include "tdpair/blocktri.hpp"
#include "tdpair/overlaps.hpp"
#include "test_helpers.hpp"

using namespace tdpair;
using tdtest::sample;

TEST_CASE("U: base case and N=1 closed form") {
  ModelParams p = sample(1);
  for (int s : {0, 1}) {
    const Complex want = std::exp(p.alpha - double(1 - 2 * s) * p.alpha_star) + 1.0;
    CHECK(std::abs(overlap_U(p, 1, s) - want) < 1e-14);
  }
  CHECK_THROWS_AS(overlap_U(p, 2, 0), std::out_of_range);
}

TEST_CASE("U: N=2 explicit product forms") {
  const ModelParams p = sample(2);
  const Complex al = p.alpha, as = p.alpha_star, phi = p.phi;
  auto e = [](Complex z) { return std::exp(z); };
  CHECK(std::abs(overlap_U(p, 1, 0) - (e(al - as) + 1.0) * (e(al - as) + 1.0)) < 1e-13);
  CHECK(std::abs(overlap_U(p, 1, 1) - (e(al - as + phi) + 1.0) * (e(al + as) + 1.0)) < 1e-13);
  CHECK(std::abs(overlap_U(p, 2, 1) - (e(al + as + phi) + 1.0) * (e(al - as) + 1.0)) < 1e-13);
  CHECK(std::abs(overlap_U(p, 1, 2) - (e(al + as) + 1.0) * (e(al + as) + 1.0)) < 1e-13);
}

TEST_CASE("U equals the dual pairing with the ground vector") {
  for (int n : {1, 2, 3, 4}) {
    const ModelParams p = sample(n);
    const Vector ground = psi_vector(p, make_eigen_index(n, 0, 1));
    for (int s = 0; s <= n; ++s)
      for (int k = 1; k <= binomial(n, s); ++k) {
        const Vector dual = dual_vector(p, BasisKind::phi, make_eigen_index(n, s, k));
        const Complex got = pairing(dual, ground);
        CHECK(std::abs(got - overlap_U(p, k, s)) <= 1e-12 * std::abs(got));
      }
  }
}

TEST_CASE("overlap table: normalization row is identically one") {
  for (int n : {1, 2, 4, 6}) {
    const OverlapTable table = overlap_table(sample(n));
    for (int s = 0; s <= n; ++s)
      for (int k = 1; k <= binomial(n, s); ++k)
        CHECK(std::abs(table.f(0, 1, k, s) - 1.0) <= 1e-12);
  }
}

TEST_CASE("N=2 table entry against an independent conjugating-pairing oracle") {
  // Recompute each overlap from the tilde vector, conjugated
  // componentwise, without going through the dual-vector code path.
  const ModelParams p = sample(2);
  const OverlapTable table = overlap_table(p);
  for (int s = 0; s <= 2; ++s)
    for (int k = 1; k <= binomial(2, s); ++k)
      for (int n = 0; n <= 2; ++n)
        for (int i = 1; i <= binomial(2, n); ++i) {
          const Vector tilde =
              basis_vector(p, BasisKind::phi_tilde, make_eigen_index(2, s, k));
          const Vector psi = psi_vector(p, make_eigen_index(2, n, i));
          const Complex overlap = pairing(tilde.conjugate(), psi);
          const Complex want = overlap / overlap_U(p, k, s);
          CHECK(std::abs(table.f(n, i, k, s) - want) <=
                1e-12 * std::max(1.0, std::abs(want)));
        }
}

TEST_CASE("N=1 overlap is the first Askey-Wilson polynomial") {
  const ModelParams p = sample(1);
  const OverlapTable table = overlap_table(p);
  const BlockTriMatrix blocks = entries_recursive(p);
  const Complex a0 = blocks.a[0](0, 0), b0 = blocks.b[0](0, 0);
  for (int s : {0, 1}) {
    const Complex want = (table.lambda_tilde[s] - a0) / b0;
    CHECK(std::abs(table.f(1, 1, 1, s) - want) <= 1e-12 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("recurrence residual over N <= 5, five tuples") {
  for (int n = 1; n <= 5; ++n) {
    for (const auto& p : tdtest::imaginary_tuples(n)) {
      const OverlapTable table = overlap_table(p);
      const BlockTriMatrix blocks = entries_recursive(p);
      CHECK(check_recurrence(p, table, blocks).max_relative <= 1e-9);
    }
  }
}

TEST_CASE("recurrence holds off the imaginary regime as well") {
  for (const auto& p : tdtest::complex_tuples(3)) {
    const OverlapTable table = overlap_table(p);
    CHECK(check_recurrence(p, table, entries_recursive(p)).max_relative <= 1e-9);
  }
}

TEST_CASE("perturbing one block entry is felt by the recurrence") {
  const ModelParams p = sample(2);
  const OverlapTable table = overlap_table(p);
  BlockTriMatrix blocks = entries_recursive(p);
  blocks.a[1](0, 0) += 1e-3;
  CHECK(check_recurrence(p, table, blocks).max_relative >= 1e-5);
}

TEST_CASE("q-difference: N=1 first-order displayed equations") {
  const ModelParams p = sample(1);
  const OverlapTable table = overlap_table(p);
  const BlockTriMatrix dual = dual_entries(p, BlockMethod::recursive);
  const QDiffOperator d0 = qdiff_operator(p, 0, dual, table);
  CHECK(d0.phi_bar.size() == 0);  // no level below s = 0
  // lambda_n F_n(lt_0) = bt_0 U(1)/U(0) F_n(lt_1) + at_0 F_n(lt_0)
  for (int n : {0, 1}) {
    const Complex lam = eigenvalue_of_level(p, BasisKind::psi, n);
    const Complex lhs = d0.phi(0, 0) * table.f(n, 1, 1, 1) + d0.mu(0, 0) * table.f(n, 1, 1, 0);
    CHECK(std::abs(lhs - lam * table.f(n, 1, 1, 0)) <= 1e-12);
  }
  const Complex bt0 = dual.b[0](0, 0);
  CHECK(std::abs(d0.phi(0, 0) - bt0 * table.u(1, 1) / table.u(1, 0)) <= 1e-13);
}

TEST_CASE("q-difference residual over N <= 5") {
  for (int n = 1; n <= 5; ++n) {
    for (const auto& p : tdtest::imaginary_tuples(n)) {
      const OverlapTable table = overlap_table(p);
      const BlockTriMatrix dual = dual_entries(p, BlockMethod::recursive);
      CHECK(check_qdiff(p, table, dual).max_relative <= 1e-9);
    }
  }
}

TEST_CASE("orthogonality: N=1 Gram is diag(1/N_0, 1/N_1)") {
  const ModelParams p = sample(1);
  const OverlapTable table = overlap_table(p);
  const NormCoeffs norms = norm_coeffs(p, false);
  const NormCoeffs tilde = norm_coeffs(p, true);
  const GramReport gram = weights_and_orthogonality(p, table, norms, tilde);
  CHECK(gram.max_diag_relative <= 1e-10);
  CHECK(gram.max_offdiag_relative <= 1e-10);
  for (int n : {0, 1}) {
    const Complex want = 1.0 / norms.at(n, 1);
    CHECK(std::abs(gram.gram(n, n) - want) <= 1e-10 * std::abs(want));
  }
}

TEST_CASE("orthogonality: Gram diagonal for N = 2 and N = 4") {
  for (int n : {2, 4}) {
    const ModelParams p = sample(n);
    const OverlapTable table = overlap_table(p);
    const NormCoeffs norms = norm_coeffs(p, false);
    const NormCoeffs tilde = norm_coeffs(p, true);
    const GramReport gram = weights_and_orthogonality(p, table, norms, tilde);
    CHECK(gram.max_diag_relative <= (n == 2 ? 1e-9 : 1e-8));
    CHECK(gram.max_offdiag_relative <= (n == 2 ? 1e-9 : 1e-8));
  }
}

TEST_CASE("closed forms match the overlap table at the simple spectrum points") {
  for (const auto& p0 : tdtest::imaginary_tuples(2)) {
    const ModelParams p = p0;
    const OverlapTable table = overlap_table(p);
    for (int s : {0, 2}) {
      const ClosedFormN2 cf = n2_closed_form(p, table.lambda_tilde[s]);
      CHECK(std::abs(cf.f11 - table.f(1, 1, 1, s)) <= 1e-9 * std::max(1.0, std::abs(cf.f11)));
      CHECK(std::abs(cf.f12 - table.f(1, 2, 1, s)) <= 1e-9 * std::max(1.0, std::abs(cf.f12)));
      CHECK(std::abs(cf.f21 - table.f(2, 1, 1, s)) <= 1e-9 * std::max(1.0, std::abs(cf.f21)));
    }
  }
}

TEST_CASE("closed forms solve the full recurrence system at every spectrum point") {
  // At the doubly degenerate middle eigenvalue the overlap columns for
  // k = 1, 2 differ but span the solution line of the (rank-deficient)
  // system; the rational-function values are the pointwise limit of the
  // unique generic solution and must satisfy all four equations there.
  const ModelParams p = sample(2);
  const BlockTriMatrix bl = entries_recursive(p);
  for (int s = 0; s <= 2; ++s) {
    const Complex lt = eigenvalue_of_level(p, BasisKind::phi, s);
    const ClosedFormN2 cf = n2_closed_form(p, lt);
    const Complex e1 = lt - (bl.b[0](0, 0) * cf.f11 + bl.b[0](1, 0) * cf.f12 + bl.a[0](0, 0));
    const Complex e2 = lt * cf.f11 - (bl.b[1](0, 0) * cf.f21 + bl.a[1](0, 0) * cf.f11 +
                                      bl.a[1](1, 0) * cf.f12 + bl.c[1](0, 0));
    const Complex e3 = lt * cf.f12 - (bl.b[1](0, 1) * cf.f21 + bl.a[1](0, 1) * cf.f11 +
                                      bl.a[1](1, 1) * cf.f12 + bl.c[1](0, 1));
    const Complex e4 = lt * cf.f21 - (bl.a[2](0, 0) * cf.f21 + bl.c[2](0, 0) * cf.f11 +
                                      bl.c[2](1, 0) * cf.f12);
    CHECK(std::abs(e1) <= 1e-11);
    CHECK(std::abs(e2) <= 1e-11);
    CHECK(std::abs(e3) <= 1e-11);
    CHECK(std::abs(e4) <= 1e-11);
  }
}

TEST_CASE("closed forms are invariant under alpha* -> -alpha*") {
  for (const auto& p : tdtest::imaginary_tuples(2)) {
    ModelParams flipped = p;
    flipped.alpha_star = -p.alpha_star;
    const Complex lt(0.37, 0.11);
    const ClosedFormN2 a = n2_closed_form(p, lt);
    const ClosedFormN2 b = n2_closed_form(flipped, lt);
    CHECK(std::abs(a.f11 - b.f11) <= 1e-11 * std::max(1.0, std::abs(a.f11)));
    CHECK(std::abs(a.f12 - b.f12) <= 1e-11 * std::max(1.0, std::abs(a.f12)));
    CHECK(std::abs(a.f21 - b.f21) <= 1e-11 * std::max(1.0, std::abs(a.f21)));
  }
}

TEST_CASE("closed forms refuse the pole neighborhood and other diameters") {
  const ModelParams p = sample(2);
  const ClosedFormN2 cf = n2_closed_form(p, Complex(5.0, 0.0));
  CHECK_THROWS_AS(n2_closed_form(p, cf.pole), std::domain_error);
  CHECK_THROWS_AS(n2_closed_form(sample(3), Complex(0.0)), std::domain_error);
}

TEST_CASE("root check: N=1 roots are cosh(alpha* +- phi/2)") {
  const ModelParams p = sample(1);
  const RootCheck check = eigenvalue_root_check(p);
  CHECK(check.roots.size() == 2);
  CHECK(check.max_mismatch <= 1e-11);
}

TEST_CASE("root check: N=2 cubic reproduces the dual eigenvalue sequence") {
  for (const auto& p : tdtest::imaginary_tuples(2)) {
    const RootCheck check = eigenvalue_root_check(p);
    CHECK(check.roots.size() == 3);
    CHECK(check.max_mismatch <= 1e-9);
  }
  CHECK_THROWS_AS(eigenvalue_root_check(sample(3)), std::domain_error);
}

TEST_CASE("weights are reported complex, realness only measured") {
  const ModelParams p = sample(3);
  const OverlapTable table = overlap_table(p);
  const NormCoeffs norms = norm_coeffs(p, false);
  const NormCoeffs tilde = norm_coeffs(p, true);
  const GramReport gram = weights_and_orthogonality(p, table, norms, tilde);
  CHECK(gram.max_weight_imag >= 0.0);  // measured, whatever its value
  CHECK(std::isfinite(gram.max_weight_imag));
}
