#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <Eigen/SVD>

#include "tdpair/construct.hpp"
#include "tdpair/spectral.hpp"
#include "test_helpers.hpp"

using namespace tdpair;
using tdtest::sample;

namespace {

// Brute-force oracle: all sign sequences of a given level, in no particular
// order, to check membership and counts against.
std::set<std::vector<int>> enumerate_level(int n_factors, int level) {
  std::set<std::vector<int>> out;
  for (long mask = 0; mask < (1L << n_factors); ++mask) {
    std::vector<int> eps(n_factors);
    int minus = 0;
    for (int l = 0; l < n_factors; ++l) {
      eps[l] = (mask >> l) & 1 ? -1 : +1;
      minus += (mask >> l) & 1;
    }
    if (minus == level) out.insert(eps);
  }
  return out;
}

}  // namespace

TEST_CASE("canonical order: small closed-form cases") {
  CHECK(canonical_order(1, 0) == std::vector<std::vector<int>>{{+1}});
  CHECK(canonical_order(1, 1) == std::vector<std::vector<int>>{{-1}});
  CHECK(canonical_order(2, 1) == std::vector<std::vector<int>>{{-1, +1}, {+1, -1}});

  // Diameter 3, level 1: the first two extend the diameter-2 level-1
  // sequences by +1, the third extends the level-0 sequence by -1.
  const auto order = canonical_order(3, 1);
  REQUIRE(order.size() == 3);
  CHECK(order[0] == std::vector<int>{-1, +1, +1});
  CHECK(order[1] == std::vector<int>{+1, -1, +1});
  CHECK(order[2] == std::vector<int>{+1, +1, -1});
}

TEST_CASE("canonical order matches the brute-force enumeration") {
  for (int n = 1; n <= 6; ++n) {
    for (int level = 0; level <= n; ++level) {
      const auto order = canonical_order(n, level);
      CHECK(static_cast<long>(order.size()) == binomial(n, level));
      const auto want = enumerate_level(n, level);
      const std::set<std::vector<int>> got(order.begin(), order.end());
      CHECK(got == want);
    }
  }
}

TEST_CASE("canonical order rejects out-of-range levels") {
  CHECK_THROWS_AS(canonical_order(3, 4), std::out_of_range);
  CHECK_THROWS_AS(canonical_order(3, -1), std::out_of_range);
}

TEST_CASE("(level, rank) <-> epsilons is a bijection up to diameter 10") {
  for (int n = 1; n <= 10; ++n) {
    long total = 0;
    for (int level = 0; level <= n; ++level) {
      const auto order = canonical_order(n, level);
      total += order.size();
      for (size_t r = 0; r < order.size(); ++r) {
        const EigenIndex idx = eigen_index_of(order[r]);
        CHECK(idx.level == level);
        CHECK(idx.rank == static_cast<int>(r + 1));
        const EigenIndex back = make_eigen_index(n, level, idx.rank);
        CHECK(back.epsilons == order[r]);
      }
    }
    CHECK(total == (1L << n));
  }
}

TEST_CASE("psi vector: N=1 explicit components") {
  const ModelParams p = sample(1);
  const Vector v = psi_vector(p, make_eigen_index(1, 0, 1));
  REQUIRE(v.size() == 2);
  CHECK(std::abs(v(0) - std::exp(p.alpha + Complex(0, p.theta))) < 1e-15);
  CHECK(v(1) == Complex(1.0));
}

TEST_CASE("psi vector: N=2 all-plus components in the (f2 x f1) convention") {
  const ModelParams p = sample(2);
  const Vector v = psi_vector(p, eigen_index_of({+1, +1}));
  const Complex itheta(0, p.theta);
  REQUIRE(v.size() == 4);
  CHECK(std::abs(v(0) - std::exp(2.0 * p.alpha + p.phi / 2.0 + 2.0 * itheta)) < 1e-14);
  CHECK(std::abs(v(1) - std::exp(p.alpha + p.phi / 2.0 + itheta)) < 1e-14);
  CHECK(std::abs(v(2) - std::exp(p.alpha + itheta)) < 1e-14);
  CHECK(v(3) == Complex(1.0));
}

TEST_CASE("phi vector: N=1 explicit components") {
  const ModelParams p = sample(1);
  const Vector v = phi_vector(p, make_eigen_index(1, 0, 1));
  CHECK(std::abs(v(0) + std::exp(-p.alpha_star + Complex(0, p.theta))) < 1e-15);
  CHECK(v(1) == Complex(1.0));
}

TEST_CASE("tilde vectors are the literal parameter substitutions") {
  const ModelParams p = sample(1);
  const Vector psit = basis_vector(p, BasisKind::psi_tilde, make_eigen_index(1, 0, 1));
  CHECK(std::abs(psit(0) + std::exp(-p.alpha + Complex(0, p.theta))) < 1e-15);
  CHECK(psit(1) == Complex(1.0));

  const Vector phit = basis_vector(p, BasisKind::phi_tilde, make_eigen_index(1, 1, 1));
  CHECK(std::abs(phit(0) - std::exp(-p.alpha_star + Complex(0, p.theta))) < 1e-15);
}

TEST_CASE("closed-form psi vectors diagonalize W0") {
  for (int n = 1; n <= 6; ++n) {
    const ModelParams p = sample(n);
    const Matrix w0 = build_w0(p);
    const EigenBasis basis = eigenbasis(p, BasisKind::psi);
    for (size_t i = 0; i < basis.vectors.size(); ++i) {
      const Vector& v = basis.vectors[i];
      const double res = (w0 * v - basis.eigenvalues[i] * v).norm() / v.norm();
      CHECK(res <= 1e-11);
    }
  }
}

TEST_CASE("closed-form phi vectors diagonalize W1, with (1,2,1) multiplicities at N=2") {
  const ModelParams p = sample(2);
  const Matrix w1 = build_w1(p);
  const EigenBasis basis = eigenbasis(p, BasisKind::phi);
  std::map<int, int> counts;
  for (size_t i = 0; i < basis.vectors.size(); ++i) {
    const Vector& v = basis.vectors[i];
    CHECK((w1 * v - basis.eigenvalues[i] * v).norm() / v.norm() <= 1e-11);
    counts[basis.indices[i].level]++;
  }
  CHECK(counts[0] == 1);
  CHECK(counts[1] == 2);
  CHECK(counts[2] == 1);
}

TEST_CASE("phi residuals stay closed-form small for complex alpha too") {
  for (const auto& p : tdtest::complex_tuples(4)) {
    const Matrix w1 = build_w1(p);
    const EigenBasis basis = eigenbasis(p, BasisKind::phi);
    for (size_t i = 0; i < basis.vectors.size(); ++i) {
      const Vector& v = basis.vectors[i];
      CHECK((w1 * v - basis.eigenvalues[i] * v).norm() / v.norm() <= 1e-11);
    }
  }
}

TEST_CASE("pairing is the bilinear canonical form") {
  Vector e0 = Vector::Zero(4), e1 = Vector::Zero(4);
  e0(0) = 1.0;
  e1(1) = 1.0;
  CHECK(pairing(e0, e0) == Complex(1.0));
  CHECK(pairing(e0, e1) == Complex(0.0));
  const Complex i(0.0, 1.0);
  CHECK(pairing(i * e0, e0) == i);  // not conjugated
  CHECK_THROWS_AS(pairing(e0, Vector::Zero(2)), std::invalid_argument);
}

TEST_CASE("norm coefficients: N=1 closed forms") {
  const ModelParams p = sample(1);
  const NormCoeffs norms = norm_coeffs(p, false);
  CHECK(std::abs(norms.at(0, 1) - 1.0 / (1.0 - std::exp(2.0 * p.alpha))) < 1e-14);
  CHECK(std::abs(norms.at(1, 1) - 1.0 / (1.0 - std::exp(-2.0 * p.alpha))) < 1e-14);
}

TEST_CASE("biorthogonality of the dual family, imaginary and complex regimes") {
  auto run = [](const ModelParams& p) {
    const EigenBasis basis = eigenbasis(p, BasisKind::psi);
    const NormCoeffs norms = norm_coeffs(p, false);
    for (size_t a = 0; a < basis.indices.size(); ++a) {
      const Vector dual = dual_vector(p, BasisKind::psi, basis.indices[a]);
      const Complex scale = norms.at(basis.indices[a].level, basis.indices[a].rank);
      for (size_t b = 0; b < basis.indices.size(); ++b) {
        const Complex got = scale * pairing(dual, basis.vectors[b]);
        const Complex want = a == b ? Complex(1.0) : Complex(0.0);
        CHECK(std::abs(got - want) <= 1e-10);
      }
    }
  };
  run(sample(4));
  for (const auto& p : tdtest::complex_tuples(3)) run(p);
}

TEST_CASE("phi-family biorthogonality with the tilde norms") {
  const ModelParams p = sample(3);
  const EigenBasis basis = eigenbasis(p, BasisKind::phi);
  const NormCoeffs tilde = norm_coeffs(p, true);
  for (size_t a = 0; a < basis.indices.size(); ++a) {
    const Vector dual = dual_vector(p, BasisKind::phi, basis.indices[a]);
    const Complex scale = tilde.at(basis.indices[a].level, basis.indices[a].rank);
    for (size_t b = 0; b < basis.indices.size(); ++b) {
      const Complex got = scale * pairing(dual, basis.vectors[b]);
      const Complex want = a == b ? Complex(1.0) : Complex(0.0);
      CHECK(std::abs(got - want) <= 1e-10);
    }
  }
}

TEST_CASE("duals coincide with conjugated tilde vectors on the imaginary regime") {
  const ModelParams p = sample(3);
  const EigenBasis basis = eigenbasis(p, BasisKind::psi);
  for (const auto& idx : basis.indices) {
    const Vector dual = dual_vector(p, BasisKind::psi, idx);
    const Vector tilde = basis_vector(p, BasisKind::psi_tilde, idx);
    CHECK((dual - tilde.conjugate()).norm() <= 1e-13 * dual.norm());
  }
}

TEST_CASE("cross-level pairing vanishes: N=2 example") {
  const ModelParams p = sample(2);
  const Vector dual = dual_vector(p, BasisKind::psi, make_eigen_index(2, 0, 1));
  const Vector psi11 = psi_vector(p, make_eigen_index(2, 1, 1));
  CHECK(std::abs(pairing(dual, psi11)) <= 1e-14);
}

TEST_CASE("norm table equals the direct reciprocal pairing: N=2") {
  const ModelParams p = sample(2);
  const NormCoeffs norms = norm_coeffs(p, false);
  for (int n = 0; n <= 2; ++n)
    for (int i = 1; i <= binomial(2, n); ++i) {
      const EigenIndex idx = make_eigen_index(2, n, i);
      const Complex direct =
          1.0 / pairing(dual_vector(p, BasisKind::psi, idx), psi_vector(p, idx));
      CHECK(std::abs(norms.at(n, i) - direct) <= 1e-12 * std::abs(direct));
    }
}

TEST_CASE("completeness: the psi family has finite condition number") {
  for (int n : {2, 4, 6}) {
    const ModelParams p = sample(n);
    const EigenBasis basis = eigenbasis(p, BasisKind::psi);
    Matrix columns(basis.vectors[0].size(), basis.vectors.size());
    for (size_t i = 0; i < basis.vectors.size(); ++i) columns.col(i) = basis.vectors[i];
    Eigen::JacobiSVD<Matrix> svd(columns);
    const double cond =
        svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
    CHECK(std::isfinite(cond));
    CHECK(cond < 1e8);
  }
}

TEST_CASE("eigenvalue ratio identity for both sequences") {
  for (int n : {3, 5, 10}) {
    const ModelParams p = sample(n);
    const DerivedScalars s = derive(p);
    const Complex target = s.q + 1.0 / s.q + 1.0;
    for (BasisKind kind : {BasisKind::psi, BasisKind::phi}) {
      for (int m = 2; m + 1 <= n; ++m) {
        auto lam = [&](int j) { return eigenvalue_of_level(p, kind, j); };
        const Complex ratio = (lam(m - 2) - lam(m + 1)) / (lam(m - 1) - lam(m));
        CHECK(std::abs(ratio - target) <= 1e-12 * std::abs(target));
      }
    }
  }
}
