#include "tdpair/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace tdpair {

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

std::vector<std::vector<int>> canonical_order(int diameter, int level) {
  if (diameter < 0) throw std::out_of_range("canonical_order: negative diameter");
  if (level < 0 || level > diameter)
    throw std::out_of_range("canonical_order: level out of range");
  if (diameter == 0) return {{}};
  std::vector<std::vector<int>> out;
  out.reserve(binomial(diameter, level));
  if (level <= diameter - 1) {
    for (auto& eps : canonical_order(diameter - 1, level)) {
      eps.push_back(+1);
      out.push_back(std::move(eps));
    }
  }
  if (level >= 1) {
    for (auto& eps : canonical_order(diameter - 1, level - 1)) {
      eps.push_back(-1);
      out.push_back(std::move(eps));
    }
  }
  return out;
}

EigenIndex make_eigen_index(int diameter, int level, int rank) {
  if (rank < 1 || rank > binomial(diameter, level))
    throw std::out_of_range("make_eigen_index: rank out of range");
  EigenIndex idx;
  idx.level = level;
  idx.rank = rank;
  idx.epsilons = canonical_order(diameter, level)[rank - 1];
  return idx;
}

EigenIndex eigen_index_of(std::vector<int> epsilons) {
  int sum = 0;
  for (int e : epsilons) {
    if (e != 1 && e != -1)
      throw std::invalid_argument("eigen_index_of: signs must be +1 or -1");
    sum += e;
  }
  const int diameter = static_cast<int>(epsilons.size());
  EigenIndex idx;
  idx.level = (diameter - sum) / 2;
  // Walk the recursion backwards: a trailing +1 stays in the first family,
  // a trailing -1 lands after the C(M-1, n) first-family ranks.
  long rank = 1;
  int n = idx.level;
  for (int m = diameter; m >= 1; --m) {
    if (epsilons[m - 1] == -1) {
      rank += binomial(m - 1, n);
      --n;
    }
  }
  idx.rank = static_cast<int>(rank);
  idx.epsilons = std::move(epsilons);
  return idx;
}

Complex eigenvalue_of_level(const ModelParams& params, BasisKind kind, int level) {
  const Complex base = (kind == BasisKind::psi || kind == BasisKind::psi_tilde)
                           ? params.alpha
                           : params.alpha_star;
  return std::cosh(base + double(params.diameter - 2 * level) * params.phi / 2.0);
}

namespace {

/// All six vector families share the factor shape (c_l f+ + f-); they differ
/// only in the sign in front, the parameter, and the signs of the exponent
/// and of i*theta.
struct FactorRule {
  Complex param;
  double front;      // +1 or -1 on the f+ coefficient
  double exp_sign;   // sign of eps_l (param + S_l phi/2)
  double theta_sign; // sign of i theta
};

Vector assemble_vector(const ModelParams& params, const EigenIndex& idx,
                       const FactorRule& rule) {
  if (static_cast<int>(idx.epsilons.size()) != params.diameter)
    throw std::invalid_argument("basis_vector: index inconsistent with diameter");
  Vector v(1);
  v(0) = 1.0;
  int running = 0;  // S_l = sum of the signs before factor l
  for (int l = 1; l <= params.diameter; ++l) {
    const double eps = idx.epsilons[l - 1];
    const Complex exponent =
        rule.exp_sign * eps * (rule.param + double(running) * params.phi / 2.0) +
        Complex(0.0, rule.theta_sign * params.theta);
    const Complex c = rule.front * std::exp(exponent);
    Vector next(2 * v.size());
    next.head(v.size()) = c * v;  // factor l becomes the leftmost Kronecker slot
    next.tail(v.size()) = v;
    v.swap(next);
    running += idx.epsilons[l - 1];
  }
  return v;
}

FactorRule rule_for(const ModelParams& params, BasisKind kind) {
  switch (kind) {
    case BasisKind::psi:
      return {params.alpha, +1.0, +1.0, +1.0};
    case BasisKind::phi:
      return {params.alpha_star, -1.0, -1.0, +1.0};
    case BasisKind::psi_tilde:  // phi form at alpha* -> alpha
      return {params.alpha, -1.0, -1.0, +1.0};
    case BasisKind::phi_tilde:  // psi form at alpha -> alpha*
      return {params.alpha_star, +1.0, +1.0, +1.0};
  }
  throw std::logic_error("unreachable");
}

FactorRule dual_rule_for(const ModelParams& params, BasisKind kind) {
  // Componentwise conjugate of the tilde partner on the imaginary regime,
  // continued analytically: exponent and i*theta both flip sign.
  switch (kind) {
    case BasisKind::psi:  // pairs with psi_{n[i]}
      return {params.alpha, -1.0, +1.0, -1.0};
    case BasisKind::phi:  // pairs with phi_{s[k]}
      return {params.alpha_star, +1.0, -1.0, -1.0};
    default:
      throw std::invalid_argument("dual_vector: kind must be psi or phi");
  }
}

}  // namespace

Vector basis_vector(const ModelParams& params, BasisKind kind, const EigenIndex& idx) {
  return assemble_vector(params, idx, rule_for(params, kind));
}

Vector psi_vector(const ModelParams& params, const EigenIndex& idx) {
  return basis_vector(params, BasisKind::psi, idx);
}

Vector phi_vector(const ModelParams& params, const EigenIndex& idx) {
  return basis_vector(params, BasisKind::phi, idx);
}

Vector dual_vector(const ModelParams& params, BasisKind kind, const EigenIndex& idx) {
  return assemble_vector(params, idx, dual_rule_for(params, kind));
}

int EigenBasis::position(int level, int rank) const {
  long pos = 0;
  for (int m = 0; m < level; ++m) pos += binomial(diameter, m);
  return static_cast<int>(pos) + rank - 1;
}

EigenBasis eigenbasis(const ModelParams& params, BasisKind kind, const Tolerances& tol) {
  const ValidationReport report = validate(params, tol);
  if (!report.ok())
    throw std::invalid_argument("invalid model parameters: " + report.to_string());
  EigenBasis basis;
  basis.kind = kind;
  basis.diameter = params.diameter;
  const long dim = 1L << params.diameter;
  basis.indices.reserve(dim);
  basis.vectors.reserve(dim);
  basis.eigenvalues.reserve(dim);
  for (int n = 0; n <= params.diameter; ++n) {
    const Complex lambda = eigenvalue_of_level(params, kind, n);
    int rank = 0;
    for (auto& eps : canonical_order(params.diameter, n)) {
      EigenIndex idx;
      idx.level = n;
      idx.rank = ++rank;
      idx.epsilons = std::move(eps);
      basis.vectors.push_back(basis_vector(params, kind, idx));
      basis.indices.push_back(std::move(idx));
      basis.eigenvalues.push_back(lambda);
    }
  }
  return basis;
}

Complex pairing(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) throw std::invalid_argument("pairing: dimension mismatch");
  return u.cwiseProduct(v).sum();
}

Complex NormCoeffs::at(int level, int rank) const {
  return values.at(level).at(rank - 1);
}

NormCoeffs norm_coeffs(const ModelParams& params, bool tilde, const Tolerances& tol) {
  const ValidationReport report = validate(params, tol);
  if (!report.ok())
    throw std::invalid_argument("invalid model parameters: " + report.to_string());
  // The tilde table is the same recursion at {alpha, phi} -> {-alpha*, -phi}.
  const Complex alpha = tilde ? -params.alpha_star : params.alpha;
  const Complex phi = tilde ? -params.phi : params.phi;

  std::vector<std::vector<Complex>> table = {{Complex(1.0, 0.0)}};  // diameter 0
  for (int m = 1; m <= params.diameter; ++m) {
    std::vector<std::vector<Complex>> next(m + 1);
    for (int n = 0; n <= m; ++n) {
      const long first = binomial(m - 1, n);
      const long count = binomial(m, n);
      next[n].resize(count);
      for (long i = 1; i <= count; ++i) {
        Complex denom;
        Complex prev;
        if (i <= first) {
          denom = 1.0 - std::exp(2.0 * alpha + double(m - 1 - 2 * n) * phi);
          prev = table[n][i - 1];
        } else {
          denom = 1.0 - std::exp(-2.0 * alpha - double(m + 1 - 2 * n) * phi);
          prev = table[n - 1][i - first - 1];
        }
        if (std::abs(denom) <= tol.genericity)
          throw std::domain_error("norm_coeffs: denominator below genericity tolerance");
        next[n][i - 1] = prev / denom;
      }
    }
    table.swap(next);
  }

  NormCoeffs out;
  out.diameter = params.diameter;
  out.tilde = tilde;
  out.values = std::move(table);
  return out;
}

}  // namespace tdpair
