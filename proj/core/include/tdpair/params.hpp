#pragma once

#include <complex>
#include <string>
#include <vector>

namespace tdpair {

using Complex = std::complex<double>;

/// Absolute tolerances guarding the genericity assumptions.
struct Tolerances {
  /// Lower bound on |sinh(alpha + m*phi/2)| denominators and on the
  /// distance |q^m - 1| from roots of unity.
  double genericity = 1e-8;

  /// Named profiles: "default", "strict" (1e-10), "loose" (1e-6).
  static Tolerances profile(const std::string& name);
  /// Reads the TDPAIR_TOL_PROFILE environment variable, falls back to default.
  static Tolerances from_env();
};

/// The scalar tuple (N, alpha, alpha*, phi, theta) that every formula in the
/// library is evaluated from. q = e^phi with phi purely imaginary; theta real.
struct ModelParams {
  int diameter = 1;          // N: number of tensor factors; matrices are 2^N x 2^N
  Complex alpha{0.0, 0.0};   // must be nonzero
  Complex alpha_star{0.0, 0.0};
  Complex phi{0.0, 0.0};     // purely imaginary, q not a root of unity
  double theta = 0.0;
};

/// Scalars derived from ModelParams.
///
/// q_half is always e^{phi/2}, never a square root of q, so there is no
/// branch ambiguity anywhere downstream.
struct DerivedScalars {
  Complex q;
  Complex q_half;
  Complex k_plus;    // -(q^{1/2} - q^{-1/2}) e^{i theta} / 2
  Complex k_minus;   // conjugate of k_plus
  Complex rho;       // (q^{1/2}+q^{-1/2})^2 k+ k-  ==  -(q - q^{-1})^2 / 4
};

/// Outcome of validate(): empty means every downstream formula is well
/// defined at the given tolerances.
struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

/// Checks all genericity invariants. Report-style, never throws.
///
/// Guards: N >= 1; Re(phi) = 0; alpha, alpha* nonzero; |q^m - 1| above
/// tolerance for m = 1..4N; |sinh(alpha + m phi/2)| and
/// |sinh(alpha* + m phi/2)| above tolerance for |m| <= N+1.
ValidationReport validate(const ModelParams& params, const Tolerances& tol = {});

/// Computes q, q^{1/2}, k+-, rho. Throws std::invalid_argument when
/// validate() reports violations.
DerivedScalars derive(const ModelParams& params, const Tolerances& tol = {});

/// Substitution n->s, alpha <-> -alpha*, phi -> -phi, theta -> theta + pi.
/// Maps the direct block entries onto the dual ("tilde") ones and is an
/// involution on the parameter set.
ModelParams dual_substitution(const ModelParams& params);

}  // namespace tdpair
