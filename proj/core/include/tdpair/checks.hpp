#pragma once

#include <string>
#include <vector>

#include "tdpair/params.hpp"

namespace tdpair {

/// One verification outcome: a named residual against its tolerance.
struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

/// Names accepted by run_check / the CLI `verify` subcommand.
/// "all" runs every one of them.
std::vector<std::string> check_names();

/// Runs one named residual suite at the given parameters:
///   tridiagonal  - both relation residuals
///   eigenbasis   - closed-form eigenvector residuals and multiplicities
///   ratio        - eigenvalue-ratio identity, both sequences
///   blocks       - recursion vs basis-change oracle, leakage, trace, spectrum
///   recurrence   - overlap recurrence residual
///   qdiff        - q-difference residual
///   orthogonality- Gram-matrix deviation
///   aw           - Askey-Wilson fit residual (pass = below tol for N = 1,
///                  above the failure floor for N >= 2)
///   roots        - leftover-equation root check (N <= 2 only)
std::vector<CheckResult> run_check(const std::string& name, const ModelParams& params,
                                   const Tolerances& tol = {});

/// Every check that is defined at the given diameter.
std::vector<CheckResult> run_all_checks(const ModelParams& params, const Tolerances& tol = {});

}  // namespace tdpair
