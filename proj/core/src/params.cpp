#include "tdpair/params.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace tdpair {

Tolerances Tolerances::profile(const std::string& name) {
  Tolerances tol;
  if (name == "strict") {
    tol.genericity = 1e-10;
  } else if (name == "loose") {
    tol.genericity = 1e-6;
  } else if (name != "default" && !name.empty()) {
    throw std::invalid_argument("unknown tolerance profile: " + name);
  }
  return tol;
}

Tolerances Tolerances::from_env() {
  const char* profile = std::getenv("TDPAIR_TOL_PROFILE");
  return Tolerances::profile(profile ? profile : "default");
}

std::string ValidationReport::to_string() const {
  if (ok()) return "valid";
  std::ostringstream out;
  for (size_t i = 0; i < violations.size(); ++i) {
    if (i) out << "; ";
    out << violations[i];
  }
  return out.str();
}

ValidationReport validate(const ModelParams& params, const Tolerances& tol) {
  ValidationReport report;
  auto fail = [&report](const std::string& msg) { report.violations.push_back(msg); };

  if (params.diameter < 1) fail("N must be a positive integer");
  if (std::abs(params.phi.real()) > tol.genericity)
    fail("phi must be purely imaginary");
  if (std::abs(params.alpha) <= tol.genericity) fail("alpha must be nonzero");
  if (std::abs(params.alpha_star) <= tol.genericity) fail("alpha* must be nonzero");
  if (!report.ok()) return report;

  const Complex q = std::exp(params.phi);
  Complex qm = 1.0;
  for (int m = 1; m <= 4 * params.diameter; ++m) {
    qm *= q;
    if (std::abs(qm - 1.0) <= tol.genericity) {
      std::ostringstream msg;
      msg << "q is within tolerance of a root of unity (q^" << m << " = 1)";
      fail(msg.str());
      break;
    }
  }

  for (int m = -(params.diameter + 1); m <= params.diameter + 1; ++m) {
    const Complex shift = double(m) * params.phi / 2.0;
    if (std::abs(std::sinh(params.alpha + shift)) <= tol.genericity) {
      std::ostringstream msg;
      msg << "sinh(alpha + " << m << " phi/2) vanishes within tolerance";
      fail(msg.str());
    }
    if (std::abs(std::sinh(params.alpha_star + shift)) <= tol.genericity) {
      std::ostringstream msg;
      msg << "sinh(alpha* + " << m << " phi/2) vanishes within tolerance";
      fail(msg.str());
    }
  }
  return report;
}

DerivedScalars derive(const ModelParams& params, const Tolerances& tol) {
  const ValidationReport report = validate(params, tol);
  if (!report.ok())
    throw std::invalid_argument("invalid model parameters: " + report.to_string());

  DerivedScalars s;
  s.q = std::exp(params.phi);
  s.q_half = std::exp(params.phi / 2.0);  // principal e^{phi/2}, never sqrt(q)
  s.k_plus = -(s.q_half - 1.0 / s.q_half) * std::exp(Complex(0.0, params.theta)) / 2.0;
  s.k_minus = std::conj(s.k_plus);
  s.rho = (s.q_half + 1.0 / s.q_half) * (s.q_half + 1.0 / s.q_half) * s.k_plus * s.k_minus;
  return s;
}

ModelParams dual_substitution(const ModelParams& params) {
  ModelParams out = params;
  out.alpha = -params.alpha_star;
  out.alpha_star = -params.alpha;
  out.phi = -params.phi;
  out.theta = params.theta + std::acos(-1.0);
  return out;
}

}  // namespace tdpair
