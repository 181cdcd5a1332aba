// Command-line front-end: builds the matrix family, exports bases, blocks and
// overlap tables, and runs the verification suites.
//
// Exit codes: 0 success, 1 tolerance breach, 2 usage error, 3 invalid params.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tdpair/blocktri.hpp"
#include "tdpair/checks.hpp"
#include "tdpair/construct.hpp"
#include "tdpair/io.hpp"
#include "tdpair/overlaps.hpp"
#include "tdpair/params.hpp"
#include "tdpair/spectral.hpp"

namespace {

struct Options {
  int diameter = 2;
  std::string alpha = "0+0.53i";
  std::string alpha_star = "0+0.71i";
  std::string phi = "0+0.437i";
  double theta = 0.4;
  std::string config_path;
  double genericity = -1.0;  // negative: use the profile default
  std::string out_path;

  int w_index = 0;
  std::string kind = "psi";
  std::string which = "direct";
  std::string method = "recursive";
  std::string check = "all";
  bool closed_form = false;
};

void add_param_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--n", opt.diameter, "diameter N (tensor factors)");
  cmd->add_option("--alpha", opt.alpha, "alpha as RE+IMi");
  cmd->add_option("--alpha-star", opt.alpha_star, "alpha* as RE+IMi");
  cmd->add_option("--phi", opt.phi, "phi as RE+IMi (purely imaginary)");
  cmd->add_option("--theta", opt.theta, "theta (real)");
  cmd->add_option("--config", opt.config_path, "JSON config file with the parameters");
  cmd->add_option("--genericity-tol", opt.genericity, "genericity tolerance override");
  cmd->add_option("--out", opt.out_path, "output file (stdout when omitted)");
}

tdpair::ModelParams resolve_params(const CLI::App* cmd, const Options& opt,
                                   tdpair::Tolerances* config_tol = nullptr) {
  tdpair::ModelParams params;
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) throw std::invalid_argument("cannot read config: " + opt.config_path);
    tdpair::json j;
    in >> j;
    params = tdpair::params_from_json(j);
    if (config_tol && j.contains("tolerances") && j["tolerances"].contains("genericity"))
      config_tol->genericity = j["tolerances"]["genericity"].get<double>();
  }
  if (opt.config_path.empty() || cmd->count("--n")) params.diameter = opt.diameter;
  if (opt.config_path.empty() || cmd->count("--alpha"))
    params.alpha = tdpair::parse_complex(opt.alpha);
  if (opt.config_path.empty() || cmd->count("--alpha-star"))
    params.alpha_star = tdpair::parse_complex(opt.alpha_star);
  if (opt.config_path.empty() || cmd->count("--phi"))
    params.phi = tdpair::parse_complex(opt.phi);
  if (opt.config_path.empty() || cmd->count("--theta")) params.theta = opt.theta;
  return params;
}

// Precedence: TDPAIR_TOL_PROFILE < config file < explicit flag.
std::pair<tdpair::ModelParams, tdpair::Tolerances> resolve(const CLI::App* cmd,
                                                           const Options& opt) {
  tdpair::Tolerances tol = tdpair::Tolerances::from_env();
  const tdpair::ModelParams params = resolve_params(cmd, opt, &tol);
  if (opt.genericity > 0) tol.genericity = opt.genericity;
  return {params, tol};
}

void emit(const Options& opt, const std::string& payload) {
  if (opt.out_path.empty())
    std::cout << payload << '\n';
  else
    tdpair::write_text_file(opt.out_path, payload);
}

int require_valid(const tdpair::ModelParams& params, const tdpair::Tolerances& tol) {
  const tdpair::ValidationReport report = tdpair::validate(params, tol);
  if (report.ok()) return 0;
  std::cerr << "invalid parameters: " << report.to_string() << '\n';
  return 3;
}

tdpair::BasisKind kind_from_string(const std::string& name) {
  if (name == "psi") return tdpair::BasisKind::psi;
  if (name == "phi") return tdpair::BasisKind::phi;
  if (name == "psi-tilde" || name == "psi_tilde") return tdpair::BasisKind::psi_tilde;
  if (name == "phi-tilde" || name == "phi_tilde") return tdpair::BasisKind::phi_tilde;
  throw CLI::ValidationError("--kind", "unknown basis kind: " + name);
}

int cmd_build(const CLI::App* cmd, const Options& opt) {
  const auto [params, tol] = resolve(cmd, opt);
  if (int rc = require_valid(params, tol)) return rc;
  const tdpair::Matrix w =
      opt.w_index == 0 ? tdpair::build_w0(params, tol) : tdpair::build_w1(params, tol);
  emit(opt, tdpair::matrix_to_json(w, params).dump(2));
  return 0;
}

int cmd_basis(const CLI::App* cmd, const Options& opt) {
  const auto [params, tol] = resolve(cmd, opt);
  if (int rc = require_valid(params, tol)) return rc;
  const auto basis = tdpair::eigenbasis(params, kind_from_string(opt.kind), tol);
  emit(opt, tdpair::basis_to_json(basis).dump(2));
  return 0;
}

int cmd_blocks(const CLI::App* cmd, const Options& opt) {
  const auto [params, tol] = resolve(cmd, opt);
  if (int rc = require_valid(params, tol)) return rc;
  tdpair::BlockTriMatrix blocks;
  const bool dual = opt.which == "dual";
  if (opt.method == "recursive") {
    blocks = dual ? tdpair::dual_entries(params, tdpair::BlockMethod::recursive, tol)
                  : tdpair::entries_recursive(params, tol);
  } else {
    blocks = dual ? tdpair::dual_entries(params, tdpair::BlockMethod::basis_change, tol)
                  : tdpair::entries_by_basis_change(params, tol).blocks;
  }
  emit(opt, tdpair::blocks_to_json(blocks).dump(2));
  return 0;
}

int cmd_overlaps(const CLI::App* cmd, const Options& opt) {
  const auto [params, tol] = resolve(cmd, opt);
  if (int rc = require_valid(params, tol)) return rc;
  const auto table = tdpair::overlap_table(params, tol);

  if (opt.closed_form) {
    tdpair::json out = tdpair::json::array();
    for (int s = 0; s <= params.diameter; ++s) {
      const auto cf = tdpair::n2_closed_form(params, table.lambda_tilde[s], tol);
      out.push_back({{"s", s},
                     {"lambda_tilde", tdpair::to_json(table.lambda_tilde[s])},
                     {"f11", tdpair::to_json(cf.f11)},
                     {"f12", tdpair::to_json(cf.f12)},
                     {"f21", tdpair::to_json(cf.f21)},
                     {"pole", tdpair::to_json(cf.pole)}});
    }
    emit(opt, out.dump(2));
    return 0;
  }

  if (cmd->count("--check")) {
    bool pass = true;
    tdpair::json out;
    if (opt.check == "recurrence") {
      const auto r = tdpair::check_recurrence(params, table, tdpair::entries_recursive(params, tol));
      pass = r.max_relative <= 1e-9;
      out = {{"check", "recurrence"}, {"max_relative", r.max_relative}, {"pass", pass}};
    } else if (opt.check == "qdiff") {
      const auto dual = tdpair::dual_entries(params, tdpair::BlockMethod::recursive, tol);
      const auto r = tdpair::check_qdiff(params, table, dual);
      pass = r.max_relative <= 1e-9;
      out = {{"check", "qdiff"}, {"max_relative", r.max_relative}, {"pass", pass}};
    } else if (opt.check == "orthogonality") {
      const auto norms = tdpair::norm_coeffs(params, false, tol);
      const auto tilde = tdpair::norm_coeffs(params, true, tol);
      const auto gram = tdpair::weights_and_orthogonality(params, table, norms, tilde);
      pass = gram.max_diag_relative <= 1e-8 && gram.max_offdiag_relative <= 1e-8;
      out = tdpair::overlap_report_to_json(gram, table);
      out["pass"] = pass;
    } else {
      throw CLI::ValidationError("--check", "unknown overlap check: " + opt.check);
    }
    emit(opt, out.dump(2));
    return pass ? 0 : 1;
  }

  emit(opt, tdpair::overlap_table_to_csv(table));
  return 0;
}

int cmd_verify(const CLI::App* cmd, const Options& opt) {
  const auto [params, tol] = resolve(cmd, opt);
  if (int rc = require_valid(params, tol)) return rc;
  const auto results = tdpair::run_check(opt.check, params, tol);
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("%-28s residual %.3e  tolerance %.1e  %s\n", r.name.c_str(), r.residual,
                r.tolerance, r.pass ? "pass" : "FAIL");
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}

int cmd_report(const CLI::App* cmd, const Options& opt) {
  const auto [params, tol] = resolve(cmd, opt);
  if (int rc = require_valid(params, tol)) return rc;
  const auto results = tdpair::run_all_checks(params, tol);
  tdpair::json checks = tdpair::json::array();
  bool all_pass = true;
  for (const auto& r : results) {
    checks.push_back({{"name", r.name},
                      {"residual", r.residual},
                      {"tolerance", r.tolerance},
                      {"pass", r.pass},
                      {"detail", r.detail}});
    all_pass = all_pass && r.pass;
  }
  tdpair::json out{{"params", tdpair::params_to_json(params)},
                   {"checks", std::move(checks)},
                   {"pass", all_pass}};
  emit(opt, out.dump(2));
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tridiagonal-pair construction and verification toolkit"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* build = app.add_subcommand("build", "construct W0 or W1 and export as JSON");
  build->add_option("--w", opt.w_index, "which generator (0 or 1)")
      ->check(CLI::Range(0, 1));
  add_param_options(build, opt);

  CLI::App* basis = app.add_subcommand("basis", "export a closed-form eigenbasis");
  basis->add_option("--kind", opt.kind, "psi | phi | psi-tilde | phi-tilde");
  add_param_options(basis, opt);

  CLI::App* blocks = app.add_subcommand("blocks", "export block-tridiagonal entries");
  blocks->add_option("--which", opt.which, "direct | dual")
      ->check(CLI::IsMember({"direct", "dual"}));
  blocks->add_option("--method", opt.method, "recursive | oracle")
      ->check(CLI::IsMember({"recursive", "oracle"}));
  add_param_options(blocks, opt);

  CLI::App* overlaps = app.add_subcommand("overlaps", "overlap table, closed forms, checks");
  overlaps->add_flag("--closed-form", opt.closed_form, "emit the N=2 closed forms");
  overlaps->add_option("--check", opt.check, "recurrence | qdiff | orthogonality");
  add_param_options(overlaps, opt);

  CLI::App* verify = app.add_subcommand("verify", "run a residual suite, exit 1 on breach");
  std::vector<std::string> suites = tdpair::check_names();
  suites.push_back("all");
  verify->add_option("--check", opt.check, "suite name or 'all'")
      ->check(CLI::IsMember(suites));
  add_param_options(verify, opt);

  CLI::App* report = app.add_subcommand("report", "JSON summary of all checks");
  add_param_options(report, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (build->parsed()) return cmd_build(build, opt);
    if (basis->parsed()) return cmd_basis(basis, opt);
    if (blocks->parsed()) return cmd_blocks(blocks, opt);
    if (overlaps->parsed()) return cmd_overlaps(overlaps, opt);
    if (verify->parsed()) return cmd_verify(verify, opt);
    if (report->parsed()) return cmd_report(report, opt);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 2;
}
