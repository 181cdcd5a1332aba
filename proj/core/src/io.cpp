#include "tdpair/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace tdpair {

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("complex values must be two-element arrays [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("empty complex literal");

  auto parse_part = [](const std::string& part) -> double {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    size_t used = 0;
    const double value = std::stod(part, &used);
    if (used != part.size()) throw std::invalid_argument("malformed complex literal");
    return value;
  };

  // Split at the last top-level +/- (not a leading sign, not an exponent sign).
  size_t split = std::string::npos;
  for (size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const bool imag_tail = s.back() == 'i' || s.back() == 'I' || s.back() == 'j';
  try {
    if (split == std::string::npos) {
      if (imag_tail) return {0.0, parse_part(s.substr(0, s.size() - 1))};
      return {parse_part(s), 0.0};
    }
    if (!imag_tail) throw std::invalid_argument("malformed complex literal");
    const double re = parse_part(s.substr(0, split));
    const double im = parse_part(s.substr(split, s.size() - split - 1));
    return {re, im};
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse complex literal '" + text +
                                "' (expected RE, IMi or RE+IMi)");
  }
}

json params_to_json(const ModelParams& params) {
  return json{{"N", params.diameter},
              {"alpha", to_json(params.alpha)},
              {"alpha_star", to_json(params.alpha_star)},
              {"phi", to_json(params.phi)},
              {"theta", params.theta}};
}

ModelParams params_from_json(const json& j) {
  ModelParams params;
  params.diameter = j.at("N").get<int>();
  params.alpha = complex_from_json(j.at("alpha"));
  params.alpha_star = complex_from_json(j.at("alpha_star"));
  params.phi = complex_from_json(j.at("phi"));
  params.theta = j.at("theta").get<double>();
  return params;
}

json matrix_to_json(const Matrix& m, const ModelParams& params) {
  json entries = json::array();
  for (long i = 0; i < m.rows(); ++i)      // row-major
    for (long j = 0; j < m.cols(); ++j) entries.push_back(to_json(m(i, j)));
  return json{{"dim", m.rows()}, {"entries", std::move(entries)},
              {"params", params_to_json(params)}};
}

Matrix matrix_from_json(const json& j) {
  const long dim = j.at("dim").get<long>();
  const json& entries = j.at("entries");
  if (static_cast<long>(entries.size()) != dim * dim)
    throw std::invalid_argument("matrix json: entry count does not match dim^2");
  Matrix m(dim, dim);
  long pos = 0;
  for (long i = 0; i < dim; ++i)
    for (long jj = 0; jj < dim; ++jj) m(i, jj) = complex_from_json(entries[pos++]);
  return m;
}

json basis_to_json(const EigenBasis& basis) {
  json out = json::array();
  for (size_t p = 0; p < basis.indices.size(); ++p) {
    const EigenIndex& idx = basis.indices[p];
    json vec = json::array();
    for (long i = 0; i < basis.vectors[p].size(); ++i)
      vec.push_back(to_json(basis.vectors[p](i)));
    out.push_back(json{{"epsilons", idx.epsilons},
                       {"level", idx.level},
                       {"rank", idx.rank},
                       {"eigenvalue", to_json(basis.eigenvalues[p])},
                       {"vector", std::move(vec)}});
  }
  return out;
}

namespace {

json block_to_json(const Matrix& m) {
  json rows = json::array();
  for (long i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (long j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json blocks_to_json(const BlockTriMatrix& blocks) {
  json out = json::array();
  for (int n = 0; n <= blocks.diameter; ++n) {
    json level{{"n", n}, {"A", block_to_json(blocks.a[n])}};
    level["B"] = n < blocks.diameter ? block_to_json(blocks.b[n]) : json::array();
    level["C"] = n > 0 ? block_to_json(blocks.c[n]) : json::array();
    out.push_back(std::move(level));
  }
  return out;
}

std::string overlap_table_to_csv(const OverlapTable& table) {
  std::ostringstream out;
  out.precision(17);
  out << "n,i,k,s,re_f,im_f\n";
  for (int s = 0; s <= table.diameter; ++s)
    for (size_t k = 1; k <= table.U[s].size(); ++k)
      for (size_t row = 0; row < table.row_index.size(); ++row) {
        const EigenIndex& idx = table.row_index[row];
        const Complex f = table.F[s][k - 1][row];
        out << idx.level << ',' << idx.rank << ',' << k << ',' << s << ','
            << f.real() << ',' << f.imag() << '\n';
      }
  return out.str();
}

json overlap_report_to_json(const GramReport& gram, const OverlapTable& table) {
  json weights = json::array();
  for (int s = 0; s <= table.diameter; ++s)
    for (size_t k = 1; k <= table.weights[s].size(); ++k)
      weights.push_back(json{{"s", s}, {"k", k}, {"w", to_json(table.weight(static_cast<int>(k), s))}});
  return json{{"weights", std::move(weights)},
              {"max_diag_relative", gram.max_diag_relative},
              {"max_offdiag_relative", gram.max_offdiag_relative},
              {"max_weight_imag", gram.max_weight_imag}};
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << contents;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace tdpair
