#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "tdpair/blocktri.hpp"
#include "tdpair/linalg.hpp"
#include "tdpair/overlaps.hpp"
#include "tdpair/params.hpp"
#include "tdpair/spectral.hpp"

namespace tdpair {

using json = nlohmann::json;

/// Complex numbers are encoded as two-element arrays [re, im] everywhere.
json to_json(Complex z);
Complex complex_from_json(const json& j);

/// Parses "RE+IMi" style flags: "0.5", "-1.2i", "0.3+0.7i", "1-2i".
/// Throws std::invalid_argument on malformed input.
Complex parse_complex(const std::string& text);

json params_to_json(const ModelParams& params);
ModelParams params_from_json(const json& j);

/// { "dim": d, "entries": [[re,im], ...] row-major, "params": {...} }
json matrix_to_json(const Matrix& m, const ModelParams& params);
Matrix matrix_from_json(const json& j);

/// [{ "epsilons": [...], "level": n, "rank": i, "eigenvalue": [re,im],
///    "vector": [[re,im], ...] }, ...]
json basis_to_json(const EigenBasis& basis);

/// [{ "n": level, "A": [[..]], "B": [[..]], "C": [[..]] }, ...]
json blocks_to_json(const BlockTriMatrix& blocks);

/// CSV with header n,i,k,s,re_f,im_f; fixed row order (s, k, n, i ascending).
std::string overlap_table_to_csv(const OverlapTable& table);

json overlap_report_to_json(const GramReport& gram, const OverlapTable& table);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace tdpair
