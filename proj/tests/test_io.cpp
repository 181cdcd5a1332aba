#include <doctest.h>

#include <algorithm>

#include <nlohmann/json.hpp>

#include "tdpair/io.hpp"
#include "test_helpers.hpp"

using namespace tdpair;
using tdtest::sample;

TEST_CASE("complex flag parsing") {
  CHECK(parse_complex("1.5") == Complex(1.5, 0.0));
  CHECK(parse_complex("-2") == Complex(-2.0, 0.0));
  CHECK(parse_complex("0.3i") == Complex(0.0, 0.3));
  CHECK(parse_complex("-0.3i") == Complex(0.0, -0.3));
  CHECK(parse_complex("1.5+0.3i") == Complex(1.5, 0.3));
  CHECK(parse_complex("1.5-0.3i") == Complex(1.5, -0.3));
  CHECK(parse_complex("0+0.53i") == Complex(0.0, 0.53));
  CHECK(parse_complex("i") == Complex(0.0, 1.0));
  CHECK(parse_complex("-i") == Complex(0.0, -1.0));
  CHECK(parse_complex("1e-3+2e-4i") == Complex(1e-3, 2e-4));
  CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex("1+2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
}

TEST_CASE("params JSON round trip") {
  const ModelParams p = sample(3);
  const ModelParams q = params_from_json(params_to_json(p));
  CHECK(q.diameter == p.diameter);
  CHECK(q.alpha == p.alpha);
  CHECK(q.alpha_star == p.alpha_star);
  CHECK(q.phi == p.phi);
  CHECK(q.theta == p.theta);
}

TEST_CASE("matrix JSON export is row-major and round trips") {
  Matrix m(2, 2);
  m << Complex(1, 2), Complex(3, 4), Complex(5, 6), Complex(7, 8);
  const json j = matrix_to_json(m, sample(1));
  CHECK(j["dim"] == 2);
  CHECK(j["entries"][1][0] == 3.0);  // (0,1) comes second in row-major order
  CHECK(j["entries"][2][0] == 5.0);
  const Matrix back = matrix_from_json(j);
  CHECK((back - m).norm() == 0.0);
}

TEST_CASE("basis JSON carries indices, eigenvalues and components") {
  const ModelParams p = sample(2);
  const json j = basis_to_json(eigenbasis(p, BasisKind::psi));
  REQUIRE(j.size() == 4);
  CHECK(j[0]["level"] == 0);
  CHECK(j[0]["rank"] == 1);
  CHECK(j[0]["epsilons"] == json::array({1, 1}));
  CHECK(j[0]["vector"].size() == 4);
}

TEST_CASE("blocks JSON keeps empty boundary blocks") {
  const ModelParams p = sample(2);
  const json j = blocks_to_json(entries_recursive(p));
  REQUIRE(j.size() == 3);
  CHECK(j[0]["C"].empty());   // no level below 0
  CHECK(j[2]["B"].empty());   // no level above N
  CHECK(j[1]["A"].size() == 2);
}

TEST_CASE("overlap CSV is deterministic") {
  const ModelParams p = sample(2);
  const OverlapTable table = overlap_table(p);
  const std::string a = overlap_table_to_csv(table);
  const std::string b = overlap_table_to_csv(overlap_table(p));
  CHECK(a == b);
  CHECK(a.substr(0, 18) == "n,i,k,s,re_f,im_f\n");
  // 3 support levels x ranks (1,2,1) x 4 rows = 16 data lines
  CHECK(std::count(a.begin(), a.end(), '\n') == 17);
}
