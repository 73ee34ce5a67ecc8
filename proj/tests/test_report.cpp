// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <cstdint>
#include <limits>

#include "blindsim/report.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace blindsim;

TEST_SUITE("report") {

TEST_CASE("put keeps insertion order and formats each type") {
  Report r;
  r.put("name", "two-state");
  r.put("n", 8);
  r.put("wide", std::int64_t(1) << 40);
  r.put("ok", true);
  r.put("bad", false);
  r.put("x", 0.25);
  r.put("theta", Angle::pi_frac(5, 4));
  r.put("p", Rat(3, 6));

  REQUIRE(r.fields.size() == 8);
  CHECK(r.fields[0].second == "two-state");
  CHECK(r.fields[1].second == "8");
  CHECK(r.fields[2].second == "1099511627776");
  CHECK(r.fields[3].second == "true");
  CHECK(r.fields[4].second == "false");
  CHECK(r.fields[5].second == "0.25");
  CHECK(r.fields[6].second == Angle::pi_frac(5, 4).report_str());
  CHECK(r.fields[7].second == "1/2");
}

TEST_CASE("doubles print with enough digits to round-trip") {
  CHECK(format_double(0.25) == "0.25");
  CHECK(format_double(-3.0) == "-3");
  double v = 0.1 + 0.2;
  double back = std::stod(format_double(v));
  CHECK(back == v);
  v = 2.3567529747988143;
  CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("json lines parse and preserve types") {
  Report r;
  r.put("N", 4);
  r.put("e1", 0.25);
  r.put("e1_ok", true);
  r.put("route", "full");
  r.put("version", kVersion);

  auto j = nlohmann::json::parse(json_line(r));
  CHECK(j["N"].is_number_integer());
  CHECK(j["N"].get<int>() == 4);
  CHECK(j["e1"].is_number());
  CHECK(j["e1"].get<double>() == 0.25);
  CHECK(j["e1_ok"].is_boolean());
  CHECK(j["e1_ok"].get<bool>());
  CHECK(j["route"].is_string());
  CHECK(j["route"].get<std::string>() == "full");
  // dotted version strings must stay strings even though they look numeric
  CHECK(j["version"].is_string());
  CHECK(j["version"].get<std::string>() == "0.3.0");
}

TEST_CASE("number-shaped strings stay bare, everything else is quoted") {
  Report r;
  r.put("a", "12");
  r.put("b", "-0.5");
  r.put("c", "1e-3");
  r.put("d", "1e");
  r.put("e", "nan");
  r.put("f", "0.3.0");
  std::string line = json_line(r);
  auto j = nlohmann::json::parse(line);
  CHECK(j["a"].is_number());
  CHECK(j["b"].is_number());
  CHECK(j["c"].is_number());
  CHECK(j["d"].is_string());
  CHECK(j["e"].is_string());
  CHECK(j["f"].is_string());
}

TEST_CASE("non-finite doubles are quoted so the line stays parseable") {
  Report r;
  r.put("inf", std::numeric_limits<double>::infinity());
  r.put("nan", std::numeric_limits<double>::quiet_NaN());
  auto j = nlohmann::json::parse(json_line(r));
  CHECK(j["inf"].is_string());
  CHECK(j["nan"].is_string());
}

TEST_CASE("csv header and row line up") {
  Report r;
  r.put("N", 8);
  r.put("route", "schur");
  r.put("delta", 1.125);
  CHECK(csv_header(r) == "N,route,delta");
  CHECK(csv_row(r) == "8,schur,1.125");
}

TEST_CASE("empty report degenerates cleanly") {
  Report r;
  CHECK(json_line(r) == "{}");
  CHECK(csv_header(r).empty());
  CHECK(csv_row(r).empty());
}

}  // TEST_SUITE
