#include <doctest.h>

#include "uqlab/linalg.hpp"
#include "uqlab/report.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

using namespace uqlab;
using namespace uqlab::report;

namespace {

BoundReport sample() {
  BoundReport r;
  r.title = "sample";
  r.lhs_name = "lhs";
  r.lhs_value = 2.0 / 3.0;
  r.bound("zeta", 1.0 / 7.0).bound("alpha", 0.25);
  r.verdict = "ok";
  r.meta("zz", std::string("first")).meta("aa", 3.14159265358979323).meta("count", std::int64_t{42}).meta("flag", true);
  return r;
}

}  // namespace

TEST_CASE("round_significant") {
  CHECK(round_significant(1.0 / 3.0) == 0.333333333333333);
  CHECK(round_significant(123456789.123456789, 5) == 123460000.0);
  CHECK(round_significant(0.0) == 0.0);
  CHECK(std::isinf(round_significant(std::numeric_limits<double>::infinity())));
}

TEST_CASE("json round trip keeps values to 15 digits and key order") {
  const BoundReport r = sample();
  const auto j = to_json(r);
  const BoundReport back = from_json(nlohmann::ordered_json::parse(j.dump()));
  CHECK(back.title == r.title);
  CHECK(back.lhs_value == round_significant(r.lhs_value));
  CHECK(std::abs(back.lhs_value - r.lhs_value) < 1e-15);
  REQUIRE(back.rhs.size() == 2);
  CHECK(back.rhs[0].name == "zeta");
  CHECK(back.rhs[1].name == "alpha");
  REQUIRE(back.metadata.size() == 4);
  CHECK(back.metadata[0].first == "zz");
  CHECK(back.metadata[1].first == "aa");
  CHECK(std::get<double>(back.metadata[1].second) == round_significant(3.14159265358979323));
  CHECK(std::get<std::int64_t>(back.metadata[2].second) == 42);
  CHECK(std::get<bool>(back.metadata[3].second));
  CHECK(to_json(back).dump() == j.dump());
}

TEST_CASE("non-finite values become null") {
  BoundReport r = sample();
  r.lhs_value = std::numeric_limits<double>::quiet_NaN();
  const auto j = to_json(r);
  CHECK(j["lhs_value"].is_null());
  CHECK(std::isnan(from_json(j).lhs_value));
}

TEST_CASE("json layout for one and many reports") {
  std::ostringstream one, many;
  emit({sample()}, Format::json, one);
  emit({sample(), sample()}, Format::json, many);
  const auto j1 = nlohmann::ordered_json::parse(one.str());
  CHECK(j1.contains("rhs"));
  const auto j2 = nlohmann::ordered_json::parse(many.str());
  CHECK(j2["reports"].size() == 2);
  CHECK(j1.begin().key() == "title");
}

TEST_CASE("table and csv") {
  std::ostringstream t, c;
  emit({sample()}, Format::table, t);
  CHECK(t.str().find("sample\n======") == 0);
  CHECK(t.str().find("0.666667") != std::string::npos);
  CHECK(t.str().find("verdict") != std::string::npos);

  emit({sample()}, Format::csv, c);
  std::istringstream in(c.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "report,kind,name,value");
  std::getline(in, line);
  CHECK(line == "sample,lhs,lhs,0.666666666666667");
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 1 + 2 + 1 + 4);
}

TEST_CASE("format names") {
  CHECK(parse_format("csv") == Format::csv);
  CHECK(to_string(Format::table) == "table");
  CHECK_THROWS_AS(parse_format("xml"), DomainError);
}
