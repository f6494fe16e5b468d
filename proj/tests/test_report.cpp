#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "vcmajor/report.hpp"

using namespace vcmajor;

namespace {

Report sample_report() {
  Report r;
  r.command = "bounds";
  r.table.columns = {"name", "n", "value", "ok", "missing"};
  r.table.add_row({std::string("a,b"), std::int64_t{3}, 0.1, true, std::monostate{}});
  r.table.add_row({std::string("say \"hi\""), std::int64_t{-4}, std::numeric_limits<double>::quiet_NaN(), false,
                   1.0 / 3.0});
  r.table.add_row({std::string("inf"), std::int64_t{0}, INFINITY, true, -INFINITY});
  r.summary = {{"rows", std::int64_t{3}}, {"note", std::string("x")}, {"mean", 2.5e-300}};
  return r;
}

}  // namespace

TEST_CASE("format_double", "[report]") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(INFINITY) == "inf");
  CHECK(format_double(-INFINITY) == "-inf");
  for (double v : {1.0 / 3.0, 2.5e-300, 6.02e23, -0.0})
    CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("csv", "[report]") {
  const auto r = sample_report();
  const std::string csv = to_csv(r.table);
  CHECK(csv.substr(0, csv.find('\n')) == "name,n,value,ok,missing");
  CHECK(csv.find("\"a,b\",3,0.10000000000000001,true,\n") != std::string::npos);
  CHECK(csv.find("\"say \"\"hi\"\"\",-4,nan,false,0.33333333333333331\n") != std::string::npos);
  CHECK(summary_to_csv(r.summary) == "key,value\nrows,3\nnote,x\nmean,2.5e-300\n");
  CHECK(cell_to_csv(std::monostate{}).empty());
}

TEST_CASE("json round trip", "[report]") {
  const auto r = sample_report();
  const std::string text = to_json(r);
  const auto back = report_from_json(text);
  CHECK(back == r);
  CHECK(to_json(back) == text);
  CHECK(std::isnan(std::get<double>(back.table.at(1, "value"))));
  CHECK(std::get<double>(back.table.at(1, "missing")) == 1.0 / 3.0);
  CHECK(std::holds_alternative<std::monostate>(back.table.at(0, "missing")));
  CHECK(std::get<std::int64_t>(back.table.at(1, "n")) == -4);
}

TEST_CASE("cell comparison and table checks", "[report]") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK(same_cell(Cell{nan}, Cell{nan}));
  CHECK_FALSE(same_cell(Cell{1.0}, Cell{std::int64_t{1}}));
  CHECK(same_cell(Cell{std::string("a")}, Cell{std::string("a")}));
  Table t;
  t.columns = {"a", "b"};
  CHECK_THROWS(t.add_row({1.0}));
  t.add_row({1.0, 2.0});
  CHECK_THROWS_AS(t.column("c"), std::out_of_range);
  CHECK(t.column("b") == 1);
}
