#include <cmath>
#include <limits>

#include "doctest.h"
#include "levytype/serialization.hpp"
#include "levytype/svg_plot.hpp"

using namespace levytype;

namespace {
Vec v1(double x) { return Vec::Constant(1, x); }

void same_exponent(const LevyTriplet& a, const LevyTriplet& b) {
  for (double xi : {-3.0, 0.2, 1.0, 5.0}) {
    CHECK(std::abs(eval_exponent(a, v1(xi)) - eval_exponent(b, v1(xi))) < 1e-12);
  }
}
} // namespace

TEST_CASE("triplets survive a JSON round trip") {
  same_exponent(catalog::compound_poisson_gaussian(2.5), triplet_from_json(triplet_to_json(catalog::compound_poisson_gaussian(2.5))));
  same_exponent(catalog::symmetric_stable_density(1.3, 0.8),
                triplet_from_json(triplet_to_json(catalog::symmetric_stable_density(1.3, 0.8))));
  LevyTriplet t(v1(0.3), Mat::Constant(1, 1, 2.0),
                LevyMeasureSpec::finite_atomic(1, {{v1(1.0), 0.5}, {v1(-0.4), 1.5}}));
  same_exponent(t, triplet_from_json(triplet_to_json(t)));
  same_exponent(t.truncated(0.5), triplet_from_json(triplet_to_json(t.truncated(0.5))));
}

TEST_CASE("malformed documents raise schema errors") {
  CHECK_THROWS_AS(triplet_from_json(Json::parse(R"({"d": 1})")), SchemaError);
  CHECK_THROWS_AS(triplet_from_json(Json::parse(R"({"d": 1, "l": [0], "Q": [[1]], "nu": {"kind": "nope"}})")),
                  SchemaError);
  CHECK_THROWS_AS(vec_from_json(Json::parse(R"([1, "x"])"), "v"), SchemaError);
  CHECK_THROWS_AS(read_json("/nonexistent/file.json"), InvalidArgument);
}

TEST_CASE("doubles print in shortest round-trip form") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("csv tables keep their columns") {
  CsvTable t({"t", "x"});
  t.add_row({0.0, 1.5});
  t.add_row({0.25, -2.0});
  CHECK(t.rows() == 2);
  CHECK(t.column("x") == std::vector<double>{1.5, -2.0});
  CHECK(t.str() == "t,x\n0,1.5\n0.25,-2\n");
  CHECK_THROWS(t.add_row({1.0}));
}

TEST_CASE("svg charts are well-formed") {
  PlotSeries s{"psi", {1.0, 10.0, 100.0}, {1.0, 100.0, 10000.0}};
  PlotOptions opt;
  opt.log_x = opt.log_y = true;
  opt.title = "a < b";
  std::string svg = svg_line_chart({s}, opt);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("a &lt; b") != std::string::npos);
  CHECK(svg.find("<path d=\"M") != std::string::npos);
}
