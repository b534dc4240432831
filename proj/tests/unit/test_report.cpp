#include <string>

#include "doctest.h"
#include "json.hpp"
#include "polyrad/report.hpp"

using namespace polyrad;
using njson = nlohmann::json;

namespace {

AnalysisResult cubic_result(ProblemSpec* specOut = nullptr) {
  ProblemSpec spec = parse_spec(
      "name = \"cubic\"\n"
      "dimension = 1\n"
      "term = { exps = [3], coeff = \"1\" }\n");
  if (specOut) *specOut = spec;
  return analyze_problem(spec);
}

}  // namespace

TEST_CASE("analysis document carries the derived indices") {
  ProblemSpec spec;
  auto res = cubic_result(&spec);
  auto text = analysis_json(spec, res);
  auto doc = njson::parse(text);

  CHECK(doc["name"] == "cubic");
  CHECK(doc["dimension"] == 1);
  CHECK(doc["d"] == "3");
  CHECK(doc["o"] == 0);
  CHECK(doc["g"] == "1/3");
  CHECK(doc["k"] == "1");
  CHECK(doc["a0"] == "1/3");
  CHECK(doc["a0_source"] == "exact");
  CHECK(doc["d0"] == 0);
  CHECK(doc["o_bar"] == 2);
  CHECK(doc["case"] == "subcritical");
  CHECK(doc["sharpness_applies"] == true);
  CHECK(doc["low_confidence"] == false);
  CHECK(doc["diagonal_b"] == njson::array({"1"}));
  CHECK(doc["vertices"] == njson::array({njson::array({"3"})}));
  CHECK(doc["zero_order"]["method"] == "monomial-trivial");
  CHECK(doc["kernel"]["kind"] == "weight-only");
  CHECK(doc["kernel"]["floor"] == "1");
  CHECK(!doc.contains("fit"));
  CHECK(text.back() == '\n');
}

TEST_CASE("region document is all fractions on the exact path") {
  auto res = cubic_result();
  auto text = region_json(res);
  auto doc = njson::parse(text);

  CHECK(doc["branch"] == "subcritical");
  CHECK(doc["k"] == "1");
  CHECK(doc["plane"]["slope"] == "4/3");
  CHECK(doc["plane"]["rhs"] == "1/3");
  REQUIRE(!doc["pieces"].empty());
  for (const auto& piece : doc["pieces"]) {
    CHECK(piece["label"].is_string());
    for (const auto& vert : piece["vertices"]) {
      REQUIRE(vert.size() == 3);
      for (const auto& coord : vert) CHECK(coord.is_string());
    }
  }
  for (const auto& pt : doc["diagonal_a"])
    for (const auto& coord : pt) CHECK(coord.is_string());

  CHECK(region_json(res) == text);
}

TEST_CASE("slice document matches the closed-form trapezoid") {
  auto res = cubic_result();
  auto doc = njson::parse(slice_json(res));

  njson expect = njson::array({njson::array({"0", "0"}),
                               njson::array({"1/2", "1/4"}),
                               njson::array({"3/4", "1/2"}),
                               njson::array({"1", "1"})});
  CHECK(doc["polygon"] == expect);
  CHECK(doc["excluded_line_applies"] == true);
  CHECK(doc["excluded_offset"] == "1/4");
}

TEST_CASE("csv bodies have fixed headers and full-precision rows") {
  std::vector<GrowthPoint> pts = {{1e-2, 0.25, 0.001}, {1e-3, 0.03125, 0.0}};
  auto csv = sublevel_csv(pts);
  CHECK(csv ==
        "eps,measure,stderr\n"
        "0.01,0.25,0.001\n"
        "0.001,0.03125,0\n");

  SharpnessReport rep;
  rep.points = {{0.125, 1.5, 0.25, 0.5}};
  auto scsv = sharpness_csv(rep);
  CHECK(scsv ==
        "r,ratio,windowLB\n"
        "0.125,1.5,0.25\n");
}

TEST_CASE("growth fit verdicts") {
  GrowthFit fit;
  fit.a0Hat = 0.34;
  fit.d0Hat = 0;
  fit.stable = true;
  fit.rBox = 0.25;

  auto close = njson::parse(growth_fit_json(fit, Rat(1, 3)));
  CHECK(close["verdict"] == "consistent");
  CHECK(close["agrees_with_predicted"] == true);
  CHECK(close["predicted_a0"] == "1/3");

  auto far = njson::parse(growth_fit_json(fit, Rat(1, 2)));
  CHECK(far["verdict"] == "mismatch");
  CHECK(far["agrees_with_predicted"] == false);

  auto blind = njson::parse(growth_fit_json(fit, std::nullopt));
  CHECK(blind["verdict"] == "measured");
  CHECK(blind["predicted_a0"].is_null());
  CHECK(blind["agrees_with_predicted"].is_null());

  fit.stable = false;
  auto shaky = njson::parse(growth_fit_json(fit, Rat(1, 3)));
  CHECK(shaky["verdict"] == "inconclusive");
}

TEST_CASE("sharpness report document") {
  SharpnessReport rep;
  rep.b = {1.0};
  rep.usedN = 8;
  rep.predictedExponent = Rat(-3, 10);
  rep.predictedValue = -0.3;
  rep.observedSlope = -0.2998;
  rep.verdict = SharpnessVerdict::GrowthObserved;
  rep.points = {{0.125, 1.0, 0.5, 1.0}, {0.0625, 1.23, 0.4, 0.9}};

  auto doc = njson::parse(sharpness_json(rep));
  CHECK(doc["b"] == njson::array({1.0}));
  CHECK(doc["used_n"] == 8);
  CHECK(doc["predicted_exponent"] == "-3/10");
  CHECK(doc["verdict"] == "GrowthObserved");
  CHECK(doc["note"] == "");
  REQUIRE(doc["points"].size() == 2);
  CHECK(doc["points"][1]["ratio"] == 1.23);
  CHECK(doc["points"][0]["window_lb"] == 0.5);
}

TEST_CASE("svg plot is deterministic and draws the cut line") {
  auto res = cubic_result();
  auto svg = region_svg(res);
  CHECK(svg.substr(0, 4) == "<svg");
  CHECK(svg.find("<polygon") != std::string::npos);
  CHECK(svg.find("#c03030") != std::string::npos);  // excluded line
  CHECK(svg.find("branch: subcritical") != std::string::npos);
  CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
  CHECK(region_svg(res) == svg);
}
