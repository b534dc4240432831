#include <cmath>
#include <doctest.h>
#include <stdexcept>
#include <vector>

#include "polyrad/blocks.hpp"
#include "polyrad/newton.hpp"
#include "polyrad/polynomial.hpp"
#include "polyrad/sublevel.hpp"

using namespace polyrad;

namespace {

std::vector<std::vector<Rat>> verts(std::vector<std::vector<int>> raw) {
  std::vector<std::vector<Rat>> out;
  for (const auto& v : raw) out.push_back(rats_from_ints(v));
  return out;
}

BlockStructure singletons(int n, const Rat& alpha) {
  BlockStructure b;
  for (int i = 0; i < n; ++i) {
    b.sizes.push_back(1);
    b.alphas.push_back(alpha);
  }
  return b;
}

void check_against(const MeasureEstimate& est, double exact,
                   double maxRelStderr) {
  CAPTURE(est.value);
  CAPTURE(est.stderror);
  CAPTURE(exact);
  CHECK(est.stderror <= maxRelStderr * exact);
  CHECK(std::fabs(est.value - exact) <= 4.0 * est.stderror + 1e-12);
}

}  // namespace

TEST_CASE("power curve measure matches the closed form") {
  // S* = t^2 with no weight: measure is sqrt(eps) once sqrt(eps) < r.
  auto est = measure_sublevel(verts({{2}}), singletons(1, Rat(0)), 0.25, 1e-4,
                              200000, 7);
  check_against(est, 1e-2, 0.05);

  // S* = t^3 with weight t^{-1/2}: eps^{(1-a)/l}/(1-a) = 2*eps^{1/6}.
  auto weighted = measure_sublevel(verts({{3}}), singletons(1, Rat(1, 2)), 1.0,
                                   1e-3, 200000, 7);
  check_against(weighted, 2.0 * std::pow(1e-3, 1.0 / 6.0), 0.05);
}

TEST_CASE("quarter disk measure") {
  auto est = measure_sublevel(verts({{2, 0}, {0, 2}}), singletons(2, Rat(0)),
                              1.0, 1e-2, 400000, 11);
  check_against(est, M_PI * 1e-2 / 4.0, 0.08);
}

TEST_CASE("hyperbola sublevel set carries a logarithm") {
  double eps = 1e-4;
  double exact = std::sqrt(eps) * (1.0 + 0.5 * std::log(1.0 / eps));
  auto est = measure_sublevel(verts({{2, 2}}), singletons(2, Rat(0)), 1.0, eps,
                              400000, 13);
  check_against(est, exact, 0.08);
}

TEST_CASE("euclidean block weight is absorbed exactly") {
  // One 2-dimensional block with weight |t|^{-1/2}; sublevel set of
  // t1^2 + t2^2 below eps is the quarter disk of radius sqrt(eps), so the
  // weighted measure is (pi/2) * eps^{3/4} / (3/2).
  BlockStructure blocks;
  blocks.sizes = {2};
  blocks.alphas = {Rat(1, 2)};
  double eps = 1e-2;
  double exact = (M_PI / 3.0) * std::pow(eps, 0.75);
  auto est =
      measure_sublevel(verts({{2, 0}, {0, 2}}), blocks, 1.0, eps, 400000, 17);
  check_against(est, exact, 0.08);
}

TEST_CASE("substitution and direct sampling agree") {
  SublevelOptions direct;
  direct.uSubstitution = false;
  auto a = measure_sublevel(verts({{3}}), singletons(1, Rat(1, 4)), 0.5, 1e-3,
                            200000, 19);
  auto b = measure_sublevel(verts({{3}}), singletons(1, Rat(1, 4)), 0.5, 1e-3,
                            200000, 23, direct);
  double exact = std::pow(1e-3, 0.25) / 0.75;
  check_against(a, exact, 0.05);
  check_against(b, exact, 0.08);
  CHECK(std::fabs(a.value - b.value) <= 3.0 * (a.stderror + b.stderror));
}

TEST_CASE("measure is monotone in eps and r") {
  auto vs = verts({{2, 0}, {0, 2}});
  BlockStructure blocks = singletons(2, Rat(0));
  double prev = -1.0;
  for (double eps : {1e-5, 1e-4, 1e-3, 1e-2}) {
    auto est = measure_sublevel(vs, blocks, 1.0, eps, 50000, 29);
    CHECK(est.value >= prev);  // same seed replays the same points
    prev = est.value;
  }
  MeasureEstimate last;
  bool first = true;
  for (double r : {0.25, 0.5, 1.0}) {
    auto est = measure_sublevel(vs, blocks, r, 1e-3, 50000, 31);
    if (!first) CHECK(est.value >= last.value - 3.0 * (est.stderror + last.stderror));
    last = est;
    first = false;
  }
}

TEST_CASE("stderr shrinks like one over sqrt of budget") {
  auto est1 = measure_sublevel(verts({{2}}), singletons(1, Rat(0)), 1.0, 1e-2,
                               40000, 37);
  auto est2 = measure_sublevel(verts({{2}}), singletons(1, Rat(0)), 1.0, 1e-2,
                               160000, 37);
  CHECK(est1.stderror > 0.0);
  CHECK(est2.stderror > 0.0);
  double ratio = est1.stderror / est2.stderror;
  CHECK(ratio > 1.4);
  CHECK(ratio < 2.9);
}

TEST_CASE("sampling is deterministic and thread-count independent") {
  auto vs = verts({{2, 2}});
  BlockStructure blocks = singletons(2, Rat(0));
  auto a = measure_sublevel(vs, blocks, 1.0, 1e-3, 50000, 41);
  auto b = measure_sublevel(vs, blocks, 1.0, 1e-3, 50000, 41);
  CHECK(a.value == b.value);
  CHECK(a.stderror == b.stderror);

  SublevelOptions threaded;
  threaded.threads = 3;
  auto c = measure_sublevel(vs, blocks, 1.0, 1e-3, 50000, 41, threaded);
  CHECK(c.value == a.value);
  CHECK(c.stderror == a.stderror);

  auto other = measure_sublevel(vs, blocks, 1.0, 1e-3, 50000, 43);
  CHECK(other.value != a.value);
}

TEST_CASE("input validation") {
  auto vs = verts({{2}});
  BlockStructure blocks = singletons(1, Rat(0));
  CHECK_THROWS_AS(measure_sublevel(vs, blocks, 1.0, 0.5, 20000, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(measure_sublevel(vs, blocks, 0.0, 1e-2, 20000, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(measure_sublevel(vs, blocks, 1.0, 1e-2, 5000, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      measure_sublevel(verts({{2, 0}}), blocks, 1.0, 1e-2, 20000, 1),
      std::invalid_argument);
  CHECK_THROWS_AS(measure_sublevel({}, blocks, 1.0, 1e-2, 20000, 1),
                  std::invalid_argument);
}

TEST_CASE("growth fit recovers synthetic exponents") {
  std::vector<GrowthPoint> pts;
  for (int i = 0; i <= 7; ++i) {
    double eps = std::pow(10.0, -8.0 + i);
    double m = 3.0 * std::sqrt(eps) * std::log(1.0 / eps);
    pts.push_back({eps, m, 1e-12});
  }
  GrowthFit fit = fit_growth(pts, 2, 1.0);
  CHECK(fit.d0Hat == 1);
  CHECK(fit.a0Hat == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(fit.envLo == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(fit.envHi == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(fit.residual < 1e-9);
  CHECK(fit.stable);

  std::vector<GrowthPoint> pure;
  for (int i = 0; i <= 7; ++i) {
    double eps = std::pow(10.0, -8.0 + i);
    pure.push_back({eps, 2.0 * eps, 1e-12});
  }
  GrowthFit fit0 = fit_growth(pure, 2, 1.0);
  CHECK(fit0.d0Hat == 0);
  CHECK(fit0.a0Hat == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("growth fit flags non-monotone data and validates input") {
  std::vector<GrowthPoint> pts;
  for (int i = 0; i <= 6; ++i) {
    double eps = std::pow(10.0, -7.0 + i);
    pts.push_back({eps, std::sqrt(eps), 1e-12});
  }
  pts[3].measure = 10.0 * pts[6].measure;  // drops as eps grows past index 3
  GrowthFit fit = fit_growth(pts, 2, 1.0);
  CHECK_FALSE(fit.stable);

  std::vector<GrowthPoint> few(pts.begin(), pts.begin() + 5);
  CHECK_THROWS_AS(fit_growth(few, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(fit_growth(pts, 0, 1.0), std::invalid_argument);
}

TEST_CASE("fitted exponents from sampled data") {
  auto vs = verts({{2, 0}, {0, 2}});
  BlockStructure blocks = singletons(2, Rat(0));
  std::vector<GrowthPoint> pts;
  for (int i = 0; i < 9; ++i) {
    double eps = std::pow(10.0, -6.0 + 0.5 * i);
    auto est = measure_sublevel(vs, blocks, 1.0, eps, 100000, 47);
    pts.push_back({eps, est.value, est.stderror});
  }
  GrowthFit fit = fit_growth(pts, 2, 1.0);
  CHECK(fit.d0Hat == 0);
  CHECK(std::fabs(fit.a0Hat - 1.0) < 0.05);
  CHECK(fit.stable);
}

TEST_CASE("closed form growth exponent when theory provides one") {
  auto circle = SparsePolynomial::make(
      2, {{{2, 0}, Rat(1)}, {{0, 2}, Rat(1)}});
  auto polyC = build_polyhedron(circle);
  auto a0 = predicted_a0(polyC, singletons(2, Rat(0)), 0);
  REQUIRE(a0.has_value());
  CHECK(*a0 == Rat(1));

  auto hyper = SparsePolynomial::make(2, {{{2, 2}, Rat(1)}});
  auto polyH = build_polyhedron(hyper);
  auto a0w = predicted_a0(polyH, singletons(2, Rat(1, 2)), 0);
  REQUIRE(a0w.has_value());
  CHECK(*a0w == Rat(1, 4));  // exponents rescale (2,2) -> (4,4)

  CHECK_FALSE(predicted_a0(polyC, singletons(2, Rat(0)), 3).has_value());

  BlockStructure pair;
  pair.sizes = {2};
  pair.alphas = {Rat(1, 2)};
  CHECK_FALSE(predicted_a0(polyC, pair, 0).has_value());
}
