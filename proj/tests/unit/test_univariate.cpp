#include <doctest.h>

#include "polyrad/univariate.hpp"

using namespace polyrad;

namespace {

// helper: p = prod (u - r_i)^{m_i} given (root, multiplicity) pairs
Poly1 from_roots(const std::vector<std::pair<Rat, int>>& roots) {
  Poly1 p = {Rat(1)};
  for (const auto& [r, m] : roots) {
    Poly1 lin = {-r, Rat(1)};
    for (int i = 0; i < m; ++i) p = poly1_mul(p, lin);
  }
  return p;
}

}  // namespace

TEST_CASE("divmod and gcd") {
  Poly1 num = {Rat(-1), Rat(0), Rat(0), Rat(1)};  // u^3 - 1
  Poly1 den = {Rat(-1), Rat(1)};                  // u - 1
  Poly1 q, r;
  poly1_divmod(num, den, &q, &r);
  CHECK(r.empty());
  CHECK(q == Poly1{Rat(1), Rat(1), Rat(1)});

  Poly1 a = {Rat(-1), Rat(0), Rat(1)};  // u^2 - 1
  Poly1 b = {Rat(1), Rat(-2), Rat(1)};  // (u-1)^2
  CHECK(poly1_gcd(a, b) == Poly1{Rat(-1), Rat(1)});
  CHECK(poly1_divides(Poly1{Rat(-1), Rat(1)}, a));
  CHECK_FALSE(poly1_divides(Poly1{Rat(1), Rat(1)}, b));
}

TEST_CASE("squarefree decomposition recovers multiplicities") {
  auto p = from_roots({{Rat(1), 2}, {Rat(-2), 1}});
  auto parts = poly1_squarefree_decomposition(p);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == Poly1{Rat(2), Rat(1)});   // u + 2
  CHECK(parts[1] == Poly1{Rat(-1), Rat(1)});  // u - 1
  // product of parts^{i+1} rebuilds p (monic input)
  Poly1 rebuilt = {Rat(1)};
  for (size_t i = 0; i < parts.size(); ++i)
    for (size_t k = 0; k <= i; ++k) rebuilt = poly1_mul(rebuilt, parts[i]);
  CHECK(rebuilt == p);
}

TEST_CASE("real root counting") {
  CHECK(poly1_count_real_roots(Poly1{Rat(-2), Rat(0), Rat(1)}) == 2);  // u^2-2
  CHECK(poly1_count_real_roots(Poly1{Rat(1), Rat(0), Rat(1)}) == 0);   // u^2+1
  Poly1 cubic = {Rat(0), Rat(-1), Rat(0), Rat(1)};  // u^3 - u
  CHECK(poly1_count_real_roots(cubic) == 3);
  CHECK(poly1_count_nonzero_real_roots(cubic) == 2);
}

TEST_CASE("max multiplicity over nonzero real roots") {
  // (1 - u)^2, the reduced form of the degenerate parabola example
  CHECK(poly1_max_real_nonzero_root_multiplicity(
            Poly1{Rat(1), Rat(-2), Rat(1)}) == 2);
  // only complex roots besides a simple real one
  auto p = poly1_mul(from_roots({{Rat(3), 1}}),
                     poly1_mul(Poly1{Rat(1), Rat(0), Rat(1)},
                               Poly1{Rat(1), Rat(0), Rat(1)}));
  CHECK(poly1_max_real_nonzero_root_multiplicity(p) == 1);
  // root at zero does not count
  CHECK(poly1_max_real_nonzero_root_multiplicity(
            Poly1{Rat(0), Rat(0), Rat(1)}) == 0);  // u^2
  CHECK(poly1_max_real_nonzero_root_multiplicity(Poly1{Rat(5)}) == 0);
  CHECK(poly1_max_real_nonzero_root_multiplicity(
            from_roots({{Rat(2), 3}, {Rat(-1), 1}})) == 3);
  // 1 + u^3: simple root at -1
  CHECK(poly1_max_real_nonzero_root_multiplicity(
            Poly1{Rat(1), Rat(0), Rat(0), Rat(1)}) == 1);
  // 1 + u^2: nothing real
  CHECK(poly1_max_real_nonzero_root_multiplicity(
            Poly1{Rat(1), Rat(0), Rat(1)}) == 0);
}

TEST_CASE("eval") {
  Poly1 p = {Rat(1), Rat(-2), Rat(1)};
  CHECK(poly1_eval(p, Rat(1)) == Rat(0));
  CHECK(poly1_eval(p, Rat(3)) == Rat(4));
}
