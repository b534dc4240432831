#include <doctest.h>

#include <stdexcept>

#include "polyrad/rational.hpp"

using namespace polyrad;

TEST_CASE("parse integers and fractions") {
  CHECK(parse_rational("3") == Rat(3));
  CHECK(parse_rational("-7/2") == Rat(-7, 2));
  CHECK(parse_rational("+4/6") == Rat(2, 3));
  CHECK(parse_rational("0") == Rat(0));
}

TEST_CASE("parse decimals and exponents") {
  CHECK(parse_rational("0.25") == Rat(1, 4));
  CHECK(parse_rational("-1.5") == Rat(-3, 2));
  CHECK(parse_rational("2.5e-3") == Rat(1, 400));
  CHECK(parse_rational("1e2") == Rat(100));
  CHECK(parse_rational(".5") == Rat(1, 2));
  CHECK(parse_rational("12.") == Rat(12));
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1e"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("--2"), std::invalid_argument);
}

TEST_CASE("string round trip") {
  CHECK(rat_to_string(Rat(3)) == "3");
  CHECK(rat_to_string(Rat(-7, 2)) == "-7/2");
  CHECK(parse_rational(rat_to_string(Rat(22, 7))) == Rat(22, 7));
}

TEST_CASE("conversions") {
  CHECK(rat_to_double(Rat(1, 4)) == doctest::Approx(0.25));
  long out = 0;
  CHECK(rat_is_int(Rat(6, 2), &out));
  CHECK(out == 3);
  CHECK_FALSE(rat_is_int(Rat(1, 3), &out));
  CHECK(rat_min(Rat(1, 3), Rat(1, 4)) == Rat(1, 4));
  CHECK(rat_max(Rat(1, 3), Rat(1, 4)) == Rat(1, 3));
}
