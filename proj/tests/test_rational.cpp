#include <doctest.h>

#include "redlab/errors.hpp"
#include "redlab/rational.hpp"

using redlab::Rational;

TEST_CASE("parse_rational accepts fractions, integers and decimals") {
  CHECK(redlab::parse_rational("1/2") == Rational(1, 2));
  CHECK(redlab::parse_rational("6/8") == Rational(3, 4));
  CHECK(redlab::parse_rational("3") == Rational(3));
  CHECK(redlab::parse_rational("0.1") == Rational(1, 10));
  CHECK(redlab::parse_rational("0.125") == Rational(1, 8));
  CHECK(redlab::parse_rational("2.5e-1") == Rational(1, 4));
  CHECK(redlab::parse_rational("-1/3") == Rational(-1, 3));
  CHECK(redlab::parse_rational(".5") == Rational(1, 2));
}

TEST_CASE("parse_rational rejects malformed text") {
  CHECK_THROWS_AS(redlab::parse_rational(""), redlab::ValidationError);
  CHECK_THROWS_AS(redlab::parse_rational("1/0"), redlab::ValidationError);
  CHECK_THROWS_AS(redlab::parse_rational("abc"), redlab::ValidationError);
  CHECK_THROWS_AS(redlab::parse_rational("1/2/3"), redlab::ValidationError);
  CHECK_THROWS_AS(redlab::parse_rational("."), redlab::ValidationError);
}

TEST_CASE("exact_rational is the exact dyadic value of a double") {
  CHECK(redlab::exact_rational(0.5) == Rational(1, 2));
  CHECK(redlab::exact_rational(0.1) != Rational(1, 10));
  CHECK(redlab::exact_rational(0.1).get_d() == 0.1);
}

TEST_CASE("to_fraction_string renders lowest terms") {
  CHECK(redlab::to_fraction_string(Rational(2, 16)) == "1/8");
  CHECK(redlab::to_fraction_string(Rational(0)) == "0/1");
  CHECK(redlab::to_fraction_string(Rational(1)) == "1/1");
}
