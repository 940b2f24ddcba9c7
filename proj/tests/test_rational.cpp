#include <doctest.h>

#include "pwmarkov/errors.hpp"
#include "pwmarkov/rational.hpp"

using pwm::BigInt;
using pwm::Rational;

TEST_CASE("lowest terms with a positive denominator") {
  const Rational r(BigInt(6), BigInt(-4));
  CHECK(r.num() == -3);
  CHECK(r.den() == 2);
  CHECK(r.str() == "-3/2");
  CHECK(Rational(7).str() == "7/1");
  CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), pwm::DomainError);
}

TEST_CASE("parse accepts p/q and integers, rejects decimals") {
  CHECK(Rational::parse("14/15") == Rational(BigInt(14), BigInt(15)));
  CHECK(Rational::parse("-10/4").str() == "-5/2");
  CHECK(Rational::parse("12") == Rational(12));
  CHECK(Rational::parse("+3/9").str() == "1/3");
  for (const char* bad : {"0.5", "1e3", "", "1/", "/2", "1/0", "a/b", "1/2/3", " 1/2", "1 /2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Rational::parse(bad), pwm::SpecError);
  }
}

TEST_CASE("floor and ceil are exact for negatives") {
  CHECK(Rational::parse("-1/3").floor() == -1);
  CHECK(Rational::parse("-1/3").ceil() == 0);
  CHECK(Rational::parse("7/2").floor() == 3);
  CHECK(Rational::parse("7/2").ceil() == 4);
  CHECK(Rational(-4).floor() == -4);
  CHECK(Rational(-4).ceil() == -4);
}

TEST_CASE("arithmetic and ordering") {
  const Rational a = Rational::parse("1/3"), b = Rational::parse("1/6");
  CHECK((a + b).str() == "1/2");
  CHECK((a - b).str() == "1/6");
  CHECK((a * b).str() == "1/18");
  CHECK((a / b).str() == "2/1");
  CHECK((-a).str() == "-1/3");
  CHECK(b < a);
  CHECK(pwm::min(a, b) == b);
  CHECK(pwm::max(a, b) == a);
  CHECK(Rational::parse("-5/7").abs().str() == "5/7");
  CHECK_THROWS_AS(a / Rational(0), pwm::DomainError);
}

TEST_CASE("big values stay exact") {
  BigInt big = 1;
  for (int i = 0; i < 200; ++i) big *= 10;
  const Rational r(big + 1, big);
  CHECK((r - Rational(1)) == Rational(BigInt(1), big));
  CHECK(pwm::bit_length(big) == 665);
  CHECK(pwm::bit_length(BigInt(0)) == 0);
  CHECK(pwm::bit_length(BigInt(-8)) == 4);
}

TEST_CASE("decimal rendering") {
  CHECK(Rational::parse("1/4").decimal(5).rfind("0.25", 0) == 0);
  CHECK(Rational::parse("-1/3").decimal(6).rfind("-0.33333", 0) == 0);
}
