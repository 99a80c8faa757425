#include "bz/error.hpp"
#include "bz/rational.hpp"

#include "doctest.h"

using namespace bz;

TEST_SUITE("rational") {

TEST_CASE("parse and print canonical fractions") {
    CHECK(to_string(parse_rational("2/4")) == "1/2");
    CHECK(to_string(parse_rational("6/3")) == "2");
    CHECK(to_string(parse_rational("-3/9")) == "-1/3");
    CHECK(to_string(parse_rational("7")) == "7");
    CHECK(parse_rational("1/3") + parse_rational("1/6") == parse_rational("1/2"));
}

TEST_CASE("reject decimals, zero denominators and junk") {
    CHECK_THROWS_AS(parse_rational("0.5"), InvalidInput);
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
    CHECK_THROWS_AS(parse_rational("abc"), InvalidInput);
    CHECK_THROWS_AS(parse_rational(""), InvalidInput);
    CHECK_THROWS_AS(parse_rational("1/2/3"), InvalidInput);
}

TEST_CASE("extended rationals") {
    const auto inf = ExtendedRational::infinity();
    CHECK(inf.is_infinite());
    CHECK(to_string(inf) == "inf");
    CHECK(inf == ExtendedRational::infinity());
    CHECK_FALSE(inf == ExtendedRational(Rational(1)));
    CHECK(inverse_sum(Rational(1), inf) == 0);
    CHECK(inverse_sum(Rational(1), ExtendedRational(Rational(2))) == Rational(1) / 3);
}

TEST_CASE("conversion to double") {
    CHECK(to_double(make_rational(1, 3)) == doctest::Approx(1.0 / 3.0));
    CHECK(make_rational(4, -8) == Rational(-1) / 2);
}

}
