#include <doctest.h>

#include "freelip/numeric.hpp"

using namespace freelip;

TEST_CASE("rational parsing accepts fractions, integers and decimals") {
    CHECK(parse_rational("3/4") == Rational(3) / 4);
    CHECK(parse_rational("-7/2") == Rational(-7) / 2);
    CHECK(parse_rational("5") == Rational(5));
    CHECK(parse_rational("0.25") == Rational(1) / 4);
    CHECK(parse_rational("1e-2") == Rational(1) / 100);
}

TEST_CASE("rational to string round trips") {
    const Rational v = Rational(-22) / 7;
    CHECK(parse_rational(rational_to_string(v)) == v);
    CHECK(rational_to_string(Rational(3)) == "3");
}

TEST_CASE("rational from double is the exact binary expansion") {
    CHECK(rational_from_double(0.5) == Rational(1) / 2);
    CHECK(rational_from_double(0.375) == Rational(3) / 8);
    CHECK_THROWS_AS((void)rational_from_double(1.0 / 0.0), std::invalid_argument);
}

TEST_CASE("canonical rounding keeps 12 significant digits") {
    CHECK(canonical(2.0) == 2.0);
    CHECK(canonical(1.0 / 3.0) == doctest::Approx(0.333333333333).epsilon(1e-15));
    CHECK(canonical(123456789012345.0) == 123456789012000.0);
}

TEST_CASE("scalar traits expose exactness and conversion") {
    CHECK(scalar_traits<Rational>::exact);
    CHECK_FALSE(scalar_traits<double>::exact);
    CHECK(scalar_traits<double>::from_rational(Rational(1) / 2) == 0.5);
    CHECK(to_double<Rational>(Rational(1) / 4) == 0.25);
}

TEST_CASE("absolute value works on both scalars") {
    CHECK(abs_val(Rational(-3) / 2) == Rational(3) / 2);
    CHECK(abs_val(-2.5) == 2.5);
}
