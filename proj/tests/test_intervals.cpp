#include <doctest.h>

#include "freelip/intervals.hpp"

using namespace freelip;
using R = Rational;

TEST_CASE("interval membership honors open flags") {
    const auto iv = Interval::half_open(R(0), R(1));
    CHECK(iv.contains(R(0)));
    CHECK(iv.contains(R(1) / 2));
    CHECK_FALSE(iv.contains(R(1)));
    CHECK(Interval::ray_above(R(2), true).contains(R(3)));
    CHECK_FALSE(Interval::ray_above(R(2), true).contains(R(2)));
}

TEST_CASE("normalization merges touching pieces") {
    IntervalSet s({Interval::point(R(0)), Interval::open(R(0), R(1))});
    REQUIRE(s.parts().size() == 1);
    CHECK(s.parts()[0].lo == R(0));
    CHECK_FALSE(s.parts()[0].lo_open);
    CHECK(s.parts()[0].hi == R(1));
    CHECK(s.parts()[0].hi_open);
}

TEST_CASE("two open pieces sharing an endpoint stay separate") {
    IntervalSet s({Interval::open(R(0), R(1)), Interval::open(R(1), R(2))});
    CHECK(s.parts().size() == 2);
    CHECK_FALSE(s.contains(R(1)));
}

TEST_CASE("complement of a closed interval is two open rays") {
    IntervalSet s(Interval::closed(R(0), R(1)));
    auto c = s.complement();
    REQUIRE(c.parts().size() == 2);
    CHECK(c.parts()[0].hi_open);
    CHECK(c.parts()[1].lo_open);
    CHECK(c.contains(R(-1)));
    CHECK_FALSE(c.contains(R(0)));
    CHECK_FALSE(c.contains(R(1)));
    CHECK(c.contains(R(2)));
}

TEST_CASE("boolean algebra identities") {
    IntervalSet a(Interval::closed(R(0), R(2)));
    IntervalSet b(Interval::open(R(1), R(3)));
    auto both = a.intersect(b);
    REQUIRE(both.parts().size() == 1);
    CHECK(both.parts()[0].lo == R(1));
    CHECK(both.parts()[0].lo_open);
    CHECK(both.parts()[0].hi == R(2));
    CHECK_FALSE(both.parts()[0].hi_open);
    CHECK(a.subtract(b).contains(R(1)));
    CHECK_FALSE(a.subtract(b).contains(R(3) / 2));
    CHECK(a.unite(b).contains(R(5) / 2));
    CHECK(a.complement().complement().parts().size() == a.parts().size());
}

TEST_CASE("shift and reflect move sets exactly") {
    IntervalSet s(Interval::half_open(R(1), R(2)));
    auto moved = s.shift(R(3));
    CHECK(moved.contains(R(4)));
    CHECK_FALSE(moved.contains(R(5)));
    auto mirrored = s.reflect(R(0));  // [1,2) maps to (-2,-1]
    CHECK(mirrored.contains(R(-3) / 2));
    CHECK(mirrored.contains(R(-1)));
    CHECK_FALSE(mirrored.contains(R(-2)));
}

TEST_CASE("preimage of values under distance from a center") {
    IntervalSet vals(Interval::closed(R(1), R(2)));
    auto pre = preimage_abs(vals, R(5));
    CHECK(pre.contains(R(3)));
    CHECK(pre.contains(R(4)));
    CHECK(pre.contains(R(6)));
    CHECK(pre.contains(R(7)));
    CHECK_FALSE(pre.contains(R(5)));
    CHECK_FALSE(pre.contains(R(9) / 2));
}

TEST_CASE("empty intervals vanish on construction") {
    CHECK(IntervalSet(Interval::open(R(1), R(1))).empty());
    CHECK(Interval::closed(R(2), R(1)).empty());
    CHECK_FALSE(Interval::point(R(1)).empty());
}
