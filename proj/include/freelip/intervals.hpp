#pragma once

#include <optional>
#include <string>
#include <vector>

#include "freelip/numeric.hpp"

namespace freelip {

/// One interval on the extended rational line. Open flags are ignored on an
/// unbounded side. A degenerate closed [v,v] is a point; an empty interval is
/// never stored inside an IntervalSet.
struct Interval {
    bool lo_unbounded = false;
    bool hi_unbounded = false;
    Rational lo{0};
    Rational hi{0};
    bool lo_open = false;
    bool hi_open = false;

    static Interval closed(const Rational& a, const Rational& b) { return {false, false, a, b, false, false}; }
    static Interval open(const Rational& a, const Rational& b) { return {false, false, a, b, true, true}; }
    static Interval half_open(const Rational& a, const Rational& b) { return {false, false, a, b, false, true}; }
    static Interval point(const Rational& a) { return closed(a, a); }
    static Interval ray_above(const Rational& a, bool open) { return {false, true, a, Rational(0), open, false}; }
    static Interval ray_below(const Rational& b, bool open) { return {true, false, Rational(0), b, false, open}; }
    static Interval all() { return {true, true, Rational(0), Rational(0), false, false}; }

    bool empty() const {
        if (lo_unbounded || hi_unbounded) return false;
        if (lo > hi) return true;
        return lo == hi && (lo_open || hi_open);
    }

    bool contains(const Rational& x) const {
        if (!lo_unbounded) {
            if (x < lo || (x == lo && lo_open)) return false;
        }
        if (!hi_unbounded) {
            if (x > hi || (x == hi && hi_open)) return false;
        }
        return true;
    }

    std::string str() const;
};

Interval intersect(const Interval& a, const Interval& b);

/// Normalized finite union of disjoint, non-mergeable intervals in ascending
/// order. Supports the boolean algebra needed by the symbolic set machinery.
class IntervalSet {
  public:
    IntervalSet() = default;
    explicit IntervalSet(Interval iv) {
        if (!iv.empty()) parts_.push_back(iv);
    }
    explicit IntervalSet(std::vector<Interval> parts);

    const std::vector<Interval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }

    bool contains(const Rational& x) const {
        for (const auto& p : parts_)
            if (p.contains(x)) return true;
        return false;
    }

    IntervalSet unite(const IntervalSet& other) const;
    IntervalSet intersect(const IntervalSet& other) const;
    IntervalSet complement() const;
    IntervalSet subtract(const IntervalSet& other) const { return intersect(other.complement()); }

    /// {c + x : x in this}
    IntervalSet shift(const Rational& c) const;
    /// {c - x : x in this}
    IntervalSet reflect(const Rational& c) const;

    std::string str() const;

  private:
    std::vector<Interval> parts_;
};

/// Coordinate preimage of the value set U under z |-> |z - center|:
/// (center + U) union (center - U). U must live in [0, inf).
IntervalSet preimage_abs(const IntervalSet& values, const Rational& center);

}  // namespace freelip
