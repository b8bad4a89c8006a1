#include "freelip/intervals.hpp"

#include <algorithm>
#include <sstream>

namespace freelip {

std::string Interval::str() const {
    std::ostringstream os;
    os << (lo_unbounded ? std::string("(-inf") : (lo_open ? "(" : "[") + rational_to_string(lo));
    os << ", ";
    os << (hi_unbounded ? std::string("inf)") : rational_to_string(hi) + (hi_open ? ")" : "]"));
    return os.str();
}

namespace {

// Endpoint comparison helpers. A "lo" endpoint with open=true sits just after
// the same value with open=false; for "hi" endpoints it is the reverse.
// Unbounded endpoints compare below/above everything.

struct Lo {
    bool unb;
    Rational v;
    bool open;
};
struct Hi {
    bool unb;
    Rational v;
    bool open;
};

bool lo_less(const Lo& a, const Lo& b) {
    if (a.unb != b.unb) return a.unb;
    if (a.unb) return false;
    if (a.v != b.v) return a.v < b.v;
    return !a.open && b.open;
}

bool hi_less(const Hi& a, const Hi& b) {
    if (a.unb != b.unb) return !a.unb;
    if (a.unb) return false;
    if (a.v != b.v) return a.v < b.v;
    return a.open && !b.open;
}

Lo lo_of(const Interval& iv) { return {iv.lo_unbounded, iv.lo, iv.lo_open}; }
Hi hi_of(const Interval& iv) { return {iv.hi_unbounded, iv.hi, iv.hi_open}; }

// True when the union of two intervals with a.lo <= b.lo is one interval:
// b starts no later than "just past" the end of a.
bool touches(const Interval& a, const Interval& b) {
    if (a.hi_unbounded || b.lo_unbounded) return true;
    if (b.lo < a.hi) return true;
    if (b.lo > a.hi) return false;
    return !(a.hi_open && b.lo_open);
}

}  // namespace

Interval intersect(const Interval& a, const Interval& b) {
    Interval out;
    const Lo la = lo_of(a), lb = lo_of(b);
    const Lo l = lo_less(la, lb) ? lb : la;
    const Hi ha = hi_of(a), hb = hi_of(b);
    const Hi h = hi_less(ha, hb) ? ha : hb;
    out.lo_unbounded = l.unb;
    out.lo = l.v;
    out.lo_open = l.open;
    out.hi_unbounded = h.unb;
    out.hi = h.v;
    out.hi_open = h.open;
    return out;
}

IntervalSet::IntervalSet(std::vector<Interval> parts) {
    std::vector<Interval> work;
    for (auto& iv : parts)
        if (!iv.empty()) work.push_back(iv);
    std::sort(work.begin(), work.end(), [](const Interval& a, const Interval& b) {
        if (lo_less(lo_of(a), lo_of(b))) return true;
        if (lo_less(lo_of(b), lo_of(a))) return false;
        return hi_less(hi_of(a), hi_of(b));
    });
    for (auto& iv : work) {
        if (!parts_.empty() && touches(parts_.back(), iv)) {
            Interval& last = parts_.back();
            if (hi_less(hi_of(last), hi_of(iv))) {
                last.hi_unbounded = iv.hi_unbounded;
                last.hi = iv.hi;
                last.hi_open = iv.hi_open;
            }
        } else {
            parts_.push_back(iv);
        }
    }
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
    std::vector<Interval> all = parts_;
    all.insert(all.end(), other.parts_.begin(), other.parts_.end());
    return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
    std::vector<Interval> out;
    for (const auto& a : parts_)
        for (const auto& b : other.parts_) {
            Interval c = freelip::intersect(a, b);
            if (!c.empty()) out.push_back(c);
        }
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::complement() const {
    std::vector<Interval> out;
    // Walk the gaps between consecutive parts; flip each endpoint's openness.
    bool cur_unb = true;
    Rational cur{0};
    bool cur_open = false;
    for (const auto& p : parts_) {
        Interval gap;
        gap.lo_unbounded = cur_unb;
        gap.lo = cur;
        gap.lo_open = cur_open;
        gap.hi_unbounded = false;
        if (p.lo_unbounded) {
            // Part reaches -inf; no gap before it.
        } else {
            gap.hi = p.lo;
            gap.hi_open = !p.lo_open;
            if (!gap.empty()) out.push_back(gap);
        }
        if (p.hi_unbounded) {
            return IntervalSet(std::move(out));
        }
        cur_unb = false;
        cur = p.hi;
        cur_open = !p.hi_open;
    }
    Interval tail;
    tail.lo_unbounded = cur_unb;
    tail.lo = cur;
    tail.lo_open = cur_open;
    tail.hi_unbounded = true;
    out.push_back(tail);
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::shift(const Rational& c) const {
    std::vector<Interval> out = parts_;
    for (auto& iv : out) {
        if (!iv.lo_unbounded) iv.lo += c;
        if (!iv.hi_unbounded) iv.hi += c;
    }
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::reflect(const Rational& c) const {
    std::vector<Interval> out;
    out.reserve(parts_.size());
    for (const auto& iv : parts_) {
        Interval r;
        r.lo_unbounded = iv.hi_unbounded;
        r.hi_unbounded = iv.lo_unbounded;
        if (!iv.hi_unbounded) r.lo = c - iv.hi;
        if (!iv.lo_unbounded) r.hi = c - iv.lo;
        r.lo_open = iv.hi_open;
        r.hi_open = iv.lo_open;
        out.push_back(r);
    }
    return IntervalSet(std::move(out));
}

std::string IntervalSet::str() const {
    if (parts_.empty()) return "{}";
    std::ostringstream os;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) os << " u ";
        os << parts_[i].str();
    }
    return os.str();
}

IntervalSet preimage_abs(const IntervalSet& values, const Rational& center) {
    IntervalSet nonneg = values.intersect(IntervalSet(Interval::ray_above(Rational(0), false)));
    return nonneg.shift(center).unite(nonneg.reflect(center));
}

}  // namespace freelip
