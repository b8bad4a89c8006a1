#include "freelip/separator.hpp"

#include <algorithm>
#include <cassert>
#include <optional>

namespace freelip {

namespace {

Rational abs_diff(const Rational& a, const Rational& b) {
    return a >= b ? Rational(a - b) : Rational(b - a);
}

Interval closure_of(const Interval& iv) {
    Interval c = iv;
    c.lo_open = false;
    c.hi_open = false;
    return c;
}

Rational pow2(int e) {
    Rational p(1);
    for (int i = 0; i < e; ++i) p *= 2;
    return p;
}

LipFn<Rational> materialize_h(const StaircaseFn& phi, const Rational& cx,
                              const TowerSpace::Truncation& tr) {
    const Rational at_base = phi.eval(cx);
    std::vector<Rational> vals;
    vals.reserve(static_cast<std::size_t>(tr.space->size()));
    for (int i = 0; i < tr.space->size(); ++i)
        vals.push_back(Rational(2 * (phi.eval(abs_diff(tr.space->coord(i), cx)) - at_base)));
    return LipFn<Rational>(tr.space, std::move(vals));
}

}  // namespace

StaircaseFn::StaircaseFn(std::vector<Plateau> plateaus) : plateaus_(std::move(plateaus)) {
    if (plateaus_.empty()) throw std::invalid_argument("staircase needs at least one plateau");
    for (const auto& p : plateaus_)
        if (p.band.empty() || p.band.lo_unbounded)
            throw std::invalid_argument("staircase plateau band must be nonempty and bounded below");
    std::sort(plateaus_.begin(), plateaus_.end(),
              [](const Plateau& a, const Plateau& b) { return a.band.lo < b.band.lo; });
    const auto& first = plateaus_.front().band;
    if (first.lo != 0 || first.lo_open)
        throw std::invalid_argument("staircase must start with a plateau closed at 0");
    if (!plateaus_.back().band.hi_unbounded)
        throw std::invalid_argument("staircase must end with an unbounded plateau");
    for (std::size_t i = 0; i + 1 < plateaus_.size(); ++i) {
        const auto& a = plateaus_[i];
        const auto& b = plateaus_[i + 1];
        if (a.band.hi_unbounded || !intersect(a.band, b.band).empty())
            throw PlateauOverlap("staircase plateaus overlap: " + a.band.str() + " meets " +
                                 b.band.str());
        if (a.band.hi == b.band.lo && a.value != b.value)
            throw PlateauOverlap("staircase plateaus touch at " + rational_to_string(a.band.hi) +
                                 " with different values");
        if (a.value > b.value)
            throw std::invalid_argument("staircase values must be nondecreasing");
    }
}

Rational StaircaseFn::eval(const Rational& t) const {
    if (t < 0) throw std::invalid_argument("staircase argument must be nonnegative");
    for (std::size_t i = 0; i < plateaus_.size(); ++i) {
        const auto& a = plateaus_[i];
        if (a.band.contains(t)) return a.value;
        if (i + 1 == plateaus_.size()) break;
        const auto& b = plateaus_[i + 1];
        if (t >= a.band.hi && t <= b.band.lo) {
            if (a.band.hi == b.band.lo) return a.value;  // touching plateaus share the value
            return Rational(a.value +
                            (t - a.band.hi) * (b.value - a.value) / (b.band.lo - a.band.hi));
        }
    }
    throw std::logic_error("staircase evaluation fell off the plateau chain");
}

Rational StaircaseFn::max_slope() const {
    Rational best(0);
    for (std::size_t i = 0; i + 1 < plateaus_.size(); ++i) {
        const auto& a = plateaus_[i];
        const auto& b = plateaus_[i + 1];
        if (a.band.hi == b.band.lo) continue;
        best = std::max(best, Rational((b.value - a.value) / (b.band.lo - a.band.hi)));
    }
    return best;
}

Rational StaircaseFn::max_slope_at_level(int level) const {
    Rational best(0);
    for (std::size_t i = 0; i + 1 < plateaus_.size(); ++i) {
        const auto& a = plateaus_[i];
        const auto& b = plateaus_[i + 1];
        if (std::max(a.level, b.level) != level || a.band.hi == b.band.lo) continue;
        best = std::max(best, Rational((b.value - a.value) / (b.band.lo - a.band.hi)));
    }
    return best;
}

Rational separation_constant(int levels) {
    if (levels < 0) throw std::invalid_argument("separation constant needs levels >= 0");
    Rational c(2);
    Rational p(1);
    for (int j = 1; j <= levels; ++j) {
        p *= 2;
        c *= Rational(1) + Rational(1) / Rational(p - 1);
    }
    return c;
}

double separation_constant_limit() {
    double c = 2.0, p = 1.0;
    for (int j = 1; j <= 64; ++j) {
        p *= 2.0;
        c *= 1.0 + 1.0 / (p - 1.0);  // factors hit 1.0 exactly well before j = 64
    }
    return c;
}

SeparatorCertificate separate(const TowerSpace& space, const NodeRef& x, const NodeRef& y) {
    const Rational cx = space.coordinate(x);
    const Rational cy = space.coordinate(y);
    const Rational a = abs_diff(cx, cy);
    if (a == 0) throw std::invalid_argument("separate: the two points coincide");
    const Rational radius(a / 2);

    IntervalSet ball{Interval::closed(Rational(cx - radius), Rational(cx + radius))};
    SymbolicSet working = space.restrict(ball);  // closed selector, never cuts

    std::vector<Plateau> plateaus;
    std::vector<CascadeLevel> trace;
    std::optional<StaircaseFn> phi;

    int level = 0;
    while (true) {
        level += 1;
        if (level > space.cb_rank() + 2)
            throw std::logic_error("separator cascade failed to terminate");

        // Least number of derivation steps leaving the working set finite;
        // the result is nonempty because the top-rank components survive.
        const int alpha = working.rank();
        const SymbolicSet centers = TowerSpace::derive(working, alpha);
        std::vector<Rational> values;
        values.reserve(centers.points.size());
        for (const auto& p : centers.points) values.push_back(abs_diff(p.coord, cx));
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());

        // Minimal spacing scale of this round.
        Rational v(0);
        if (level == 1) {
            if (values.size() == 1 && values[0] == 0) {
                v = radius;  // the derived ball collapsed to x itself
            } else {
                std::optional<Rational> m;
                auto feed = [&](const Rational& c) {
                    if (c > 0 && (!m || c < *m)) m = c;
                };
                feed(values.front());
                feed(Rational(radius - values.back()));
                for (std::size_t i = 1; i < values.size(); ++i)
                    feed(Rational(values[i] - values[i - 1]));
                if (!m) throw std::logic_error("separator spacing scan found no positive gap");
                v = *m;
            }
        } else {
            // Each fresh plateau is carved out of an affine segment between
            // two standing plateau closures. The end pieces keep their slope
            // budget 1 + 1/(2^level - 1) exactly when every center sits at
            // least v/2 from those closures; the middle pieces need the
            // centers v apart. Both enter the min below.
            std::optional<Rational> m;
            auto feed = [&](const Rational& c) {
                if (c > 0 && (!m || c < *m)) m = c;
            };
            for (const auto& w : values) {
                for (const auto& old : plateaus) {
                    const Interval cl = closure_of(old.band);
                    if (cl.contains(w)) continue;  // overlap check reports this
                    feed(Rational(2 * (w < cl.lo ? Rational(cl.lo - w) : Rational(w - cl.hi))));
                }
            }
            for (std::size_t i = 1; i < values.size(); ++i)
                feed(Rational(values[i] - values[i - 1]));
            if (!m) throw std::logic_error("separator spacing scan found no positive gap");
            v = *m;
        }
        const Rational half(v / pow2(level + 1));

        // Place the plateaus of this round.
        if (level == 1) {
            plateaus.push_back({Interval::half_open(Rational(0), half), Rational(0), 1});
            for (const auto& w : values)
                if (w > 0 && w < radius)
                    plateaus.push_back({Interval::open(Rational(w - half), Rational(w + half)), w, 1});
            plateaus.push_back({Interval::ray_above(Rational(radius - half), true), radius, 1});
        } else {
            // A fresh center can land exactly on the closure edge of a
            // standing plateau, where phi already takes that plateau's
            // value; the band then widens the standing plateau instead of
            // stacking a second one. Distinct values are a real conflict.
            std::vector<Plateau> fresh;
            for (const auto& w : values) {
                const Rational val = phi->eval(w);
                Interval band = Interval::open(Rational(w - half), Rational(w + half));
                bool merged = false;
                for (auto& old : plateaus) {
                    if (intersect(band, closure_of(old.band)).empty()) continue;
                    if (old.value != val)
                        throw PlateauOverlap("round " + std::to_string(level) + " plateau " +
                                             band.str() + " meets the closure of " +
                                             old.band.str());
                    if (band.lo < old.band.lo && band.lo >= 0) {
                        old.band.lo = band.lo;
                        old.band.lo_open = true;
                    }
                    if (!old.band.hi_unbounded && band.hi > old.band.hi) {
                        old.band.hi = band.hi;
                        old.band.hi_open = true;
                    }
                    merged = true;
                    break;
                }
                if (!merged) fresh.push_back({band, val, level});
            }
            plateaus.insert(plateaus.end(), fresh.begin(), fresh.end());
        }
        phi.emplace(plateaus);  // revalidates the whole system
        plateaus = phi->plateaus();

        CascadeLevel entry;
        entry.level = level;
        entry.alpha = alpha;
        entry.center_values = values;
        entry.v = v;
        entry.half_width = half;

        // Working set of the next round: points whose distance to x avoids
        // every plateau. The band [v1/4, a/2 - v1/4] is implied by the first
        // and last plateau.
        std::vector<Interval> bands;
        bands.reserve(plateaus.size());
        for (const auto& p : plateaus) bands.push_back(p.band);
        const IntervalSet nonneg(Interval::ray_above(Rational(0), false));
        const IntervalSet c_values = IntervalSet(bands).complement().intersect(nonneg);
        const IntervalSet c_sel = preimage_abs(c_values, cx);
        const SymbolicSet c_set = space.restrict(c_sel);  // closed parts, never cuts

        entry.c_finite = c_set.finite();
        entry.c_empty = c_set.empty();
        entry.c_tail_count = static_cast<int>(c_set.tails.size());

        if (!c_set.finite()) {
            if (c_set.rank() >= working.rank())
                throw std::logic_error("separator cascade rank did not drop");
            trace.push_back(std::move(entry));
            working = c_set;
            continue;
        }

        for (const auto& p : c_set.points) entry.c_points.push_back(p.coord);
        std::sort(entry.c_points.begin(), entry.c_points.end());

        // Interior leftovers: distance to x also clear of the plateau closures.
        std::vector<Interval> closures;
        closures.reserve(plateaus.size());
        for (const auto& p : plateaus) closures.push_back(closure_of(p.band));
        const IntervalSet d_values = IntervalSet(closures).complement().intersect(nonneg);
        for (const auto& p : c_set.points)
            if (d_values.contains(abs_diff(p.coord, cx))) entry.d_points.push_back(p.coord);
        std::sort(entry.d_points.begin(), entry.d_points.end());

        Rational delta(0);
        if (c_set.empty()) {
            delta = Rational(v / 2);
        } else {
            Rational m = v;
            if (auto s = TowerSpace::separation(c_set)) m = std::min(m, *s);
            if (!entry.d_points.empty()) {
                const IntervalSet outside = c_sel.complement();  // K minus the leftover set
                for (const auto& z : entry.d_points)
                    m = std::min(m, space.dist_to_restriction(z, outside));
            }
            delta = Rational(m / 2);
        }
        // The output changes only across a gap between plateau closures with
        // different values. After round 1 every such gap is at least v/2, but
        // a later round may drop a plateau much closer to an old one, so the
        // flatness scale must be capped by the smallest realized gap.
        for (std::size_t i = 0; i + 1 < plateaus.size(); ++i) {
            if (plateaus[i].value == plateaus[i + 1].value) continue;
            delta = std::min(delta, Rational(plateaus[i + 1].band.lo - plateaus[i].band.hi));
        }
        if (delta <= 0) throw std::logic_error("separator witness scale collapsed to zero");

        trace.push_back(std::move(entry));

        const Rational bound = separation_constant(level);
        if (Rational(phi->max_slope() * 2) > bound)
            throw std::logic_error("separator slope exceeded its bound");

        LipFn<Rational> h = materialize_h(*phi, cx, space.truncate(space.depth_hint()));
        return SeparatorCertificate{space, x,     y,     a,    *phi, std::move(h),
                                    level, bound, delta, std::move(trace)};
    }
}

LipFn<Rational> SeparatorCertificate::materialize(const TowerSpace::Truncation& tr) const {
    return materialize_h(phi, space.coordinate(x), tr);
}

CertificateCheck verify_certificate(const SeparatorCertificate& cert, int depth) {
    CertificateCheck out;
    const auto tr = cert.space.truncate(depth);
    const auto& sp = *tr.space;
    const Rational cx = cert.space.coordinate(cert.x);
    const Rational cy = cert.space.coordinate(cert.y);
    int ix = -1, iy = -1;
    for (int i = 0; i < sp.size(); ++i) {
        if (sp.coord(i) == cx) ix = i;
        if (sp.coord(i) == cy) iy = i;
    }
    if (ix < 0 || iy < 0) {
        out.present = false;
        return out;
    }
    const LipFn<Rational> h = cert.materialize(tr);
    out.transport_exact = abs_diff(h[ix], h[iy]) == cert.a;
    out.measured_lip = lip_norm(h);
    out.slope_ok = out.measured_lip <= cert.slope_bound;
    out.measured_modulus = little_lip_modulus(h, cert.witness_delta);
    out.flat_below_delta = out.measured_modulus == 0;
    if (!out.flat_below_delta) {
        // name one offending pair; on the line an adjacent pair suffices
        for (int i = 0; i + 1 < sp.size(); ++i) {
            if (sp.dist(i, i + 1) < cert.witness_delta && h[i] != h[i + 1]) {
                out.modulus_witness_u = sp.id(i);
                out.modulus_witness_v = sp.id(i + 1);
                break;
            }
        }
    }
    out.base_zero = h[sp.base()] == Rational(0);
    return out;
}

}  // namespace freelip
