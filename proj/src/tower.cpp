#include "freelip/tower.hpp"

#include <algorithm>
#include <sstream>

namespace freelip {

namespace {

// Index scans below are logarithmic in the selector geometry; the guard only
// trips on a logic error.
constexpr int kMaxScan = 200000;

[[noreturn]] void scan_overflow(const char* where) {
    throw std::runtime_error(std::string("tower index scan did not terminate in ") + where);
}

// True when sel has points in (t, t+eps) for every eps > 0, i.e. some part
// starts at or below t and extends strictly above it.
bool accumulates_above(const IntervalSet& sel, const Rational& t) {
    for (const auto& p : sel.parts()) {
        const bool lo_ok = p.lo_unbounded || p.lo <= t;
        const bool hi_ok = p.hi_unbounded || p.hi > t;
        if (lo_ok && hi_ok) return true;
    }
    return false;
}

// inf of sel ∩ (t, inf); equals t exactly when sel accumulates above t.
std::optional<Rational> inf_above(const IntervalSet& sel, const Rational& t) {
    std::optional<Rational> best;
    for (const auto& p : sel.parts()) {
        if (!(p.hi_unbounded || p.hi > t)) continue;
        Rational lo = (p.lo_unbounded || p.lo <= t) ? t : p.lo;
        if (!best || lo < *best) best = lo;
    }
    return best;
}

bool meets(const IntervalSet& sel, const Interval& iv) {
    for (const auto& p : sel.parts())
        if (!intersect(p, iv).empty()) return true;
    return false;
}

Rational abs_diff(const Rational& a, const Rational& b) { return a < b ? b - a : a - b; }

}  // namespace

Rational span_coeff(int rank, const Rational& ratio) {
    if (rank < 0) throw std::invalid_argument("span_coeff: negative rank");
    Rational c(0);
    for (int j = 0; j < rank; ++j) c = ratio + ratio * ratio * c;
    return c;
}

int SymbolicSet::rank() const {
    if (!tails.empty()) {
        int r = 0;
        for (const auto& tl : tails) r = std::max(r, tl.rank);
        return r;
    }
    return points.empty() ? -1 : 0;
}

TowerSpace::TowerSpace(Rational ratio, std::vector<Tower> towers, int depth_hint)
    : ratio_(std::move(ratio)), towers_(std::move(towers)), depth_hint_(depth_hint) {
    if (depth_hint_ < 1) throw std::invalid_argument("tower space: depth hint must be >= 1");
    if (!(ratio_ > 0)) throw std::invalid_argument("tower space: ratio must be positive");
    int max_rank = 0;
    for (const auto& t : towers_) {
        if (t.rank < 0) throw std::invalid_argument("tower space: negative rank");
        if (!(t.scale > 0)) throw std::invalid_argument("tower space: scale must be positive");
        if (t.anchor < 0) throw std::invalid_argument("tower space: anchor must be >= 0");
        max_rank = std::max(max_rank, t.rank);
    }
    const Rational cap = max_rank >= 2 ? Rational(1, 4) : Rational(1, 2);
    if (ratio_ > cap)
        throw std::invalid_argument(max_rank >= 2
                                        ? "tower space: ratio must be <= 1/4 for rank >= 2"
                                        : "tower space: ratio must be <= 1/2");
    // Children must clear the span of the next deeper child block.
    if (max_rank >= 1) {
        const Rational packing = ratio_ * (1 + ratio_ * span_coeff(max_rank - 1, ratio_));
        if (!(packing < 1)) throw std::invalid_argument("tower space: towers do not pack disjointly");
    }
    std::sort(towers_.begin(), towers_.end(),
              [](const Tower& a, const Tower& b) { return a.anchor < b.anchor; });
    for (std::size_t i = 1; i < towers_.size(); ++i) {
        const Rational prev_top =
            towers_[i - 1].anchor + span_coeff(towers_[i - 1].rank, ratio_) * towers_[i - 1].scale;
        if (!(prev_top < towers_[i].anchor))
            throw std::invalid_argument("tower space: tower spans overlap");
    }
}

TowerSpace TowerSpace::single(int rank, const Rational& ratio, const Rational& anchor,
                              const Rational& scale, int depth_hint) {
    return TowerSpace(ratio, {Tower{rank, anchor, scale}}, depth_hint);
}

int TowerSpace::cb_rank() const {
    int r = 0;
    for (const auto& t : towers_) r = std::max(r, t.rank);
    return r;
}

TowerSpace TowerSpace::derivative(int steps) const {
    if (steps < 0) throw std::invalid_argument("derivative: steps must be >= 0");
    std::vector<Tower> kept;
    for (const auto& t : towers_)
        if (t.rank - steps >= 0) kept.push_back(Tower{t.rank - steps, t.anchor, t.scale});
    return TowerSpace(ratio_, std::move(kept), depth_hint_);
}

const Tower& TowerSpace::tower_at(int idx) const {
    if (idx < 0 || idx >= static_cast<int>(towers_.size()))
        throw std::out_of_range("tower index out of range");
    return towers_[static_cast<std::size_t>(idx)];
}

Rational TowerSpace::coordinate(const NodeRef& n) const {
    if (n.tower < 0) {
        if (!n.path.empty()) throw std::invalid_argument("basepoint node cannot have a path");
        return Rational(0);
    }
    const Tower& tw = tower_at(n.tower);
    if (static_cast<int>(n.path.size()) > tw.rank)
        throw std::invalid_argument("node path longer than tower rank");
    Rational t = tw.anchor, r = tw.scale;
    for (int idx : n.path) {
        if (idx < 1) throw std::invalid_argument("node path indices start at 1");
        Rational step(1);
        for (int j = 0; j < idx; ++j) step *= ratio_;
        t += r * step;
        r = r * step * ratio_;
    }
    return t;
}

Rational TowerSpace::node_scale(const NodeRef& n) const {
    if (n.tower < 0) return Rational(0);
    const Tower& tw = tower_at(n.tower);
    Rational r = tw.scale;
    for (int idx : n.path) {
        Rational step(1);
        for (int j = 0; j < idx; ++j) step *= ratio_;
        r = r * step * ratio_;
    }
    return r;
}

int TowerSpace::node_rank(const NodeRef& n) const {
    if (n.tower < 0) return 0;
    const Tower& tw = tower_at(n.tower);
    const int r = tw.rank - static_cast<int>(n.path.size());
    if (r < 0) throw std::invalid_argument("node path longer than tower rank");
    return r;
}

Interval TowerSpace::subtree_span(const NodeRef& n) const {
    const Rational c = coordinate(n);
    if (n.tower < 0) return Interval::point(c);
    return Interval::closed(c, c + span_coeff(node_rank(n), ratio_) * node_scale(n));
}

std::string TowerSpace::point_id(const NodeRef& n) const {
    if (n.tower < 0 || coordinate(n) == 0) return "0";
    std::ostringstream os;
    os << 't' << n.tower;
    for (int idx : n.path) os << '.' << idx;
    return os.str();
}

NodeRef TowerSpace::parse_point(const std::string& id) const {
    if (id == "0") {
        for (std::size_t j = 0; j < towers_.size(); ++j)
            if (towers_[j].anchor == 0) return NodeRef{static_cast<int>(j), {}};
        return NodeRef{-1, {}};
    }
    if (id.empty() || id[0] != 't') throw std::invalid_argument("point id must be \"0\" or t<j>[.<i>...]");
    const auto parse_int = [&id](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad number in point id: " + id);
        }
        if (used != s.size() || s.empty())
            throw std::invalid_argument("bad number in point id: " + id);
        return v;
    };
    NodeRef n;
    std::size_t pos = 1;
    std::size_t dot = id.find('.', pos);
    n.tower = parse_int(id.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos));
    while (dot != std::string::npos) {
        pos = dot + 1;
        dot = id.find('.', pos);
        n.path.push_back(
            parse_int(id.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos)));
    }
    (void)coordinate(n);  // validates range, path length, index positivity
    return n;
}

namespace {

struct Walker {
    const Rational& q;
    SymbolicSet* out;

    // Restrict the subtree (rank k, anchor t, scale r) to one interval part.
    void restrict_node(int k, const Rational& t, const Rational& r, const Interval& part,
                       const NodeRef& node) const {
        const Rational top = t + span_coeff(k, q) * r;
        if (intersect(part, Interval::closed(t, top)).empty()) return;
        if (part.contains(t) && part.contains(top)) {
            if (k == 0)
                out->points.push_back(SetPoint{node, t, r, 0});
            else
                out->tails.push_back(SetTail{node, t, r, k});
            return;
        }
        if (k == 0) return;  // single point, not contained
        if (part.contains(t)) {
            // part.hi is bounded and cuts inside the span (else contained above).
            if (part.hi == t) {
                out->points.push_back(SetPoint{node, t, r, k});
                return;
            }
            // Least i whose whole child span fits under the hi cut; everything
            // from there down forms one terminal segment.
            const Rational c1 = 1 + span_coeff(k - 1, q) * q;
            Rational pw = r * q;
            int i0 = 1;
            for (;; ++i0) {
                if (i0 > kMaxScan) scan_overflow("restrict/tail");
                const Rational ctop = t + pw * c1;
                if (part.hi_open ? ctop < part.hi : ctop <= part.hi) break;
                pw *= q;
            }
            Rational tail_scale = r;
            for (int j = 1; j < i0; ++j) tail_scale *= q;
            out->tails.push_back(SetTail{node, t, tail_scale, k});
            Rational bw = r * q;
            for (int i = 1; i < i0; ++i) {
                NodeRef child = node;
                child.path.push_back(i);
                restrict_node(k - 1, t + bw, bw * q, part, child);
                bw *= q;
            }
            return;
        }
        // Anchor excluded. A part reaching down to t while extending above it
        // selects infinitely many whole child subtrees minus their limit.
        const bool lo_at_or_below = part.lo_unbounded || part.lo <= t;
        const bool has_above = part.hi_unbounded || part.hi > t;
        if (lo_at_or_below && has_above)
            throw NonClopenCut("selector excludes the limit point at coordinate " +
                               rational_to_string(t) + " while capturing its whole tail");
        if (!has_above) return;
        const Rational mu = part.lo;  // > t here: lo bounded, above t
        const Rational c1 = 1 + span_coeff(k - 1, q) * q;
        Rational bw = r * q;
        for (int i = 1;; ++i) {
            if (i > kMaxScan) scan_overflow("restrict/children");
            const Rational ctop = t + bw * c1;
            if (ctop < mu) break;
            NodeRef child = node;
            child.path.push_back(i);
            restrict_node(k - 1, t + bw, bw * q, part, child);
            bw *= q;
        }
    }
};

}  // namespace

SymbolicSet TowerSpace::restrict(const IntervalSet& sel) const {
    SymbolicSet out;
    Walker w{ratio_, &out};
    for (const auto& part : sel.parts())
        for (std::size_t j = 0; j < towers_.size(); ++j)
            w.restrict_node(towers_[j].rank, towers_[j].anchor, towers_[j].scale, part,
                            NodeRef{static_cast<int>(j), {}});
    bool base_is_anchor = false;
    for (const auto& t : towers_)
        if (t.anchor == 0) base_is_anchor = true;
    if (!base_is_anchor && sel.contains(Rational(0)))
        out.points.push_back(SetPoint{NodeRef{-1, {}}, Rational(0), Rational(0), 0});
    std::sort(out.tails.begin(), out.tails.end(),
              [](const SetTail& a, const SetTail& b) { return a.anchor < b.anchor; });
    std::sort(out.points.begin(), out.points.end(),
              [](const SetPoint& a, const SetPoint& b) { return a.coord < b.coord; });
    return out;
}

namespace {

bool nonempty_node(int k, const Rational& t, const Rational& r, const IntervalSet& sel,
                   const Rational& q) {
    const Rational top = t + span_coeff(k, q) * r;
    if (!meets(sel, Interval::closed(t, top))) return false;
    if (sel.contains(t)) return true;
    if (k == 0) return false;
    if (accumulates_above(sel, t)) return true;
    const auto mu = inf_above(sel, t);
    if (!mu) return false;
    const Rational c1 = 1 + span_coeff(k - 1, q) * q;
    Rational bw = r * q;
    for (int i = 1;; ++i) {
        if (i > kMaxScan) scan_overflow("nonempty/children");
        const Rational ctop = t + bw * c1;
        if (ctop < *mu) break;
        if (nonempty_node(k - 1, t + bw, bw * q, sel, q)) return true;
        bw *= q;
    }
    return false;
}

}  // namespace

bool TowerSpace::restriction_nonempty(const IntervalSet& sel) const {
    if (sel.contains(Rational(0))) return true;
    for (const auto& t : towers_)
        if (nonempty_node(t.rank, t.anchor, t.scale, sel, ratio_)) return true;
    return false;
}

namespace {

// Exact inf of |z - w| over the closure of (subtree ∩ sel). Limit anchors
// count: an excluded anchor with sel accumulating just above it lies in the
// closure. best carries the running minimum across subtrees.
void dist_node(int k, const Rational& t, const Rational& r, const Rational& z,
               const IntervalSet& sel, const Rational& q, std::optional<Rational>& best) {
    const Rational top = t + span_coeff(k, q) * r;
    const Rational span_lb = z < t ? t - z : (z > top ? z - top : Rational(0));
    if (best && span_lb >= *best) return;
    if (!meets(sel, Interval::closed(t, top))) return;
    const bool in_t = sel.contains(t);
    const bool acc = k >= 1 && accumulates_above(sel, t);
    if (in_t || acc) {
        const Rational d = abs_diff(z, t);
        if (!best || d < *best) best = d;
    }
    if (k == 0) return;
    if (z <= t && (in_t || acc)) return;  // children sit above t, strictly worse
    std::optional<Rational> mu_cut;
    if (!acc) {
        mu_cut = inf_above(sel, t);
        if (!mu_cut) return;
    }
    const Rational c1 = 1 + span_coeff(k - 1, q) * q;
    Rational bw = r * q;
    for (int i = 1;; ++i) {
        if (i > kMaxScan) scan_overflow("dist/children");
        const Rational cb = t + bw;
        const Rational ctop = t + bw * c1;
        if (mu_cut && ctop < *mu_cut) break;
        if (best && cb <= z && z - ctop >= *best) break;  // lower bound grows from here on
        dist_node(k - 1, cb, bw * q, z, sel, q, best);
        bw *= q;
    }
}

}  // namespace

Rational TowerSpace::dist_to_restriction(const Rational& z, const IntervalSet& sel) const {
    std::optional<Rational> best;
    if (sel.contains(Rational(0))) best = abs_diff(z, Rational(0));
    for (const auto& t : towers_) dist_node(t.rank, t.anchor, t.scale, z, sel, ratio_, best);
    if (!best) throw std::domain_error("dist_to_restriction: empty restriction");
    return *best;
}

SymbolicSet TowerSpace::derive(const SymbolicSet& s, int steps) {
    if (steps < 0) throw std::invalid_argument("derive: steps must be >= 0");
    if (steps == 0) return s;
    SymbolicSet out;
    for (const auto& tl : s.tails) {
        const int r = tl.rank - steps;
        if (r >= 1)
            out.tails.push_back(SetTail{tl.node, tl.anchor, tl.scale, r});
        else if (r == 0)
            out.points.push_back(SetPoint{tl.node, tl.anchor, tl.scale, 0});
    }
    return out;
}

std::optional<Rational> TowerSpace::separation(const SymbolicSet& s) {
    if (!s.finite()) throw std::logic_error("separation: set is infinite");
    if (s.points.size() < 2) return std::nullopt;
    std::vector<Rational> cs;
    cs.reserve(s.points.size());
    for (const auto& p : s.points) cs.push_back(p.coord);
    std::sort(cs.begin(), cs.end());
    Rational best = cs[1] - cs[0];
    for (std::size_t i = 2; i < cs.size(); ++i) best = std::min(best, Rational(cs[i] - cs[i - 1]));
    return best;
}

namespace {

struct Hull {
    Rational lo, hi;
};

std::vector<Hull> hulls_of(const SymbolicSet& s, const Rational& q) {
    std::vector<Hull> out;
    for (const auto& tl : s.tails)
        out.push_back(Hull{tl.anchor, tl.anchor + span_coeff(tl.rank, q) * tl.scale});
    for (const auto& p : s.points) out.push_back(Hull{p.coord, p.coord});
    return out;
}

// Exact distance from a coordinate to a rank-k tower set at (t, r). The set
// is closed and full inside its hull, so only the anchor, the child block
// around z, and the next block above z can attain the minimum.
Rational dist_point_tail(const Rational& z, int k, const Rational& t, const Rational& r,
                         const Rational& q) {
    if (z <= t) return t - z;
    const Rational top = t + span_coeff(k, q) * r;
    if (z >= top) return z - top;
    // strictly inside the hull, so k >= 1
    Rational best = z - t;
    Rational bw = r * q;
    Rational prev_b(0);
    for (int i = 1;; ++i) {
        if (i > kMaxScan) scan_overflow("dist_point_tail");
        const Rational b = t + bw;
        if (b <= z) {
            best = std::min(best, dist_point_tail(z, k - 1, b, bw * q, q));
            if (i >= 2) best = std::min(best, Rational(prev_b - z));
            return best;
        }
        prev_b = b;
        bw *= q;
    }
}

}  // namespace

std::optional<Rational> TowerSpace::min_gap(const SymbolicSet& a, const SymbolicSet& b,
                                            const Rational& ratio) {
    if (a.empty() || b.empty()) return std::nullopt;
    const auto ha = hulls_of(a, ratio);
    const auto hb = hulls_of(b, ratio);
    std::optional<Rational> best;
    for (const auto& x : ha)
        for (const auto& y : hb) {
            Rational gap;
            if (y.lo > x.hi)
                gap = y.lo - x.hi;
            else if (x.lo > y.hi)
                gap = x.lo - y.hi;
            else
                throw std::logic_error("min_gap: component hulls overlap; sets share points");
            if (!best || gap < *best) best = gap;
        }
    return best;
}

Rational TowerSpace::dist_to_set(const Rational& z, const SymbolicSet& s, const Rational& ratio) {
    if (s.empty()) throw std::domain_error("dist_to_set: empty set");
    std::optional<Rational> best;
    for (const auto& p : s.points) {
        const Rational d = abs_diff(z, p.coord);
        if (!best || d < *best) best = d;
    }
    for (const auto& tl : s.tails) {
        const Rational d = dist_point_tail(z, tl.rank, tl.anchor, tl.scale, ratio);
        if (!best || d < *best) best = d;
    }
    return *best;
}

namespace {

struct PathWalker {
    const Rational& q;
    int depth;
    std::vector<std::pair<Rational, NodeRef>>* pts;

    void walk(int k, const Rational& t, const Rational& r, const NodeRef& node) const {
        pts->emplace_back(t, node);
        if (k == 0) return;
        Rational bw = r * q;
        for (int i = 1; i <= depth; ++i) {
            NodeRef child = node;
            child.path.push_back(i);
            walk(k - 1, t + bw, bw * q, child);
            bw *= q;
        }
    }
};

}  // namespace

TowerSpace::Truncation TowerSpace::truncate(int depth) const {
    if (depth < 1) throw std::invalid_argument("truncate: depth must be >= 1");
    std::vector<std::pair<Rational, NodeRef>> pts;
    PathWalker rec{ratio_, depth, &pts};
    for (std::size_t j = 0; j < towers_.size(); ++j) {
        const Tower& tw = towers_[j];
        rec.walk(tw.rank, tw.anchor, tw.scale, NodeRef{static_cast<int>(j), {}});
    }
    bool has_zero = false;
    for (const auto& [c, n] : pts)
        if (c == 0) has_zero = true;
    if (!has_zero) pts.emplace_back(Rational(0), NodeRef{-1, {}});
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::string> ids;
    std::vector<Rational> coords;
    std::vector<NodeRef> nodes;
    int base = -1;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        coords.push_back(pts[i].first);
        nodes.push_back(pts[i].second);
        ids.push_back(point_id(pts[i].second));
        if (pts[i].first == 0) base = static_cast<int>(i);
    }
    return Truncation{
        std::make_shared<const FiniteSpace<Rational>>(
            FiniteSpace<Rational>::from_line(std::move(ids), std::move(coords), base)),
        std::move(nodes)};
}

}  // namespace freelip
