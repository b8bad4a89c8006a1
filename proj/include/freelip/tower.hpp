#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "freelip/intervals.hpp"
#include "freelip/metric_space.hpp"

namespace freelip {

/// Height coefficient of a rank-k tower with decay q: the top point of the
/// tower sits at anchor + span_coeff(k, q) * scale.
Rational span_coeff(int rank, const Rational& ratio);

/// One geometric tower on the half-line. A rank-0 tower is the single point
/// {anchor}; a rank-k tower is {anchor} together with rank-(k-1) towers
/// anchored at anchor + scale*q^i with scale*q^{i+1}, i = 1, 2, ...
struct Tower {
    int rank = 0;
    Rational anchor{0};
    Rational scale{1};

    bool operator==(const Tower& o) const {
        return rank == o.rank && anchor == o.anchor && scale == o.scale;
    }
};

/// Node address: tower index plus child-index path from that tower's root.
/// tower == -1 names the adjoined basepoint at coordinate 0.
struct NodeRef {
    int tower = -1;
    std::vector<int> path;

    bool operator==(const NodeRef& o) const { return tower == o.tower && path == o.path; }
};

/// Raised when a selector cuts the space along a set with no finite
/// description: it captures infinitely many whole subtrees while excluding
/// their common limit point, so the selected set is not closed in the space.
class NonClopenCut : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A whole subtree, or a terminal segment of one (the anchor together with
/// all its children from some index on). As a point set this equals a rank-k
/// tower at `anchor` with the given effective `scale`. rank >= 1 always;
/// rank-0 components are reported as SetPoint instead.
struct SetTail {
    NodeRef node;
    Rational anchor{0};
    Rational scale{1};
    int rank = 1;
};

/// A single point of a restriction. `scale` and `rank` describe the node's
/// own subtree in the ambient space (metadata for lifting); the component
/// itself is just {coord}.
struct SetPoint {
    NodeRef node;
    Rational coord{0};
    Rational scale{0};
    int rank = 0;
};

/// Exact description of the intersection of the space with a selector, as a
/// finite disjoint union of closed components.
struct SymbolicSet {
    std::vector<SetTail> tails;
    std::vector<SetPoint> points;

    bool finite() const { return tails.empty(); }
    bool empty() const { return tails.empty() && points.empty(); }
    /// Largest component rank: the number of derivation steps after which
    /// only finitely many points remain. -1 for the empty set.
    int rank() const;
};

/// Countable compact subset of [0, inf) of finite Cantor-Bendixson rank:
/// finitely many disjoint geometric towers sharing one decay ratio, with the
/// basepoint at coordinate 0 always adjoined. Immutable after construction.
class TowerSpace {
  public:
    TowerSpace(Rational ratio, std::vector<Tower> towers, int depth_hint = 8);
    static TowerSpace single(int rank, const Rational& ratio, const Rational& anchor,
                             const Rational& scale, int depth_hint = 8);

    const Rational& ratio() const { return ratio_; }
    const std::vector<Tower>& towers() const { return towers_; }
    int depth_hint() const { return depth_hint_; }
    /// True when no towers remain: the space is the bare basepoint.
    bool bare() const { return towers_.empty(); }

    /// Least number of derivation steps leaving a finite set.
    int cb_rank() const;
    /// Symbolic derived space: each tower drops `steps` ranks; towers whose
    /// rank would become negative vanish. steps > cb_rank gives bare().
    TowerSpace derivative(int steps = 1) const;

    // Node geometry. All exact.
    Rational coordinate(const NodeRef& n) const;
    Rational node_scale(const NodeRef& n) const;
    int node_rank(const NodeRef& n) const;
    /// Closed coordinate hull [coordinate, top point] of the node's subtree.
    Interval subtree_span(const NodeRef& n) const;

    std::string point_id(const NodeRef& n) const;
    NodeRef parse_point(const std::string& id) const;

    /// Exact finite decomposition of (space intersect selector) into disjoint
    /// closed components. Throws NonClopenCut when no such decomposition
    /// exists (the selector approaches a limit point it excludes).
    SymbolicSet restrict(const IntervalSet& sel) const;
    /// Membership test without materializing a decomposition; never throws.
    bool restriction_nonempty(const IntervalSet& sel) const;
    /// Exact inf of |z - w| over w in the closure of (space intersect sel).
    /// Works for selectors with no finite decomposition. Throws
    /// std::domain_error on an empty restriction.
    Rational dist_to_restriction(const Rational& z, const IntervalSet& sel) const;

    /// Componentwise derived set: tails drop ranks, isolated points vanish.
    static SymbolicSet derive(const SymbolicSet& s, int steps = 1);
    /// Min pairwise distance within a finite set; nullopt when < 2 points.
    static std::optional<Rational> separation(const SymbolicSet& s);
    /// Exact distance between two disjoint restrictions (component hulls must
    /// not overlap, which holds for genuinely disjoint restrictions).
    static std::optional<Rational> min_gap(const SymbolicSet& a, const SymbolicSet& b,
                                           const Rational& ratio);
    /// Exact distance from a coordinate to a decomposed set (closed, so the
    /// inf is attained). Throws std::domain_error on the empty set.
    static Rational dist_to_set(const Rational& z, const SymbolicSet& s, const Rational& ratio);

    struct Truncation {
        SpacePtr<Rational> space;
        std::vector<NodeRef> nodes;  // aligned with space point indices
    };
    /// Finite realization: all paths with child indices <= depth, plus the
    /// basepoint; a line space ordered by ascending coordinate.
    Truncation truncate(int depth) const;

    /// Point-set equality; the truncation depth hint does not participate.
    bool operator==(const TowerSpace& o) const {
        return ratio_ == o.ratio_ && towers_ == o.towers_;
    }

  private:
    const Tower& tower_at(int idx) const;

    Rational ratio_;
    std::vector<Tower> towers_;
    int depth_hint_;
};

}  // namespace freelip
