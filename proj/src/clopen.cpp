#include "freelip/clopen.hpp"

#include <utility>

namespace freelip {

namespace {

/// Closed coordinate hulls of the subtrees whose derived sets are the
/// components of (derived space) intersect sel. A tail of rank k regrows to a
/// rank-(k+1) subtree over the same anchor and scale; an isolated point of
/// the derived space regrows to the rank-1 fan of its node (a bare point,
/// like the adjoined basepoint, has scale 0 and stays a point).
IntervalSet regrown_hulls(const TowerSpace& derived, const IntervalSet& sel, const Rational& q) {
    const SymbolicSet s = derived.restrict(sel);
    std::vector<Interval> hulls;
    hulls.reserve(s.tails.size() + s.points.size());
    for (const auto& tl : s.tails)
        hulls.push_back(Interval::closed(
            tl.anchor, Rational(tl.anchor + span_coeff(tl.rank + 1, q) * tl.scale)));
    for (const auto& pt : s.points)
        hulls.push_back(Interval::closed(
            pt.coord, Rational(pt.coord + span_coeff(pt.rank + 1, q) * pt.scale)));
    return IntervalSet(std::move(hulls));
}

}  // namespace

PartitionCheck validate_partition(const ClopenPartition& p) {
    PartitionCheck out;
    if (p.parts.empty()) {
        out.detail = "partition has no parts";
        return out;
    }

    out.parts_closed = true;
    std::vector<SymbolicSet> comps(p.parts.size());
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
        try {
            comps[i] = p.space.restrict(p.parts[i]);
        } catch (const NonClopenCut& e) {
            out.parts_closed = false;
            if (out.detail.empty())
                out.detail = "part " + std::to_string(i) + " is not closed: " + e.what();
        }
    }

    out.disjoint = true;
    for (std::size_t i = 0; i < p.parts.size() && out.disjoint; ++i)
        for (std::size_t j = i + 1; j < p.parts.size(); ++j)
            if (p.space.restriction_nonempty(p.parts[i].intersect(p.parts[j]))) {
                out.disjoint = false;
                if (out.detail.empty())
                    out.detail =
                        "parts " + std::to_string(i) + " and " + std::to_string(j) + " overlap";
                break;
            }

    IntervalSet covered;
    for (const auto& sel : p.parts) covered = covered.unite(sel);
    out.covers = !p.space.restriction_nonempty(covered.complement());
    if (!out.covers && out.detail.empty()) out.detail = "parts do not cover the space";

    if (out.ok()) {
        for (std::size_t i = 0; i < comps.size(); ++i)
            for (std::size_t j = i + 1; j < comps.size(); ++j)
                if (auto g = TowerSpace::min_gap(comps[i], comps[j], p.space.ratio()))
                    if (!out.min_part_gap || *g < *out.min_part_gap) out.min_part_gap = *g;
    }
    return out;
}

ClopenPartition clopen_lift(const TowerSpace& space, const ClopenPartition& derived_partition,
                            int alpha) {
    if (alpha < 0) throw std::invalid_argument("clopen_lift: negative derivation count");
    if (!(derived_partition.space == space.derivative(alpha)))
        throw std::invalid_argument(
            "clopen_lift: partition does not live on the requested derived space");
    {
        const auto chk = validate_partition(derived_partition);
        if (!chk.ok())
            throw std::invalid_argument("clopen_lift: input partition invalid: " + chk.detail);
    }

    ClopenPartition cur = derived_partition;
    for (int m = alpha; m >= 1; --m) {
        const TowerSpace upper = space.derivative(m - 1);
        std::vector<IntervalSet> lifted;
        lifted.reserve(cur.parts.size());
        std::vector<Interval> all_hulls;
        for (const auto& sel : cur.parts) {
            IntervalSet h = regrown_hulls(cur.space, sel, space.ratio());
            for (const auto& iv : h.parts()) all_hulls.push_back(iv);
            lifted.push_back(std::move(h));
        }
        // isolated points not claimed by any regrown subtree join part 1
        lifted[0] = lifted[0].unite(IntervalSet(std::move(all_hulls)).complement());
        cur = ClopenPartition{upper, std::move(lifted)};
        const auto chk = validate_partition(cur);
        if (!chk.ok())
            throw std::logic_error("clopen_lift: lifted partition invalid: " + chk.detail);
    }
    return cur;
}

std::vector<int> assign_parts(const ClopenPartition& p, const TowerSpace::Truncation& tr) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(tr.space->size()));
    for (int i = 0; i < tr.space->size(); ++i) {
        const Rational& c = tr.space->coord(i);
        int hit = -1;
        for (std::size_t k = 0; k < p.parts.size(); ++k) {
            if (p.parts[k].contains(c)) {
                if (hit >= 0)
                    throw std::invalid_argument("assign_parts: point " + tr.space->id(i) +
                                                " lies in two parts");
                hit = static_cast<int>(k);
            }
        }
        if (hit < 0)
            throw std::invalid_argument("assign_parts: point " + tr.space->id(i) +
                                        " not covered by any part");
        out.push_back(hit);
    }
    return out;
}

}  // namespace freelip
