#pragma once

#include <optional>
#include <string>
#include <vector>

#include "freelip/tower.hpp"

namespace freelip {

/// Partition of a tower space into clopen pieces, each given by a coordinate
/// selector. Valid when the selectors are pairwise disjoint on the space,
/// cover it, and each cuts along a closed set (then every part is clopen,
/// since its complement is the finite union of the other closed parts).
struct ClopenPartition {
    TowerSpace space;
    std::vector<IntervalSet> parts;
};

struct PartitionCheck {
    bool parts_closed = false;
    bool disjoint = false;
    bool covers = false;
    /// Smallest distance between two distinct nonempty parts; nullopt when
    /// fewer than two parts are nonempty.
    std::optional<Rational> min_part_gap;
    std::string detail;  // first violation found, empty when ok
    bool ok() const { return parts_closed && disjoint && covers; }
};

PartitionCheck validate_partition(const ClopenPartition& p);

/// Lifts a clopen partition of the alpha-th derived space to a clopen
/// partition of the full space whose parts derive back onto the input parts:
/// each component of a part grows back into the subtree it is the derived
/// set of, and the finitely many isolated points not claimed by any subtree
/// join the first part. alpha = 0 returns the partition unchanged.
ClopenPartition clopen_lift(const TowerSpace& space, const ClopenPartition& derived_partition,
                            int alpha);

/// Part index of every point of a truncation. Requires a disjoint cover.
std::vector<int> assign_parts(const ClopenPartition& p, const TowerSpace::Truncation& tr);

}  // namespace freelip
