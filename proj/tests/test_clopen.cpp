#include <doctest.h>

#include <algorithm>
#include <vector>

#include "freelip/clopen.hpp"
#include "freelip/tower.hpp"

using namespace freelip;
using R = Rational;

static std::vector<R> point_coords(const SymbolicSet& s) {
    std::vector<R> out;
    for (const auto& p : s.points) out.push_back(p.coord);
    std::sort(out.begin(), out.end());
    return out;
}

TEST_CASE("lifting an anchor split regrows whole towers") {
    TowerSpace two(R(1) / 2, {Tower{1, R(0), R(1)}, Tower{1, R(3), R(1)}}, 10);
    TowerSpace dtwo = two.derivative(1);
    ClopenPartition fp{dtwo,
                       {IntervalSet(Interval::point(R(0))), IntervalSet(Interval::point(R(3)))}};
    CHECK(validate_partition(fp).ok());

    auto lifted = clopen_lift(two, fp, 1);
    CHECK(validate_partition(lifted).ok());
    auto tr = two.truncate(12);
    auto asg = assign_parts(lifted, tr);
    for (int i = 0; i < tr.space->size(); ++i) {
        const R c = tr.space->coord(i);
        CHECK(asg[i] == (c < R(3) / 2 ? 0 : 1));
    }
    // derived sets recover the original parts exactly
    for (int i = 0; i < 2; ++i) {
        SymbolicSet gd = TowerSpace::derive(two.restrict(lifted.parts[i]), 1);
        SymbolicSet fi = dtwo.restrict(fp.parts[i]);
        REQUIRE(gd.finite());
        REQUIRE(fi.finite());
        CHECK(point_coords(gd) == point_coords(fi));
    }
}

TEST_CASE("zero-step lift returns the partition unchanged") {
    TowerSpace two(R(1) / 2, {Tower{1, R(0), R(1)}, Tower{1, R(3), R(1)}}, 10);
    ClopenPartition base{two,
                         {IntervalSet(Interval::closed(R(0), R(3) / 2)),
                          IntervalSet(Interval::ray_above(R(3) / 2, true))}};
    auto same = clopen_lift(two, base, 0);
    CHECK(same.parts.size() == base.parts.size());
    CHECK(validate_partition(same).ok());
}

TEST_CASE("threshold partition of the derived line lifts through one level") {
    TowerSpace r2 = TowerSpace::single(2, R(1) / 4, R(0), R(1), 10);
    TowerSpace dr2 = r2.derivative(1);
    ClopenPartition fp{dr2,
                       {IntervalSet(Interval::closed(R(0), R(1) / 32)),
                        IntervalSet(Interval::ray_above(R(1) / 16, false))}};
    CHECK(validate_partition(fp).ok());
    auto lifted = clopen_lift(r2, fp, 1);
    CHECK(validate_partition(lifted).ok());

    // regrown subtrees follow their anchors across the threshold
    CHECK(lifted.parts[1].contains(R(1) / 4 + R(1) / 64));
    CHECK(lifted.parts[1].contains(R(1) / 16 + R(1) / 256));
    CHECK(lifted.parts[0].contains(R(1) / 64 + R(1) / 1024));
    // part assignment agrees with the derived partition on derived points
    auto dtr = dr2.truncate(12);
    for (int i = 0; i < dtr.space->size(); ++i) {
        const R c = dtr.space->coord(i);
        const bool in0 = fp.parts[0].contains(c);
        CHECK(lifted.parts[in0 ? 0 : 1].contains(c));
        CHECK_FALSE(lifted.parts[in0 ? 1 : 0].contains(c));
    }
    // deriving the lifted parts lands back on the threshold parts
    for (int i = 0; i < 2; ++i) {
        SymbolicSet gd = TowerSpace::derive(r2.restrict(lifted.parts[i]), 1);
        for (int k = 0; k < dtr.space->size(); ++k) {
            const R c = dtr.space->coord(k);
            if (fp.parts[i].contains(c))
                CHECK(TowerSpace::dist_to_set(c, gd, r2.ratio()) == R(0));
            else
                CHECK(TowerSpace::dist_to_set(c, gd, r2.ratio()) > R(0));
        }
    }
}

TEST_CASE("two-level lift climbs a rank-3 tower") {
    TowerSpace r3 = TowerSpace::single(3, R(1) / 4, R(0), R(1), 6);
    TowerSpace dd = r3.derivative(2);  // rank-1 tower at 0
    ClopenPartition fp{dd,
                       {IntervalSet(Interval::closed(R(0), R(1) / 32)),
                        IntervalSet(Interval::ray_above(R(1) / 16, false))}};
    CHECK(validate_partition(fp).ok());
    auto lifted = clopen_lift(r3, fp, 2);
    CHECK(validate_partition(lifted).ok());
    auto dtr = dd.truncate(8);
    for (int i = 0; i < dtr.space->size(); ++i) {
        const R c = dtr.space->coord(i);
        const bool in0 = fp.parts[0].contains(c);
        CHECK(lifted.parts[in0 ? 0 : 1].contains(c));
    }
}

TEST_CASE("a cut through a limit point fails validation with a reason") {
    TowerSpace r1 = TowerSpace::single(1, R(1) / 2, R(0), R(1), 10);
    ClopenPartition bad{r1,
                        {IntervalSet(Interval::point(R(0))),
                         IntervalSet(Interval::ray_above(R(0), true))}};
    auto chk = validate_partition(bad);
    CHECK_FALSE(chk.ok());
    CHECK_FALSE(chk.parts_closed);
    CHECK_FALSE(chk.detail.empty());
}
