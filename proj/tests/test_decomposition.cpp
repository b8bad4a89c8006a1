#include <doctest.h>

#include <memory>
#include <set>
#include <vector>

#include "freelip/decomposition.hpp"
#include "freelip/tower.hpp"

using namespace freelip;
using R = Rational;

namespace {

struct TwoTowers {
    TowerSpace::Truncation tr;
    SpacePartition<R> part;
};

TwoTowers two_tower_partition() {
    TowerSpace two(R(1) / 2, {Tower{1, R(0), R(1)}, Tower{1, R(3), R(1)}}, 6);
    auto tr = two.truncate(6);
    SpacePartition<R> part{tr.space, {{}, {}}};
    for (int i = 0; i < tr.space->size(); ++i)
        part.parts[tr.space->coord(i) < R(3) / 2 ? 0 : 1].push_back(i);
    validate_space_partition(part);
    return {tr, part};
}

}  // namespace

TEST_CASE("partition gap and validation") {
    auto [tr, part] = two_tower_partition();
    auto gap = partition_gap(part);
    REQUIRE(gap.has_value());
    CHECK(*gap == R(5) / 2);

    SpacePartition<R> overlap{tr.space, {{0, 1}, {1, 2}}};
    CHECK_THROWS(validate_space_partition(overlap));
    SpacePartition<R> missing{tr.space, {{0, 1}}};
    CHECK_THROWS(validate_space_partition(missing));
}

TEST_CASE("restrictions of a distance function stay 1-Lipschitz") {
    auto [tr, part] = two_tower_partition();
    std::vector<R> vals;
    for (int i = 0; i < tr.space->size(); ++i) vals.push_back(tr.space->dist(0, i));
    LipFn<R> f(tr.space, std::move(vals));
    auto fs = phi_map(part, f);
    REQUIRE(fs.size() == 2);
    for (const auto& g : fs) CHECK(lip_norm(g) <= R(1));
}

TEST_CASE("single-part restriction map is the identity") {
    auto [tr, part] = two_tower_partition();
    SpacePartition<R> whole{tr.space, {{}}};
    for (int i = 0; i < tr.space->size(); ++i) whole.parts[0].push_back(i);
    std::vector<R> vals(tr.space->size(), R(0));
    vals[2] = R(1);
    LipFn<R> f(tr.space, vals);
    auto fs = phi_map(whole, f);
    REQUIRE(fs.size() == 1);
    CHECK(lip_norm(fs[0]) == lip_norm(f));
    CHECK_FALSE(partition_gap(whole).has_value());
}

TEST_CASE("cross-gap slope drops when parts are restricted") {
    auto [tr, part] = two_tower_partition();
    std::vector<R> vals(tr.space->size(), R(0));
    for (int i : part.parts[1]) vals[i] = R(5) / 4;
    LipFn<R> f(tr.space, std::move(vals));
    const R full = lip_norm(f);
    CHECK(full == R(1) / 2);
    const R mp = phi_sup_norm(phi_map(part, f));
    CHECK(mp == R(5) / 12);
    CHECK(mp < full);
}

TEST_CASE("restriction norms sandwich the full norm") {
    auto [tr, part] = two_tower_partition();
    auto rep = phi_sandwich_check(part, 60, 42);
    CHECK(rep.upper_violations == 0);
    CHECK(rep.lower_violations == 0);
    CHECK(rep.random_samples > 0);
    CHECK(rep.certificate_samples > 0);
    CHECK(rep.worst_ratio >= rep.lower_bound);
    CHECK(rep.best_ratio <= R(1));
    CHECK(rep.worst_ratio < R(1));  // the gap slope is genuinely lost
}

TEST_CASE("part norms add up to an equivalent l1 sum") {
    auto [tr, part] = two_tower_partition();
    auto rep = l1_sum_check(part, 60, 43);
    CHECK(rep.triangle_violations == 0);
    CHECK(rep.factor_violations == 0);
    CHECK(rep.worst_ratio >= R(1));
    CHECK(rep.worst_ratio <= rep.factor_bound);
    CHECK(rep.worst_ratio > R(1));  // cross-part molecules pay for the split
}

TEST_CASE("trivial split keeps norms equal") {
    auto [tr, part] = two_tower_partition();
    SpacePartition<R> whole{tr.space, {{}}};
    for (int i = 0; i < tr.space->size(); ++i) whole.parts[0].push_back(i);
    auto rep = l1_sum_check(whole, 20, 44);
    CHECK(rep.worst_ratio == R(1));
}

TEST_CASE("collapsing a subset matches the quotient space norm") {
    auto line = std::make_shared<FiniteSpace<R>>(
        FiniteSpace<R>::from_line({"0", "1", "2", "3"}, {R(0), R(1), R(2), R(3)}, 0));
    auto m = Molecule<R>::delta(line, 1);
    CHECK(quotient_distance(m, {0, 3}) == R(1));
    auto rep = quotient_isometry_check<R>(line, {0, 3}, 50, 45);
    CHECK(rep.failures == 0);
    CHECK(rep.max_discrepancy == R(0));
    CHECK_THROWS((void)quotient_isometry_check<R>(line, {1, 2}, 5, 45));
}

TEST_CASE("collapsing the derived set of a rank-2 truncation is exact") {
    TowerSpace r2 = TowerSpace::single(2, R(1) / 4, R(0), R(1), 6);
    auto t2 = r2.truncate(6);
    auto dt = r2.derivative(1).truncate(6);
    std::set<R> dcoords;
    for (int i = 0; i < dt.space->size(); ++i) dcoords.insert(dt.space->coord(i));
    std::vector<int> a_set;
    for (int i = 0; i < t2.space->size(); ++i)
        if (dcoords.count(t2.space->coord(i))) a_set.push_back(i);
    auto rep = quotient_isometry_check<R>(t2.space, a_set, 100, 46);
    CHECK(rep.samples > 0);
    CHECK(rep.failures == 0);
    CHECK(rep.max_discrepancy == R(0));
}

TEST_CASE("floating point quotient check stays within tolerance") {
    TowerSpace r2 = TowerSpace::single(2, R(1) / 4, R(0), R(1), 5);
    auto t2 = r2.truncate(5);
    auto dsp = to_double_space(*t2.space);
    auto sp = std::make_shared<FiniteSpace<double>>(std::move(dsp));
    std::vector<int> a_set = {sp->base(), sp->index_of(t2.space->id(t2.space->size() - 1))};
    auto rep = quotient_isometry_check<double>(sp, a_set, 50, 47);
    CHECK(rep.failures == 0);
}
