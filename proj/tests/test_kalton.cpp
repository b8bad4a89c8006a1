#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "freelip/free_space.hpp"
#include "freelip/kalton.hpp"
#include "freelip/tower.hpp"

using namespace freelip;
using R = Rational;

namespace {

std::shared_ptr<FiniteSpace<R>> radii_line() {
    std::vector<R> coords = {R(0),     R(1) / 8, R(3) / 16, R(1) / 4, R(3) / 8,
                             R(1) / 2, R(3) / 4, R(1),      R(3) / 2, R(2),
                             R(3),     R(4),     R(6),      R(8)};
    std::vector<std::string> ids;
    for (const auto& c : coords) ids.push_back(rational_to_string(c));
    return std::make_shared<FiniteSpace<R>>(FiniteSpace<R>::from_line(ids, coords, 0));
}

}  // namespace

TEST_CASE("shell bands and ramps at powers of two") {
    auto sp = radii_line();
    ShellSystem<R> sys(sp);
    CHECK(sys.n_min() == -3);
    CHECK(sys.n_max() == 3);
    CHECK(sys.band(sp->index_of("1")) == 0);
    CHECK(sys.band(sp->index_of("2")) == 1);
    CHECK(sys.band(sp->index_of("3/2")) == 1);
    CHECK(sys.band(sp->index_of("1/8")) == -3);
    CHECK(sys.ramp(sp->index_of("1")) == R(1));
    CHECK(sys.ramp(sp->index_of("4")) == R(1));
    CHECK_THROWS(sys.band(sp->base()));
}

TEST_CASE("tent seams at powers of two carry weight exactly 0 and 1") {
    auto sp = radii_line();
    ShellSystem<R> sys(sp);
    // d = 2^n tops the rising ramp of T_n and bottoms the falling ramp of T_{n-1}
    for (const char* id : {"1/4", "1/2", "1", "2", "4", "8"}) {
        const int i = sp->index_of(id);
        const int n = sys.band(i);
        CHECK(kalton_T(sys, n).matrix()[i][i] == R(1));
        CHECK(kalton_T(sys, n - 1).matrix()[i][i] == R(0));
    }
}

TEST_CASE("tents form an exact partition of unity off the basepoint") {
    auto sp = radii_line();
    ShellSystem<R> sys(sp);
    for (int i = 1; i < sp->size(); ++i) {
        R total(0);
        for (int n = sys.n_min() - 1; n <= sys.n_max() + 1; ++n)
            total += kalton_T(sys, n).matrix()[i][i];
        CHECK(total == R(1));
    }
}

TEST_CASE("midband weight in floating point is a half") {
    // a point at 2^(1/2) splits evenly between T_0 and T_1
    std::vector<double> coords = {0.0, 1.0, std::sqrt(2.0), 2.0};
    auto sp = std::make_shared<FiniteSpace<double>>(
        FiniteSpace<double>::from_line({"0", "a", "b", "c"}, coords, 0));
    ShellSystem<double> sys(sp);
    const int i = sp->index_of("b");
    CHECK(sys.band(i) == 1);
    CHECK(kalton_T(sys, 1).matrix()[i][i] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(kalton_T(sys, 0).matrix()[i][i] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("full-range shell sum is the identity with norm one") {
    auto sp = radii_line();
    ShellSystem<R> sys(sp);
    auto sn = kalton_S(sys, 4);
    for (int i = 1; i < sp->size(); ++i) CHECK(sn.matrix()[i][i] == R(1));
    CHECK(operator_norm(sn) == R(1));
    CHECK_THROWS(kalton_S(sys, -1));
}

TEST_CASE("clipped shell sum is supported in its band and stays bounded") {
    auto sp = radii_line();
    ShellSystem<R> sys(sp);
    auto s0 = kalton_S(sys, 0);
    for (int i = 1; i < sp->size(); ++i) {
        const bool in_band = sys.in_K(i, 1) && !sys.in_O(i, -1);
        if (!in_band) CHECK(s0.matrix()[i][i] == R(0));
    }
    CHECK(s0.matrix()[sp->index_of("1")][sp->index_of("1")] == R(1));
    CHECK(operator_norm(s0) <= R(72));
}

TEST_CASE("net retraction spans the extremes of mesh size") {
    TowerSpace r1 = TowerSpace::single(1, R(1) / 2, R(0), R(1), 12);
    auto tr = r1.truncate(12);
    // mesh below the minimum gap keeps every point
    auto fine = net_retraction(tr.space, R(1) / 10000);
    CHECK(fine.rank == tr.space->size() - 1);
    CHECK(fine.norm == R(1));
    // mesh at the diameter collapses everything to the basepoint
    auto coarse = net_retraction(tr.space, R(2));
    CHECK(coarse.rank == 0);
    CHECK(coarse.norm == R(0));
    CHECK_THROWS(net_retraction(tr.space, R(0)));
}

TEST_CASE("net retraction error shrinks as the mesh refines") {
    TowerSpace r1 = TowerSpace::single(1, R(1) / 2, R(0), R(1), 12);
    auto tr = r1.truncate(12);
    Molecule<R> g = Molecule<R>::delta(tr.space, tr.space->size() - 1) -
                    Molecule<R>::delta(tr.space, 1);
    R prev(-1);
    for (int k = 1; k <= 6; ++k) {
        auto ret = net_retraction(tr.space, R(1) / (1 << k));
        const R err = kr_norm(ret.op.apply(g) - g);
        if (prev >= R(0)) CHECK(err <= prev);
        prev = err;
    }
}

TEST_CASE("finite-rank approximation drives the error battery to zero") {
    TowerSpace r1 = TowerSpace::single(1, R(1) / 2, R(0), R(1), 20);
    auto tr = r1.truncate(20);
    std::vector<Molecule<R>> battery;
    battery.push_back(Molecule<R>::delta(tr.space, 3) - Molecule<R>::delta(tr.space, 1));
    battery.push_back(Molecule<R>::delta(tr.space, tr.space->size() - 1));
    auto rep = bap_experiment(tr.space, 6, R(1) / 1024, battery);
    CHECK(rep.rank > 0);
    CHECK(rep.norm_S <= R(72));
    CHECK(rep.errors.size() == battery.size());

    // errors against the shell sum alone are nonincreasing in N and hit zero
    ShellSystem<R> sys(tr.space);
    R prev(-1);
    for (int N = 1; N <= 21; N += 5) {
        auto sn = kalton_S(sys, N);
        R worst(0);
        for (const auto& g : battery) {
            const R e = kr_norm(sn.apply(g) - g);
            if (e > worst) worst = e;
        }
        if (prev >= R(0)) CHECK(worst <= prev);
        prev = worst;
    }
    CHECK(prev == R(0));
}
