#include "suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <set>
#include <utility>

#include "freelip/clopen.hpp"
#include "freelip/decomposition.hpp"
#include "freelip/free_space.hpp"
#include "freelip/kalton.hpp"
#include "freelip/random_gen.hpp"
#include "freelip/separator.hpp"
#include "freelip/tower.hpp"
#include "oracles.hpp"

namespace freelip::testing {

namespace {

using R = Rational;
using Clock = std::chrono::steady_clock;

SpacePtr<R> shared(FiniteSpace<R> sp) {
    return std::make_shared<FiniteSpace<R>>(std::move(sp));
}

// 1. kr_norm(delta_x) = d(0,x) on random spaces and tower truncations,
//    exact in rational mode and within 1e-9 in float mode.
CriterionResult delta_isometry(std::uint64_t seed) {
    CriterionResult out;
    out.number = 1;
    out.name = "delta-isometry";
    out.budget_seconds = 30;
    RandomSource rng(seed * 8 + 1);
    long checked = 0, failures = 0;
    double worst_float = 0;

    auto probe = [&](const SpacePtr<R>& sp) {
        auto dsp = std::make_shared<FiniteSpace<double>>(to_double_space(*sp));
        for (int i = 0; i < sp->size(); ++i) {
            ++checked;
            if (kr_norm(Molecule<R>::delta(sp, i)) != sp->dist(sp->base(), i)) ++failures;
            const double got = kr_norm(Molecule<double>::delta(dsp, i));
            const double err = std::abs(got - dsp->dist(dsp->base(), i));
            worst_float = std::max(worst_float, err);
            if (err > 1e-9) ++failures;
        }
    };

    for (int s = 0; s < 50; ++s) probe(shared(random_metric_space(rng, rng.uniform_int(2, 12))));
    for (int rank = 0; rank <= 3; ++rank)
        for (int depth = 1; depth <= 5; ++depth) {
            probe(TowerSpace::single(rank, R(1) / 4, R(0), R(1)).truncate(depth).space);
            probe(TowerSpace::single(rank, R(1) / 4, R(1), R(1) / 2).truncate(depth).space);
            if (rank <= 1)
                probe(TowerSpace::single(rank, R(1) / 2, R(0), R(2)).truncate(depth).space);
        }

    out.pass = failures == 0;
    out.detail = Json{{"points_checked", checked},
                      {"failures", failures},
                      {"worst_float_error", scalar_str(worst_float)}};
    return out;
}

// 2. Dual LP, primal transportation, and the vertex-enumeration oracle agree
//    exactly on random molecules over small spaces.
CriterionResult route_agreement(std::uint64_t seed) {
    CriterionResult out;
    out.number = 2;
    out.name = "norm-route-agreement";
    out.budget_seconds = 60;
    RandomSource rng(seed * 8 + 2);
    int failures = 0;
    const int molecules = 200;
    for (int t = 0; t < molecules; ++t) {
        auto sp = shared(random_metric_space(rng, rng.uniform_int(2, 5)));
        auto m = random_molecule<R>(rng, sp, sp->size());
        auto det = kr_norm_detail(m);
        if (det.dual != det.primal || det.dual != polytope_norm(m)) ++failures;
    }
    out.pass = failures == 0;
    out.detail = Json{{"molecules", molecules}, {"failures", failures}};
    return out;
}

// 3. Separation certificates on all ordered pairs among the ten shallowest
//    points of ratio-1/4 towers of rank 1, 2, 3; verified on truncations of
//    depth 10 and 20. The one- and two-level slope bounds 4 and 16/3 must
//    both occur.
CriterionResult separation_certificates(std::uint64_t) {
    CriterionResult out;
    out.number = 3;
    out.name = "separation-certificates";
    out.budget_seconds = 300;
    bool pass = true;
    bool hit_four = false, hit_sixteen_thirds = false;
    Json towers = Json::array();
    const double cap = 6.9255 + 1e-6;

    for (int rank = 1; rank <= 3; ++rank) {
        TowerSpace K = TowerSpace::single(rank, R(1) / 4, R(0), R(1), 8);
        auto tr = K.truncate(9);
        std::vector<int> order(tr.nodes.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const auto& na = tr.nodes[a];
            const auto& nb = tr.nodes[b];
            if (na.path.size() != nb.path.size()) return na.path.size() < nb.path.size();
            if (na.tower != nb.tower) return na.tower < nb.tower;
            return na.path < nb.path;
        });
        order.resize(10);

        int pairs = 0, failures = 0;
        double worst_lip = 0;
        for (int a : order)
            for (int b : order) {
                if (a == b) continue;
                auto cert = separate(K, tr.nodes[a], tr.nodes[b]);
                ++pairs;
                if (to_double<R>(cert.slope_bound) > cap) ++failures;
                if (cert.slope_bound == R(4)) hit_four = true;
                if (cert.slope_bound == R(16) / 3) hit_sixteen_thirds = true;
                for (int depth : {10, 20}) {
                    auto chk = verify_certificate(cert, depth);
                    if (!chk.ok()) ++failures;
                    worst_lip = std::max(worst_lip, to_double<R>(chk.measured_lip));
                }
            }
        if (failures) pass = false;
        towers.push_back(Json{{"rank", rank},
                              {"pairs", pairs},
                              {"failures", failures},
                              {"worst_lip", scalar_str(worst_lip)}});
    }
    pass = pass && hit_four && hit_sixteen_thirds;
    out.pass = pass;
    out.detail = Json{{"towers", towers},
                      {"bound_4_hit", hit_four},
                      {"bound_16_3_hit", hit_sixteen_thirds}};
    return out;
}

// 4. Shell sums: operator norm at most 72, exact partition of unity, and
//    error decay to exact zero once the band window covers the support.
CriterionResult shell_bounds(std::uint64_t seed) {
    CriterionResult out;
    out.number = 4;
    out.name = "shell-operator-bounds";
    out.budget_seconds = 300;
    RandomSource rng(seed * 8 + 4);
    bool pass = true;
    Json cases = Json::array();

    struct Case {
        const char* label;
        TowerSpace tower;
        int depth;
    };
    const std::vector<Case> list = {
        {"rank1-half", TowerSpace::single(1, R(1) / 2, R(0), R(2)), 24},
        {"rank1-quarter", TowerSpace::single(1, R(1) / 4, R(0), R(1)), 39},
        {"rank2-quarter-shallow", TowerSpace::single(2, R(1) / 4, R(0), R(1)), 5},
        {"rank2-quarter-deep", TowerSpace::single(2, R(1) / 4, R(0), R(1)), 7},
    };

    for (const auto& c : list) {
        auto sp = c.tower.truncate(c.depth).space;
        if (sp->size() < 20 || sp->size() > 60) pass = false;
        ShellSystem<R> sys(sp);

        Json norms = Json::array();
        R worst_norm(0);
        for (int N = 1; N <= 6; ++N) {
            const R nm = operator_norm(kalton_S(sys, N));
            worst_norm = std::max(worst_norm, nm);
            norms.push_back(scalar_str(nm));
            if (nm > R(72)) pass = false;
        }

        bool unity = true;
        for (int i = 0; i < sp->size(); ++i) {
            if (i == sp->base()) continue;
            R total(0);
            for (int n = sys.n_min() - 1; n <= sys.n_max() + 1; ++n)
                total += kalton_T(sys, n).matrix()[i][i];
            if (total != R(1)) unity = false;
        }
        if (!unity) pass = false;

        std::vector<Molecule<R>> battery;
        battery.push_back(Molecule<R>::delta(sp, sp->size() - 1) - Molecule<R>::delta(sp, 1));
        battery.push_back(Molecule<R>::delta(sp, sp->size() / 2));
        battery.push_back(random_molecule<R>(rng, sp, 4));
        battery.push_back(random_molecule<R>(rng, sp, 4));

        bool nonincreasing = true, reaches_zero = true;
        Json upticks = Json::array();
        int gi = 0;
        for (const auto& g : battery) {
            int cover = 1;
            for (const auto& [i, c] : g.coeffs()) {
                const int b = sys.band(i);
                cover = std::max(cover, std::max(b, 1 - b));
            }
            R prev(-1);
            for (int N = 1; N <= cover; ++N) {
                const R e = kr_norm(kalton_S(sys, N).apply(g) - g);
                if (prev >= R(0) && e > prev) {
                    nonincreasing = false;
                    upticks.push_back(Json{{"molecule", gi},
                                           {"N", N},
                                           {"before", scalar_str(prev)},
                                           {"after", scalar_str(e)}});
                }
                prev = e;
            }
            if (prev != R(0)) reaches_zero = false;
            ++gi;
        }
        if (!nonincreasing || !reaches_zero) pass = false;

        cases.push_back(Json{{"space", c.label},
                             {"points", sp->size()},
                             {"norms", norms},
                             {"partition_of_unity_exact", unity},
                             {"errors_nonincreasing", nonincreasing},
                             {"monotonicity_upticks", upticks},
                             {"errors_reach_zero", reaches_zero}});
    }
    out.pass = pass;
    out.detail = Json{{"cases", cases}};
    return out;
}

// 5. Collapsing a subset to the basepoint: the quotient pseudometric norm
//    equals the free norm over the quotient space, on ten configurations
//    including collapsed derived sets.
CriterionResult quotient_isometry(std::uint64_t seed) {
    CriterionResult out;
    out.number = 5;
    out.name = "quotient-isometry";
    out.budget_seconds = 120;
    RandomSource rng(seed * 8 + 5);
    bool pass = true;
    Json cfgs = Json::array();
    int cfg_index = 0;

    auto run_rational = [&](const std::string& label, const SpacePtr<R>& sp,
                            const std::vector<int>& a) {
        auto rep = quotient_isometry_check<R>(sp, a, 20, seed * 100 + cfg_index++);
        const bool ok = rep.failures == 0 && rep.max_discrepancy == R(0);
        if (!ok) pass = false;
        cfgs.push_back(Json{{"config", label},
                            {"samples", rep.samples},
                            {"failures", rep.failures},
                            {"max_discrepancy", scalar_str(rep.max_discrepancy)}});
    };
    auto run_float = [&](const std::string& label, const SpacePtr<R>& sp,
                         const std::vector<int>& a) {
        auto dsp = std::make_shared<FiniteSpace<double>>(to_double_space(*sp));
        auto rep = quotient_isometry_check<double>(dsp, a, 20, seed * 100 + cfg_index++);
        if (rep.failures != 0) pass = false;
        cfgs.push_back(Json{{"config", label},
                            {"samples", rep.samples},
                            {"failures", rep.failures},
                            {"max_discrepancy", scalar_str(rep.max_discrepancy)}});
    };
    // indices of truncation points whose coordinate lies in the `steps`-fold
    // derived set
    auto derived_aset = [](const TowerSpace& t, int steps, int depth) {
        auto tr = t.truncate(depth);
        auto dt = t.derivative(steps).truncate(depth);
        std::set<R> dc;
        for (int i = 0; i < dt.space->size(); ++i) dc.insert(dt.space->coord(i));
        std::vector<int> a;
        for (int i = 0; i < tr.space->size(); ++i)
            if (dc.count(tr.space->coord(i))) a.push_back(i);
        return std::pair(tr.space, a);
    };

    auto line = shared(FiniteSpace<R>::from_line({"0", "1", "2", "3"},
                                                 {R(0), R(1), R(2), R(3)}, 0));
    run_rational("line-endpoints", line, {0, 3});

    for (int n : {8, 10, 12}) {
        auto sp = shared(random_metric_space(rng, n));
        std::vector<int> pool;
        for (int i = 0; i < sp->size(); ++i)
            if (i != sp->base()) pool.push_back(i);
        std::vector<int> a = {sp->base()};
        for (int i : rng.sample(pool, n / 4)) a.push_back(i);
        std::sort(a.begin(), a.end());
        run_rational("random-n" + std::to_string(n), sp, a);
    }

    TowerSpace r2 = TowerSpace::single(2, R(1) / 4, R(0), R(1), 6);
    {
        auto [sp, a] = derived_aset(r2, 1, 6);
        run_rational("rank2-collapse-derived", sp, a);
    }
    {
        auto [sp, a] = derived_aset(r2, 2, 6);
        run_rational("rank2-collapse-second-derived", sp, a);
    }
    TowerSpace r3 = TowerSpace::single(3, R(1) / 4, R(0), R(1), 3);
    {
        auto [sp, a] = derived_aset(r3, 1, 3);
        run_rational("rank3-collapse-derived", sp, a);
    }
    {
        auto [sp, a] = derived_aset(r3, 2, 3);
        run_rational("rank3-collapse-second-derived", sp, a);
    }
    run_float("line-endpoints-float", line, {0, 3});
    {
        auto [sp, a] = derived_aset(TowerSpace::single(2, R(1) / 4, R(0), R(1), 5), 1, 5);
        run_float("rank2-collapse-derived-float", sp, a);
    }

    out.pass = pass;
    out.detail = Json{{"configs", cfgs}};
    return out;
}

// 6. Restriction sandwich on five partitioned spaces: upper bound for free,
//    lower bound with constant gap/(2 diam); checked on 1000 random
//    functions plus every vertex of each space's Lipschitz unit polytope.
CriterionResult restriction_sandwich(std::uint64_t seed) {
    CriterionResult out;
    out.number = 6;
    out.name = "restriction-sandwich";
    out.budget_seconds = 120;
    bool pass = true;
    Json cases = Json::array();

    struct PCase {
        std::string label;
        SpacePtr<R> sp;
        std::vector<std::vector<int>> parts;
    };
    std::vector<PCase> list;
    list.push_back({"line-2-3-split",
                    shared(FiniteSpace<R>::from_line({"0", "1", "2", "5", "6"},
                                                     {R(0), R(1), R(2), R(5), R(6)}, 0)),
                    {{0, 1, 2}, {3, 4}}});
    list.push_back({"line-uneven-split",
                    shared(FiniteSpace<R>::from_line(
                        {"0", "h", "4", "9h", "5"},
                        {R(0), R(1) / 2, R(4), R(9) / 2, R(5)}, 0)),
                    {{0, 1}, {2, 3, 4}}});
    {
        // path tree b - a - 0 - c - d with edge lengths 1, 1, 5, 1
        std::vector<std::vector<R>> d = {{R(0), R(1), R(2), R(5), R(6)},
                                         {R(1), R(0), R(1), R(6), R(7)},
                                         {R(2), R(1), R(0), R(7), R(8)},
                                         {R(5), R(6), R(7), R(0), R(1)},
                                         {R(6), R(7), R(8), R(1), R(0)}};
        list.push_back({"path-tree",
                        shared(FiniteSpace<R>::from_matrix({"0", "a", "b", "c", "d"}, d, 0)),
                        {{0, 1, 2}, {3, 4}}});
    }
    {
        TowerSpace two(R(1) / 2, {Tower{1, R(0), R(1)}, Tower{1, R(3), R(1)}}, 4);
        auto tr = two.truncate(1);
        std::vector<std::vector<int>> parts(2);
        for (int i = 0; i < tr.space->size(); ++i)
            parts[tr.space->coord(i) < R(3) / 2 ? 0 : 1].push_back(i);
        list.push_back({"two-towers", tr.space, parts});
    }
    list.push_back({"line-three-parts",
                    shared(FiniteSpace<R>::from_line(
                        {"0", "1", "4", "5", "8", "9"},
                        {R(0), R(1), R(4), R(5), R(8), R(9)}, 0)),
                    {{0, 1}, {2, 3}, {4, 5}}});

    long random_total = 0;
    int case_index = 0;
    for (const auto& pc : list) {
        SpacePartition<R> part{pc.sp, pc.parts};
        validate_space_partition(part);
        auto rep = phi_sandwich_check(part, 200, seed * 8 + 6 + case_index++);
        random_total += rep.random_samples;
        if (rep.upper_violations != 0 || rep.lower_violations != 0) pass = false;

        const R gap = *partition_gap(part);
        const R diam = pc.sp->diameter();
        auto verts = lip_polytope_vertices(*pc.sp);
        int vertex_upper = 0, vertex_lower = 0;
        for (const auto& vals : verts) {
            LipFn<R> f(pc.sp, vals);
            const R full = lip_norm(f);
            const R mp = phi_sup_norm(phi_map(part, f));
            if (mp > full) ++vertex_upper;
            if (gap * full > R(2) * diam * mp) ++vertex_lower;
        }
        if (vertex_upper != 0 || vertex_lower != 0) pass = false;

        cases.push_back(Json{{"space", pc.label},
                             {"random_samples", rep.random_samples},
                             {"certificate_samples", rep.certificate_samples},
                             {"vertices", verts.size()},
                             {"upper_violations", rep.upper_violations + vertex_upper},
                             {"lower_violations", rep.lower_violations + vertex_lower},
                             {"worst_ratio", scalar_str(rep.worst_ratio)},
                             {"lower_bound", scalar_str(rep.lower_bound)}});
    }
    if (random_total < 1000) pass = false;
    out.pass = pass;
    out.detail = Json{{"cases", cases}, {"random_functions", random_total}};
    return out;
}

// 7. Inf-convolution extension preserves the Lipschitz constant exactly and
//    agrees with the original on the subset.
CriterionResult infconv_extension(std::uint64_t seed) {
    CriterionResult out;
    out.number = 7;
    out.name = "infconv-extension";
    out.budget_seconds = 10;
    RandomSource rng(seed * 8 + 7);
    int failures = 0;
    const int instances = 100;
    for (int t = 0; t < instances; ++t) {
        auto sp = shared(random_metric_space(rng, rng.uniform_int(3, 10)));
        std::vector<int> pool;
        for (int i = 0; i < sp->size(); ++i)
            if (i != sp->base()) pool.push_back(i);
        const int k = rng.uniform_int(1, static_cast<int>(pool.size()));
        std::vector<int> idx = {sp->base()};
        for (int i : rng.sample(pool, k)) idx.push_back(i);
        std::sort(idx.begin(), idx.end());

        auto [sub, map] = subspace(*sp, idx);
        auto subp = std::make_shared<FiniteSpace<R>>(std::move(sub));
        auto f = random_function<R>(rng, sp);
        std::vector<R> gvals;
        gvals.reserve(map.size());
        for (int i : map) gvals.push_back(f[i]);
        LipFn<R> g(subp, std::move(gvals));

        auto ext = extend_infconv(g, sp, map);
        if (lip_norm(ext) != lip_norm(g)) ++failures;
        for (std::size_t p = 0; p < map.size(); ++p)
            if (ext[map[p]] != g[static_cast<int>(p)]) ++failures;
    }
    out.pass = failures == 0;
    out.detail = Json{{"instances", instances}, {"failures", failures}};
    return out;
}

// 8. Symbolic derived-set calculus agrees with brute-force accumulation
//    detection on truncations, and partition lifts derive back to their
//    prescribed parts.
CriterionResult derived_set_calculus(std::uint64_t) {
    CriterionResult out;
    out.number = 8;
    out.name = "derived-set-calculus";
    out.budget_seconds = 30;
    bool pass = true;
    Json towers = Json::array();

    struct TC {
        int rank;
        R ratio;
        int depth;
    };
    const std::vector<TC> tcs = {
        {1, R(1) / 2, 8}, {1, R(1) / 4, 8}, {2, R(1) / 4, 8}, {3, R(1) / 4, 6}};
    for (const auto& tc : tcs) {
        TowerSpace t = TowerSpace::single(tc.rank, tc.ratio, R(0), R(1), tc.depth);
        std::vector<std::vector<R>> pyr;
        for (int j = 0; j <= tc.rank; ++j) {
            auto tr = t.truncate(tc.depth + 2 * j);
            std::vector<R> coords;
            for (int i = 0; i < tr.space->size(); ++i) coords.push_back(tr.space->coord(i));
            pyr.push_back(std::move(coords));
        }
        bool match = true;
        for (int step = 1; step <= tc.rank; ++step) {
            std::vector<std::vector<R>> next;
            for (std::size_t j = 0; j + 1 < pyr.size(); ++j)
                next.push_back(brute_accumulation(pyr[j], pyr[j + 1], t.ratio()));
            pyr = std::move(next);
            auto dtr = t.derivative(step).truncate(tc.depth);
            std::vector<R> want, got;
            for (int i = 0; i < dtr.space->size(); ++i)
                if (dtr.space->coord(i) != R(0)) want.push_back(dtr.space->coord(i));
            for (const auto& c : pyr[0])
                if (c != R(0)) got.push_back(c);
            std::sort(want.begin(), want.end());
            if (got != want) match = false;
        }
        if (!match) pass = false;
        towers.push_back(Json{{"rank", tc.rank},
                              {"ratio", scalar_str(tc.ratio)},
                              {"brute_force_match", match}});
    }

    // a lifted partition must derive back to the prescribed parts
    auto check_lift = [](const TowerSpace& K, const ClopenPartition& fp, int alpha,
                         int depth) -> bool {
        if (!validate_partition(fp).ok()) return false;
        auto lifted = clopen_lift(K, fp, alpha);
        if (!validate_partition(lifted).ok()) return false;
        auto dtr = fp.space.truncate(depth);
        for (std::size_t i = 0; i < lifted.parts.size(); ++i) {
            SymbolicSet gd = TowerSpace::derive(K.restrict(lifted.parts[i]), alpha);
            for (int k = 0; k < dtr.space->size(); ++k) {
                const R c = dtr.space->coord(k);
                const bool want = fp.parts[i].contains(c);
                const bool got =
                    !gd.empty() && TowerSpace::dist_to_set(c, gd, K.ratio()) == R(0);
                if (got != want) return false;
            }
        }
        return true;
    };

    Json lifts = Json::array();
    {
        TowerSpace two(R(1) / 2, {Tower{1, R(0), R(1)}, Tower{1, R(3), R(1)}}, 10);
        ClopenPartition fp{two.derivative(1),
                           {IntervalSet(Interval::point(R(0))),
                            IntervalSet(Interval::point(R(3)))}};
        const bool ok = check_lift(two, fp, 1, 10);
        if (!ok) pass = false;
        lifts.push_back(Json{{"config", "two-towers-anchor-split"}, {"match", ok}});
    }
    {
        TowerSpace r2 = TowerSpace::single(2, R(1) / 4, R(0), R(1), 10);
        ClopenPartition fp{r2.derivative(1),
                           {IntervalSet(Interval::closed(R(0), R(1) / 32)),
                            IntervalSet(Interval::ray_above(R(1) / 16, false))}};
        const bool ok = check_lift(r2, fp, 1, 10);
        if (!ok) pass = false;
        lifts.push_back(Json{{"config", "rank2-threshold"}, {"match", ok}});
    }
    {
        TowerSpace r3 = TowerSpace::single(3, R(1) / 4, R(0), R(1), 6);
        ClopenPartition fp{r3.derivative(2),
                           {IntervalSet(Interval::closed(R(0), R(1) / 32)),
                            IntervalSet(Interval::ray_above(R(1) / 16, false))}};
        const bool ok = check_lift(r3, fp, 2, 6);
        if (!ok) pass = false;
        lifts.push_back(Json{{"config", "rank3-two-level"}, {"match", ok}});
    }

    out.pass = pass;
    out.detail = Json{{"towers", towers}, {"lifts", lifts}};
    return out;
}

}  // namespace

bool AcceptanceReport::all_pass() const {
    for (const auto& c : criteria)
        if (!c.pass) return false;
    return true;
}

Json AcceptanceReport::json() const {
    Json arr = Json::array();
    for (const auto& c : criteria)
        arr.push_back(Json{{"n", c.number}, {"name", c.name}, {"pass", c.pass},
                           {"detail", c.detail}});
    return Json{{"seed", seed}, {"criteria", arr}};
}

AcceptanceReport run_acceptance(std::uint64_t seed) {
    AcceptanceReport rep;
    rep.seed = seed;
    using Fn = CriterionResult (*)(std::uint64_t);
    const Fn fns[] = {delta_isometry,    route_agreement,      separation_certificates,
                      shell_bounds,      quotient_isometry,    restriction_sandwich,
                      infconv_extension, derived_set_calculus};
    for (Fn fn : fns) {
        const auto t0 = Clock::now();
        CriterionResult r = fn(seed);
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        rep.criteria.push_back(std::move(r));
    }
    return rep;
}

AcceptanceReport run_acceptance_with_determinism(std::uint64_t seed) {
    AcceptanceReport first = run_acceptance(seed);
    const auto t0 = Clock::now();
    AcceptanceReport second = run_acceptance(seed);
    const std::string da = dump_canonical(first.json());
    const std::string db = dump_canonical(second.json());

    CriterionResult det;
    det.number = 9;
    det.name = "determinism";
    det.pass = da == db;
    det.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    det.budget_seconds = std::numeric_limits<double>::infinity();
    det.detail = Json{{"report_bytes", da.size()}, {"identical", da == db}};
    first.criteria.push_back(std::move(det));
    return first;
}

}  // namespace freelip::testing
