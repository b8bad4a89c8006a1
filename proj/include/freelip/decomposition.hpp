#pragma once

#include <optional>
#include <string>
#include <vector>

#include "freelip/clopen.hpp"
#include "freelip/free_space.hpp"
#include "freelip/lipschitz.hpp"
#include "freelip/random_gen.hpp"

namespace freelip {

/// Partition of a finite pointed space into labeled groups. Every point,
/// including the basepoint, belongs to exactly one group; the checks below
/// adjoin the basepoint to every other part (K_i = G_i with 0 added), which
/// is what makes the sandwich constants work.
template <class S>
struct SpacePartition {
    SpacePtr<S> space;
    std::vector<std::vector<int>> parts;
};

template <class S>
void validate_space_partition(const SpacePartition<S>& p) {
    if (!p.space) throw std::invalid_argument("partition needs a space");
    if (p.parts.empty()) throw std::invalid_argument("partition needs at least one part");
    std::vector<int> seen(p.space->size(), -1);
    for (std::size_t k = 0; k < p.parts.size(); ++k) {
        if (p.parts[k].empty()) throw std::invalid_argument("partition part is empty");
        for (int i : p.parts[k]) {
            if (i < 0 || i >= p.space->size()) throw std::out_of_range("partition index out of range");
            if (seen[i] != -1) throw std::invalid_argument("partition parts overlap");
            seen[i] = static_cast<int>(k);
        }
    }
    for (int i = 0; i < p.space->size(); ++i)
        if (seen[i] == -1) throw std::invalid_argument("partition does not cover the space");
}

/// Minimum distance between distinct parts; nullopt for a single part.
template <class S>
std::optional<S> partition_gap(const SpacePartition<S>& p) {
    validate_space_partition(p);
    std::optional<S> gap;
    for (std::size_t a = 0; a + 1 < p.parts.size(); ++a)
        for (std::size_t b = a + 1; b < p.parts.size(); ++b)
            for (int x : p.parts[a])
                for (int y : p.parts[b]) {
                    const S d = p.space->dist(x, y);
                    if (!gap || d < *gap) gap = d;
                }
    return gap;
}

/// Finite realization of a symbolic clopen partition on a truncation.
inline SpacePartition<Rational> partition_truncation(const ClopenPartition& cp,
                                                     const TowerSpace::Truncation& tr) {
    SpacePartition<Rational> out;
    out.space = tr.space;
    out.parts.assign(cp.parts.size(), {});
    const auto asg = assign_parts(cp, tr);
    for (std::size_t i = 0; i < asg.size(); ++i) out.parts[asg[i]].push_back(static_cast<int>(i));
    for (auto it = out.parts.begin(); it != out.parts.end();)
        it = it->empty() ? out.parts.erase(it) : it + 1;
    return out;
}

/// The decomposition map: f restricted to each part with the basepoint
/// adjoined. Restriction is taken in the subspace metric, so no part norm
/// can exceed the full norm. Throws on a zero inter-part gap.
template <class S>
std::vector<LipFn<S>> phi_map(const SpacePartition<S>& p, const LipFn<S>& f) {
    if (!same_space<S>(f.space(), p.space))
        throw std::invalid_argument("function lives on a different space");
    auto gap = partition_gap(p);
    if (gap && *gap <= S(0)) throw std::invalid_argument("partition parts touch: zero gap");
    std::vector<LipFn<S>> out;
    out.reserve(p.parts.size());
    for (const auto& part : p.parts) {
        auto indices = part;
        indices.push_back(p.space->base());
        out.push_back(restrict_fn(f, indices));
    }
    return out;
}

template <class S>
S phi_sup_norm(const std::vector<LipFn<S>>& parts) {
    S best(0);
    for (const auto& g : parts) best = std::max(best, lip_norm(g));
    return best;
}

template <class S>
struct SandwichReport {
    int random_samples = 0;
    int certificate_samples = 0;
    int upper_violations = 0;
    int lower_violations = 0;
    S gap{0};
    S diameter{0};
    S lower_bound{0};  // min(1, gap / (2 diameter))
    S worst_ratio{0};  // smallest observed max-part-norm / full-norm
    S best_ratio{0};
    std::string worst_witness;
    std::vector<std::pair<std::string, S>> ratio_log;  // label, part/full per probe
};

/// Exercises a/(2 diam) |f| <= max_i |f restricted to K_i| <= |f| on random
/// functions plus the norm certificates of all basepoint-free delta pairs
/// (dual LP vertices, the worst-case candidates).
template <class S>
SandwichReport<S> phi_sandwich_check(const SpacePartition<S>& p, int samples,
                                     std::uint64_t seed) {
    validate_space_partition(p);
    const auto& sp = *p.space;
    SandwichReport<S> rep;
    rep.diameter = sp.diameter();
    auto gap = partition_gap(p);
    rep.gap = gap ? *gap : rep.diameter;
    if (gap && *gap <= S(0)) throw std::invalid_argument("partition parts touch: zero gap");
    rep.lower_bound = rep.diameter > S(0) ? std::min(S(1), S(rep.gap / (S(2) * rep.diameter))) : S(1);

    bool first = true;
    auto probe = [&](const LipFn<S>& f, const std::string& label) {
        const S full = lip_norm(f);
        if (full == S(0)) return;
        const S part = phi_sup_norm(phi_map(p, f));
        if (part > full) ++rep.upper_violations;
        // cross-multiplied form of gap/(2 diam) * full <= part
        if (rep.gap * full > S(2) * rep.diameter * part) ++rep.lower_violations;
        const S ratio = S(part / full);
        rep.ratio_log.emplace_back(label, ratio);
        if (first || ratio < rep.worst_ratio) {
            rep.worst_ratio = ratio;
            rep.worst_witness = label;
        }
        if (first || ratio > rep.best_ratio) rep.best_ratio = ratio;
        first = false;
    };

    RandomSource rng(seed);
    for (int s = 0; s < samples; ++s) {
        probe(random_function<S>(rng, p.space), "random#" + std::to_string(s));
        ++rep.random_samples;
    }
    // indicator-like probes: constant gap/2 on one far part, the regime
    // where the whole norm lives on the inter-part jump
    for (std::size_t k = 0; k < p.parts.size(); ++k) {
        std::vector<S> vals(sp.size(), S(0));
        bool holds_base = false;
        for (int i : p.parts[k]) {
            if (i == sp.base()) holds_base = true;
            vals[i] = S(rep.gap / S(2));
        }
        if (holds_base) continue;
        probe(LipFn<S>(p.space, std::move(vals)), "indicator part" + std::to_string(k));
        ++rep.certificate_samples;
    }
    for (int u = 0; u < sp.size(); ++u) {
        if (u == sp.base()) continue;
        for (int v = u + 1; v < sp.size(); ++v) {
            if (v == sp.base()) continue;
            auto m = Molecule<S>::delta(p.space, u) - Molecule<S>::delta(p.space, v);
            probe(attaining_function(m), "certificate " + sp.id(u) + "|" + sp.id(v));
            ++rep.certificate_samples;
        }
    }
    return rep;
}

template <class S>
struct L1Report {
    int samples = 0;
    int triangle_violations = 0;  // kr_norm(m) above the part sum
    int factor_violations = 0;    // part sum above factor * kr_norm(m)
    S factor_bound{0};            // max(1, 2 diam / gap)
    S worst_ratio{0};             // largest observed part-sum / full-norm
    std::string worst_witness;
    std::vector<std::pair<std::string, S>> ratio_log;  // label, sum/full per probe
};

/// Splits molecules along the partition and compares kr_norm(m) with the sum
/// of the part norms (each part takes the subspace with basepoint adjoined).
template <class S>
L1Report<S> l1_sum_check(const SpacePartition<S>& p, int samples, std::uint64_t seed) {
    validate_space_partition(p);
    const auto& sp = *p.space;
    L1Report<S> rep;
    const S diam = sp.diameter();
    auto gap = partition_gap(p);
    const S a = gap ? *gap : diam;
    if (gap && *gap <= S(0)) throw std::invalid_argument("partition parts touch: zero gap");
    rep.factor_bound = diam > S(0) ? std::max(S(1), S(S(2) * diam / a)) : S(1);

    std::vector<int> owner(sp.size(), 0);
    for (std::size_t k = 0; k < p.parts.size(); ++k)
        for (int i : p.parts[k]) owner[i] = static_cast<int>(k);

    // per-part subspaces with the basepoint adjoined
    struct Sub {
        SpacePtr<S> space;
        std::vector<int> back;        // subspace index -> ambient index
        std::vector<int> fwd;         // ambient index -> subspace index or -1
    };
    std::vector<Sub> subs;
    for (const auto& part : p.parts) {
        auto indices = part;
        indices.push_back(sp.base());
        auto [ss, map] = subspace(sp, indices);
        Sub sub;
        sub.space = std::make_shared<FiniteSpace<S>>(std::move(ss));
        sub.back = map;
        sub.fwd.assign(sp.size(), -1);
        for (std::size_t k = 0; k < map.size(); ++k) sub.fwd[map[k]] = static_cast<int>(k);
        subs.push_back(std::move(sub));
    }

    bool first = true;
    auto probe = [&](const Molecule<S>& m, const std::string& label) {
        if (m.empty()) return;
        const S full = kr_norm(m);
        S sum(0);
        for (std::size_t k = 0; k < p.parts.size(); ++k) {
            Molecule<S> mk(subs[k].space);
            for (const auto& [i, c] : m.coeffs())
                if (i != sp.base() && owner[i] == static_cast<int>(k))
                    mk.set(subs[k].fwd[i], c);
            if (!mk.empty()) sum += kr_norm(mk);
        }
        if (full > sum) ++rep.triangle_violations;
        if (sum * a > S(2) * diam * full) ++rep.factor_violations;
        if (full > S(0)) {
            const S ratio = S(sum / full);
            rep.ratio_log.emplace_back(label, ratio);
            if (first || ratio > rep.worst_ratio) {
                rep.worst_ratio = ratio;
                rep.worst_witness = label;
            }
            first = false;
        }
        ++rep.samples;
    };

    RandomSource rng(seed);
    for (int s = 0; s < samples; ++s)
        probe(random_molecule<S>(rng, p.space, 6), "random#" + std::to_string(s));
    // mass pairs straddling every part boundary
    for (std::size_t ka = 0; ka + 1 < p.parts.size(); ++ka)
        for (std::size_t kb = ka + 1; kb < p.parts.size(); ++kb)
            for (int u : p.parts[ka])
                for (int v : p.parts[kb]) {
                    if (u == sp.base() || v == sp.base()) continue;
                    probe(Molecule<S>::delta(p.space, u) + Molecule<S>::delta(p.space, v),
                          "pair " + sp.id(u) + "+" + sp.id(v));
                }
    return rep;
}

template <class S>
struct QuotientReport {
    int samples = 0;
    int failures = 0;
    S max_discrepancy{0};
    std::string worst_witness;
};

/// Collapsing a basepoint-containing subset is transparent to the norm: the
/// distance to the span of A in the free space equals the norm of the pushed
/// molecule over the quotient metric. Exact in rational mode, 1e-9 in float.
template <class S>
QuotientReport<S> quotient_isometry_check(const SpacePtr<S>& space, const std::vector<int>& a_set,
                                          int samples, std::uint64_t seed) {
    const auto& sp = *space;
    if (std::find(a_set.begin(), a_set.end(), sp.base()) == a_set.end())
        throw std::invalid_argument("collapsed subset must contain the basepoint");
    auto qsp = std::make_shared<FiniteSpace<S>>(quotient(sp, a_set));
    std::vector<bool> in_a(sp.size(), false);
    for (int i : a_set) in_a[i] = true;
    std::vector<int> push(sp.size(), 0);
    for (int i = 0; i < sp.size(); ++i)
        if (!in_a[i]) push[i] = qsp->index_of(sp.id(i));

    QuotientReport<S> rep;
    const S tol = scalar_traits<S>::exact ? S(0) : S(1e-9);
    auto probe = [&](const Molecule<S>& m, const std::string& label) {
        Molecule<S> pm(qsp);
        for (const auto& [i, c] : m.coeffs())
            if (!in_a[i]) pm.add(push[i], c);
        const S lhs = quotient_distance(m, a_set);
        const S rhs = kr_norm(pm);
        const S diff = abs_val<S>(lhs - rhs);
        if (diff > rep.max_discrepancy) {
            rep.max_discrepancy = diff;
            rep.worst_witness = label;
        }
        if (diff > tol * std::max(S(1), abs_val<S>(lhs))) ++rep.failures;
        ++rep.samples;
    };

    // collapsed points have zero distance on both sides
    for (int i : a_set)
        if (i != sp.base()) probe(Molecule<S>::delta(space, i), "delta " + sp.id(i));

    std::vector<int> off;
    for (int i = 0; i < sp.size(); ++i)
        if (!in_a[i] && i != sp.base()) off.push_back(i);
    RandomSource rng(seed);
    for (int s = 0; s < samples; ++s) {
        if (off.empty()) break;
        Molecule<S> m(space);
        const int want = rng.uniform_int(1, std::min<int>(6, static_cast<int>(off.size())));
        for (int i : rng.sample(off, want)) {
            Rational c(0);
            while (c == 0) c = rng.dyadic(Rational(-4), Rational(4));
            m.set(i, scalar_traits<S>::from_rational(c));
        }
        probe(m, "random#" + std::to_string(s));
    }
    return rep;
}

}  // namespace freelip
