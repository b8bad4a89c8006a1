#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "freelip/lipschitz.hpp"
#include "freelip/molecule.hpp"

namespace freelip {

/// Seeded source of exact dyadic samples. Values are drawn as rationals with
/// denominator 2^20 and converted to the working scalar, so rational and
/// float runs see the same sample stream.
class RandomSource {
  public:
    explicit RandomSource(std::uint64_t seed) : eng_(seed) {}

    std::mt19937_64& engine() { return eng_; }

    int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(eng_);
    }

    /// Uniform dyadic rational in [lo, hi], resolution (hi-lo)/2^20.
    Rational dyadic(const Rational& lo, const Rational& hi) {
        const std::int64_t k = std::uniform_int_distribution<std::int64_t>(0, 1 << 20)(eng_);
        return Rational(lo + Rational(hi - lo) * Rational(k) / Rational(1 << 20));
    }

    /// Distinct indices drawn from `pool` without replacement.
    std::vector<int> sample(std::vector<int> pool, int count);

  private:
    std::mt19937_64 eng_;
};

/// Random metric space: dyadic edge weights in [1, 3] closed under shortest
/// paths, so the triangle inequality holds exactly.
FiniteSpace<Rational> random_metric_space(RandomSource& rng, int n);

/// Molecule with random support (non-basepoint, up to max_support points)
/// and nonzero dyadic coefficients in [-4, 4].
template <class S>
Molecule<S> random_molecule(RandomSource& rng, const SpacePtr<S>& space, int max_support) {
    std::vector<int> pool;
    for (int i = 0; i < space->size(); ++i)
        if (i != space->base()) pool.push_back(i);
    if (pool.empty()) return Molecule<S>(space);
    const int want = rng.uniform_int(1, std::min<int>(max_support, static_cast<int>(pool.size())));
    Molecule<S> m(space);
    for (int i : rng.sample(std::move(pool), want)) {
        Rational c(0);
        while (c == 0) c = rng.dyadic(Rational(-4), Rational(4));
        m.set(i, scalar_traits<S>::from_rational(c));
    }
    return m;
}

/// Function with random dyadic values in [-diam, diam]; any assignment on a
/// finite space is Lipschitz, the interest is in its measured constant.
template <class S>
LipFn<S> random_function(RandomSource& rng, const SpacePtr<S>& space) {
    double dd = 0;
    for (int i = 0; i < space->size(); ++i)
        for (int j = i + 1; j < space->size(); ++j)
            dd = std::max(dd, to_double<S>(space->dist(i, j)));
    const Rational diam = rational_from_double(dd == 0 ? 1.0 : dd);
    std::vector<S> vals(space->size(), S(0));
    for (int i = 0; i < space->size(); ++i) {
        if (i == space->base()) continue;
        vals[i] = scalar_traits<S>::from_rational(rng.dyadic(Rational(-diam), diam));
    }
    return LipFn<S>(space, std::move(vals));
}

}  // namespace freelip
