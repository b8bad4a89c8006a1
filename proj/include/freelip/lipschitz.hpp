#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "freelip/metric_space.hpp"

namespace freelip {

/// Base-normalized real function on a finite pointed metric space: f(0) = 0.
template <class S>
class LipFn {
  public:
    LipFn(SpacePtr<S> space, std::vector<S> values) : space_(std::move(space)), values_(std::move(values)) {
        if (!space_) throw std::invalid_argument("function needs a space");
        if (static_cast<int>(values_.size()) != space_->size())
            throw std::invalid_argument("value count does not match space size");
        if (values_[space_->base()] != S(0))
            throw std::invalid_argument("function must vanish at the basepoint");
    }

    const SpacePtr<S>& space() const { return space_; }
    const S& operator[](int i) const { return values_.at(i); }
    const std::vector<S>& values() const { return values_; }
    int size() const { return static_cast<int>(values_.size()); }

  private:
    SpacePtr<S> space_;
    std::vector<S> values_;
};

namespace detail {

/// Indices sorted by line coordinate. On the line the best difference
/// quotient over any pair is attained on coordinate-adjacent pairs, so norms
/// reduce to one sorted scan.
template <class S>
std::vector<int> by_coord(const FiniteSpace<S>& sp) {
    std::vector<int> order(sp.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return sp.coord(a) < sp.coord(b); });
    return order;
}

}  // namespace detail

/// Best Lipschitz constant of f: sup |f(x)-f(y)| / d(x,y) over pairs.
template <class S>
S lip_norm(const LipFn<S>& f) {
    const auto& sp = *f.space();
    const int n = sp.size();
    S best(0);
    if (sp.is_line()) {
        auto order = detail::by_coord(sp);
        for (int k = 0; k + 1 < n; ++k) {
            int a = order[k], b = order[k + 1];
            best = std::max(best, abs_val<S>(f[a] - f[b]) / sp.dist(a, b));
        }
        return best;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            best = std::max(best, abs_val<S>(f[i] - f[j]) / sp.dist(i, j));
    return best;
}

/// sup |f(x)-f(y)| / d(x,y) over pairs with d(x,y) < scale (strict).
/// No such pair gives 0.
template <class S>
S little_lip_modulus(const LipFn<S>& f, const S& scale) {
    if (scale <= S(0)) throw std::invalid_argument("modulus scale must be positive");
    const auto& sp = *f.space();
    const int n = sp.size();
    S best(0);
    if (sp.is_line()) {
        auto order = detail::by_coord(sp);
        for (int k = 0; k + 1 < n; ++k) {
            int a = order[k], b = order[k + 1];
            S d = sp.dist(a, b);
            if (d < scale) best = std::max(best, abs_val<S>(f[a] - f[b]) / d);
        }
        return best;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            S d = sp.dist(i, j);
            if (d < scale) best = std::max(best, abs_val<S>(f[i] - f[j]) / d);
        }
    return best;
}

/// Restriction of f to the subspace on `indices` (basepoint required).
template <class S>
LipFn<S> restrict_fn(const LipFn<S>& f, const std::vector<int>& indices) {
    auto [sub, map] = subspace(*f.space(), indices);
    std::vector<S> vals;
    vals.reserve(map.size());
    for (int i : map) vals.push_back(f[i]);
    return LipFn<S>(std::make_shared<FiniteSpace<S>>(std::move(sub)), std::move(vals));
}

/// Inf-convolution extension of g (living on the subspace over `indices` of
/// `space`) to all of `space`:
///   E g(x) = min_{y in G} ( g(y) + L d(x,y) ),  L = lip_norm(g).
/// Agrees with g on G and preserves the Lipschitz constant exactly.
template <class S>
LipFn<S> extend_infconv(const LipFn<S>& g, const SpacePtr<S>& space,
                        const std::vector<int>& indices) {
    const auto& sub = *g.space();
    if (static_cast<int>(indices.size()) != sub.size())
        throw std::invalid_argument("index list does not match subspace size");
    for (size_t k = 0; k < indices.size(); ++k)
        if (space->id(indices[k]) != sub.id(static_cast<int>(k)))
            throw std::invalid_argument("subspace ids disagree with index list");
    if (indices[sub.base()] != space->base())
        throw std::invalid_argument("subspace basepoint must map to the space basepoint");
    S L = lip_norm(g);
    std::vector<S> vals(space->size());
    for (int x = 0; x < space->size(); ++x) {
        S best = g[0] + L * space->dist(x, indices[0]);
        for (size_t k = 1; k < indices.size(); ++k)
            best = std::min(best, g[static_cast<int>(k)] + L * space->dist(x, indices[k]));
        vals[x] = best;
    }
    // The y = basepoint term is exactly 0 and no term is below it; keep the
    // basepoint value exact under inexact arithmetic.
    vals[space->base()] = S(0);
    return LipFn<S>(space, std::move(vals));
}

}  // namespace freelip
