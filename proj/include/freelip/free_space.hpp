#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "freelip/lipschitz.hpp"
#include "freelip/metric_space.hpp"
#include "freelip/molecule.hpp"
#include "freelip/parallel.hpp"
#include "freelip/simplex.hpp"
#include "freelip/transport.hpp"

namespace freelip {

/// The two norm routes disagreed beyond tolerance: a solver bug, never a
/// property of the input. Always fatal.
class SolverAgreementError : public std::runtime_error {
  public:
    SolverAgreementError(double dual, double primal)
        : std::runtime_error("norm routes disagree: dual=" + std::to_string(dual) +
                             " primal=" + std::to_string(primal)) {}
};

template <class S>
struct NormDetail {
    S dual = S(0);    // the returned value
    S primal = S(0);  // transportation cross-check
    std::vector<int> support;   // LP variable points (support minus pinned)
    std::vector<S> opt_values;  // optimal f on `support`
};

namespace detail {

template <class S>
bool routes_agree(const S& dual, const S& primal) {
    if constexpr (scalar_traits<S>::exact) {
        return dual == primal;
    } else {
        double d = to_double<S>(dual), p = to_double<S>(primal);
        return std::abs(d - p) <= 1e-9 * std::max(1.0, std::abs(d));
    }
}

/// Dual route: maximize <m, f> over f with slope constraints on the support
/// and f pinned to 0 on `pinned`. Restricting to supp(m) plus the pinned set
/// is exact: a feasible f there extends to the whole space with the same
/// Lipschitz constant, and restriction preserves feasibility.
template <class S>
NormDetail<S> norm_dual_route(const Molecule<S>& m, const std::vector<int>& pinned) {
    const auto& sp = *m.space();
    NormDetail<S> out;
    for (const auto& [z, c] : m.coeffs()) {
        if (std::find(pinned.begin(), pinned.end(), z) == pinned.end()) out.support.push_back(z);
    }
    const int k = static_cast<int>(out.support.size());
    if (k == 0) return out;
    std::vector<std::vector<S>> A;
    std::vector<S> b, c;
    for (int a = 0; a < k; ++a)
        for (int bidx = a + 1; bidx < k; ++bidx) {
            S d = sp.dist(out.support[a], out.support[bidx]);
            std::vector<S> row(k, S(0));
            row[a] = S(1);
            row[bidx] = S(-1);
            A.push_back(row);
            b.push_back(d);
            row[a] = S(-1);
            row[bidx] = S(1);
            A.push_back(std::move(row));
            b.push_back(d);
        }
    for (int a = 0; a < k; ++a) {
        S d = dist_to_subset(sp, out.support[a], pinned);
        std::vector<S> row(k, S(0));
        row[a] = S(1);
        A.push_back(row);
        b.push_back(d);
        row[a] = S(-1);
        A.push_back(std::move(row));
        b.push_back(d);
    }
    for (int a = 0; a < k; ++a) c.push_back(m.coeff(out.support[a]));
    auto lp = simplex_max(A, b, c);
    if (lp.status != LpStatus::kOptimal)
        throw std::runtime_error("dual norm program unbounded; polytope construction is wrong");
    out.dual = lp.value;
    out.opt_values = std::move(lp.x);
    return out;
}

/// Primal route: minimum-cost transportation moving the positive part onto
/// the negative part, with the pinned set acting as a free mass source/sink
/// through one supernode (cheapest pinned point per endpoint; pinned-to-
/// pinned moves are free).
template <class S>
S norm_primal_route(const Molecule<S>& m, const std::vector<int>& pinned) {
    const auto& sp = *m.space();
    std::vector<int> pos, neg;
    S sum_pos(0), sum_neg(0);
    for (const auto& [z, c] : m.coeffs()) {
        if (std::find(pinned.begin(), pinned.end(), z) != pinned.end()) continue;
        if (c > S(0)) {
            pos.push_back(z);
            sum_pos += c;
        } else {
            neg.push_back(z);
            sum_neg += S(0) - c;
        }
    }
    if (pos.empty() && neg.empty()) return S(0);
    std::vector<S> supply, demand;
    for (int z : pos) supply.push_back(m.coeff(z));
    bool super_row = sum_neg > S(0);
    if (super_row) supply.push_back(sum_neg);
    for (int z : neg) demand.push_back(S(0) - m.coeff(z));
    bool super_col = sum_pos > S(0);
    if (super_col) demand.push_back(sum_pos);
    const int rows = static_cast<int>(supply.size());
    const int cols = static_cast<int>(demand.size());
    std::vector<std::vector<S>> cost(rows, std::vector<S>(cols, S(0)));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            bool i_super = super_row && i == rows - 1;
            bool j_super = super_col && j == cols - 1;
            if (i_super && j_super)
                cost[i][j] = S(0);
            else if (i_super)
                cost[i][j] = dist_to_subset(sp, neg[j], pinned);
            else if (j_super)
                cost[i][j] = dist_to_subset(sp, pos[i], pinned);
            else
                cost[i][j] = sp.dist(pos[i], neg[j]);
        }
    return transport_min_cost<S>(std::move(supply), std::move(demand), cost);
}

template <class S>
NormDetail<S> norm_both_routes(const Molecule<S>& m, const std::vector<int>& pinned) {
    auto out = norm_dual_route(m, pinned);
    out.primal = norm_primal_route(m, pinned);
    if (!routes_agree(out.dual, out.primal))
        throw SolverAgreementError(to_double<S>(out.dual), to_double<S>(out.primal));
    return out;
}

}  // namespace detail

/// Free-space norm of a molecule. Computed twice (dual slope program and
/// primal transportation) and cross-checked; the dual optimum is returned.
template <class S>
S kr_norm(const Molecule<S>& m) {
    if (m.empty()) return S(0);
    return detail::norm_both_routes(m, {m.space()->base()}).dual;
}

/// Both routes plus the dual witness, for reports and cross-check tests.
template <class S>
NormDetail<S> kr_norm_detail(const Molecule<S>& m) {
    if (m.empty()) return NormDetail<S>{};
    return detail::norm_both_routes(m, {m.space()->base()});
}

/// Norm of the image of m in the quotient by the subset A (mass on A is
/// free). A must contain no duplicates; the basepoint is always pinned.
template <class S>
S quotient_distance(const Molecule<S>& m, std::vector<int> a_set) {
    a_set.push_back(m.space()->base());
    std::sort(a_set.begin(), a_set.end());
    a_set.erase(std::unique(a_set.begin(), a_set.end()), a_set.end());
    if (m.empty()) return S(0);
    return detail::norm_both_routes(m, a_set).dual;
}

/// Norm witness: f with lip_norm(f) <= 1 and <m, f> = kr_norm(m). The LP
/// optimum on the support is spread to the rest of the space by
/// inf-convolution, which cannot raise the constant.
template <class S>
LipFn<S> attaining_function(const Molecule<S>& m) {
    if (m.empty()) throw std::invalid_argument("zero molecule has no attaining function");
    auto det = detail::norm_both_routes(m, {m.space()->base()});
    std::vector<int> indices = det.support;
    indices.push_back(m.space()->base());
    std::sort(indices.begin(), indices.end());
    auto [sub, map] = subspace(*m.space(), indices);
    std::vector<S> vals(map.size(), S(0));
    for (size_t k = 0; k < map.size(); ++k) {
        auto it = std::find(det.support.begin(), det.support.end(), map[k]);
        if (it != det.support.end())
            vals[k] = det.opt_values[static_cast<size_t>(it - det.support.begin())];
    }
    LipFn<S> g(std::make_shared<FiniteSpace<S>>(std::move(sub)), std::move(vals));
    return extend_infconv(g, m.space(), map);
}

/// Bounded operator between free spaces in the delta basis. Column x is the
/// image molecule of delta_x; the basepoint row and column stay zero.
template <class S>
class FreeOperator {
  public:
    FreeOperator(SpacePtr<S> domain, SpacePtr<S> codomain, std::vector<std::vector<S>> matrix)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), m_(std::move(matrix)) {
        if (!domain_ || !codomain_) throw std::invalid_argument("operator needs spaces");
        if (static_cast<int>(m_.size()) != codomain_->size())
            throw std::invalid_argument("operator row count mismatch");
        for (auto& row : m_)
            if (static_cast<int>(row.size()) != domain_->size())
                throw std::invalid_argument("operator column count mismatch");
        for (int i = 0; i < codomain_->size(); ++i) m_[i][domain_->base()] = S(0);
        for (int j = 0; j < domain_->size(); ++j) m_[codomain_->base()][j] = S(0);
    }

    static FreeOperator identity(const SpacePtr<S>& space) {
        std::vector<std::vector<S>> mat(space->size(), std::vector<S>(space->size(), S(0)));
        for (int i = 0; i < space->size(); ++i)
            if (i != space->base()) mat[i][i] = S(1);
        return FreeOperator(space, space, std::move(mat));
    }

    static FreeOperator zero(const SpacePtr<S>& domain, const SpacePtr<S>& codomain) {
        return FreeOperator(domain, codomain,
                            std::vector<std::vector<S>>(codomain->size(),
                                                        std::vector<S>(domain->size(), S(0))));
    }

    static FreeOperator diagonal(const SpacePtr<S>& space, const std::vector<S>& weights) {
        if (static_cast<int>(weights.size()) != space->size())
            throw std::invalid_argument("diagonal weight count mismatch");
        std::vector<std::vector<S>> mat(space->size(), std::vector<S>(space->size(), S(0)));
        for (int i = 0; i < space->size(); ++i)
            if (i != space->base()) mat[i][i] = weights[i];
        return FreeOperator(space, space, std::move(mat));
    }

    const SpacePtr<S>& domain() const { return domain_; }
    const SpacePtr<S>& codomain() const { return codomain_; }
    const std::vector<std::vector<S>>& matrix() const { return m_; }

    Molecule<S> column(int j) const {
        Molecule<S> out(codomain_);
        for (int i = 0; i < codomain_->size(); ++i)
            if (m_[i][j] != S(0)) out.set(i, m_[i][j]);
        return out;
    }

    Molecule<S> apply(const Molecule<S>& x) const {
        if (!same_space<S>(x.space(), domain_))
            throw std::invalid_argument("operator applied to molecule on the wrong space");
        Molecule<S> out(codomain_);
        for (const auto& [j, c] : x.coeffs())
            for (int i = 0; i < codomain_->size(); ++i)
                if (m_[i][j] != S(0)) out.add(i, c * m_[i][j]);
        return out;
    }

    /// this after other: (this o other)(x) = this(other(x)).
    FreeOperator compose(const FreeOperator& other) const {
        if (!same_space<S>(other.codomain_, domain_))
            throw std::invalid_argument("operator composition space mismatch");
        const int rows = codomain_->size(), mid = domain_->size(), cols = other.domain_->size();
        std::vector<std::vector<S>> mat(rows, std::vector<S>(cols, S(0)));
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < mid; ++k) {
                if (m_[i][k] == S(0)) continue;
                for (int j = 0; j < cols; ++j)
                    if (other.m_[k][j] != S(0)) mat[i][j] += m_[i][k] * other.m_[k][j];
            }
        return FreeOperator(other.domain_, codomain_, std::move(mat));
    }

    FreeOperator operator+(const FreeOperator& other) const {
        if (!same_space<S>(domain_, other.domain_) || !same_space<S>(codomain_, other.codomain_))
            throw std::invalid_argument("operator sum space mismatch");
        auto mat = m_;
        for (size_t i = 0; i < mat.size(); ++i)
            for (size_t j = 0; j < mat[i].size(); ++j) mat[i][j] += other.m_[i][j];
        return FreeOperator(domain_, codomain_, std::move(mat));
    }

    FreeOperator operator-(const FreeOperator& other) const {
        if (!same_space<S>(domain_, other.domain_) || !same_space<S>(codomain_, other.codomain_))
            throw std::invalid_argument("operator difference space mismatch");
        auto mat = m_;
        for (size_t i = 0; i < mat.size(); ++i)
            for (size_t j = 0; j < mat[i].size(); ++j) mat[i][j] -= other.m_[i][j];
        return FreeOperator(domain_, codomain_, std::move(mat));
    }

  private:
    SpacePtr<S> domain_, codomain_;
    std::vector<std::vector<S>> m_;
};

/// Exact operator norm: the unit ball of the free space over a finite space
/// is the convex hull of normalized two-point molecules, so the norm is the
/// maximum of ||T(delta_u - delta_v)|| / d(u,v) over domain pairs (the
/// basepoint contributes the one-point molecules).
template <class S>
S operator_norm(const FreeOperator<S>& T) {
    const auto& dom = *T.domain();
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < dom.size(); ++u)
        for (int v = u + 1; v < dom.size(); ++v) pairs.push_back({u, v});
    std::vector<S> vals(pairs.size(), S(0));
    parallel_for(static_cast<int>(pairs.size()), [&](int k) {
        auto [u, v] = pairs[k];
        Molecule<S> img = T.column(u) - T.column(v);
        vals[k] = kr_norm(img) / dom.dist(u, v);
    });
    S best(0);
    for (const auto& v : vals) best = std::max(best, v);
    return best;
}

}  // namespace freelip
