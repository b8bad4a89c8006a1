#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "freelip/numeric.hpp"

namespace freelip {

/// Pointed finite metric space. Storage is either a dense distance matrix or,
/// for spaces living on the real line, a coordinate vector with
/// d(i,j) = |c_i - c_j|. The basepoint is a distinguished index.
template <class S>
class FiniteSpace {
  public:
    static FiniteSpace from_matrix(std::vector<std::string> ids, std::vector<std::vector<S>> dist,
                                   int base) {
        FiniteSpace sp;
        sp.ids_ = std::move(ids);
        sp.dist_ = std::move(dist);
        sp.base_ = base;
        sp.check_shape();
        return sp;
    }

    static FiniteSpace from_line(std::vector<std::string> ids, std::vector<S> coords, int base) {
        FiniteSpace sp;
        sp.ids_ = std::move(ids);
        sp.coords_ = std::move(coords);
        sp.base_ = base;
        sp.check_shape();
        std::vector<int> order(sp.coords_.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int i, int j) { return sp.coords_[i] < sp.coords_[j]; });
        for (size_t k = 1; k < order.size(); ++k)
            if (sp.coords_[order[k - 1]] == sp.coords_[order[k]])
                throw std::invalid_argument("duplicate coordinate in line space: " +
                                            sp.ids_[order[k - 1]] + " vs " + sp.ids_[order[k]]);
        return sp;
    }

    int size() const { return static_cast<int>(ids_.size()); }
    int base() const { return base_; }
    const std::string& id(int i) const { return ids_.at(i); }
    const std::vector<std::string>& ids() const { return ids_; }
    bool is_line() const { return !coords_.empty(); }
    const S& coord(int i) const { return coords_.at(i); }
    const std::vector<S>& coords() const { return coords_; }

    S dist(int i, int j) const {
        if (is_line()) return abs_val<S>(coords_[i] - coords_[j]);
        return dist_[i][j];
    }

    int index_of(const std::string& id) const {
        for (int i = 0; i < size(); ++i)
            if (ids_[i] == id) return i;
        throw std::out_of_range("no point with id '" + id + "'");
    }

    S diameter() const {
        S best(0);
        for (int i = 0; i < size(); ++i)
            for (int j = i + 1; j < size(); ++j) best = std::max(best, dist(i, j));
        return best;
    }

    bool operator==(const FiniteSpace& other) const {
        if (ids_ != other.ids_ || base_ != other.base_) return false;
        for (int i = 0; i < size(); ++i)
            for (int j = 0; j < size(); ++j)
                if (dist(i, j) != other.dist(i, j)) return false;
        return true;
    }

  private:
    void check_shape() const {
        if (ids_.empty()) throw std::invalid_argument("space needs at least the basepoint");
        if (base_ < 0 || base_ >= size()) throw std::invalid_argument("base index out of range");
        std::map<std::string, int> seen;
        for (const auto& id : ids_)
            if (++seen[id] > 1) throw std::invalid_argument("duplicate point id: " + id);
        if (!coords_.empty() && coords_.size() != ids_.size())
            throw std::invalid_argument("coordinate count mismatch");
        if (coords_.empty()) {
            if (dist_.size() != ids_.size())
                throw std::invalid_argument("distance matrix row count mismatch");
            for (const auto& row : dist_)
                if (row.size() != ids_.size())
                    throw std::invalid_argument("distance matrix column count mismatch");
        }
    }

    std::vector<std::string> ids_;
    std::vector<S> coords_;
    std::vector<std::vector<S>> dist_;
    int base_ = 0;
};

template <class S>
using SpacePtr = std::shared_ptr<const FiniteSpace<S>>;

template <class S>
bool same_space(const SpacePtr<S>& a, const SpacePtr<S>& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

/// One violated axiom with a single witness and the total violation count.
struct MetricViolation {
    std::string axiom;         // "symmetry" | "zero_diagonal" | "positivity" | "triangle"
    int i = -1, j = -1, k = -1;
    std::string detail;
    long long count = 0;
};

struct MetricReport {
    std::vector<MetricViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Axiom check. In exact mode comparisons are strict; in float mode an
/// absolute tolerance (default 1e-12) absorbs representation noise.
template <class S>
MetricReport validate_metric(const FiniteSpace<S>& sp,
                             S tol = scalar_traits<S>::exact ? S(0) : S(1e-12)) {
    MetricReport rep;
    const int n = sp.size();
    MetricViolation sym, diag, pos, tri;
    sym.axiom = "symmetry";
    diag.axiom = "zero_diagonal";
    pos.axiom = "positivity";
    tri.axiom = "triangle";
    for (int i = 0; i < n; ++i) {
        if (abs_val(sp.dist(i, i)) > tol) {
            if (diag.count++ == 0) { diag.i = i; diag.detail = "d(i,i) != 0"; }
        }
        for (int j = 0; j < n; ++j) {
            if (i != j && sp.dist(i, j) <= tol) {
                if (pos.count++ == 0) { pos.i = i; pos.j = j; pos.detail = "d(i,j) <= 0"; }
            }
            if (abs_val(sp.dist(i, j) - sp.dist(j, i)) > tol) {
                if (sym.count++ == 0) { sym.i = i; sym.j = j; sym.detail = "d(i,j) != d(j,i)"; }
            }
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (sp.dist(i, k) > sp.dist(i, j) + sp.dist(j, k) + tol) {
                    if (tri.count++ == 0) {
                        tri.i = i;
                        tri.j = j;
                        tri.k = k;
                        tri.detail = "d(i,k) > d(i,j)+d(j,k)";
                    }
                }
    for (auto& v : {sym, diag, pos, tri})
        if (v.count > 0) rep.violations.push_back(v);
    return rep;
}

template <class S>
S dist_to_subset(const FiniteSpace<S>& sp, int i, const std::vector<int>& subset) {
    if (subset.empty()) throw std::invalid_argument("distance to empty subset");
    S best = sp.dist(i, subset[0]);
    for (int a : subset) best = std::min(best, sp.dist(i, a));
    return best;
}

/// Collapses `subset` to the basepoint of a new space. Remaining points keep
/// their ids; d(x,0) = dist(x, subset) and cross distances take the shortcut
/// through the collapsed class when shorter.
template <class S>
FiniteSpace<S> quotient(const FiniteSpace<S>& sp, const std::vector<int>& subset) {
    if (subset.empty()) throw std::invalid_argument("quotient by empty subset");
    std::vector<bool> in_a(sp.size(), false);
    for (int a : subset) {
        if (a < 0 || a >= sp.size()) throw std::out_of_range("quotient subset index out of range");
        in_a[a] = true;
    }
    const bool base_in = in_a[sp.base()];
    std::vector<std::string> ids;
    std::vector<int> keep;  // original indices of surviving non-class points
    ids.push_back(base_in ? sp.id(sp.base()) : "<class>");
    for (int i = 0; i < sp.size(); ++i)
        if (!in_a[i]) {
            ids.push_back(sp.id(i));
            keep.push_back(i);
        }
    const int n = static_cast<int>(ids.size());
    std::vector<std::vector<S>> d(n, std::vector<S>(n, S(0)));
    std::vector<S> da(keep.size());
    for (size_t x = 0; x < keep.size(); ++x) da[x] = dist_to_subset(sp, keep[x], subset);
    for (size_t x = 0; x < keep.size(); ++x) {
        d[0][x + 1] = d[x + 1][0] = da[x];
        for (size_t y = x + 1; y < keep.size(); ++y) {
            S via = da[x] + da[y];
            S direct = sp.dist(keep[x], keep[y]);
            d[x + 1][y + 1] = d[y + 1][x + 1] = std::min(direct, via);
        }
    }
    return FiniteSpace<S>::from_matrix(std::move(ids), std::move(d), 0);
}

/// Metric subspace on `indices` (must contain the basepoint). Line mode is
/// preserved. Returns the new space plus the index map back into `sp`.
template <class S>
std::pair<FiniteSpace<S>, std::vector<int>> subspace(const FiniteSpace<S>& sp,
                                                     std::vector<int> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    if (std::find(indices.begin(), indices.end(), sp.base()) == indices.end())
        throw std::invalid_argument("subspace must contain the basepoint");
    std::vector<std::string> ids;
    int base = -1;
    for (size_t k = 0; k < indices.size(); ++k) {
        ids.push_back(sp.id(indices[k]));
        if (indices[k] == sp.base()) base = static_cast<int>(k);
    }
    if (sp.is_line()) {
        std::vector<S> coords;
        for (int i : indices) coords.push_back(sp.coord(i));
        return {FiniteSpace<S>::from_line(std::move(ids), std::move(coords), base), indices};
    }
    std::vector<std::vector<S>> d(indices.size(), std::vector<S>(indices.size()));
    for (size_t a = 0; a < indices.size(); ++a)
        for (size_t b = 0; b < indices.size(); ++b) d[a][b] = sp.dist(indices[a], indices[b]);
    return {FiniteSpace<S>::from_matrix(std::move(ids), std::move(d), base), indices};
}

template <class S>
FiniteSpace<double> to_double_space(const FiniteSpace<S>& sp) {
    if (sp.is_line()) {
        std::vector<double> coords;
        for (int i = 0; i < sp.size(); ++i) coords.push_back(to_double<S>(sp.coord(i)));
        return FiniteSpace<double>::from_line(sp.ids(), std::move(coords), sp.base());
    }
    std::vector<std::vector<double>> d(sp.size(), std::vector<double>(sp.size()));
    for (int i = 0; i < sp.size(); ++i)
        for (int j = 0; j < sp.size(); ++j) d[i][j] = to_double<S>(sp.dist(i, j));
    return FiniteSpace<double>::from_matrix(sp.ids(), std::move(d), sp.base());
}

}  // namespace freelip
