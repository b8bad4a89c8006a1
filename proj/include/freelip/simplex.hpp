#pragma once

#include <stdexcept>
#include <vector>

#include "freelip/numeric.hpp"

namespace freelip {

enum class LpStatus { kOptimal, kUnbounded };

template <class S>
struct LpResult {
    LpStatus status = LpStatus::kOptimal;
    S value = S(0);
    std::vector<S> x;  // optimizer for the free variables
};

/// Dense tableau simplex for
///     maximize c.x   subject to  A x <= b,  x free,
/// restricted to b >= 0 so the all-slack basis is feasible (every polytope in
/// this library has strictly positive right-hand sides). Free variables are
/// split x = u - w; Bland's rule on both the entering and leaving choice
/// guarantees termination, which makes the rational instantiation exact.
template <class S>
LpResult<S> simplex_max(const std::vector<std::vector<S>>& A, const std::vector<S>& b,
                        const std::vector<S>& c) {
    const int m = static_cast<int>(A.size());
    const int n = static_cast<int>(c.size());
    for (const auto& bi : b)
        if (bi < S(0)) throw std::invalid_argument("simplex_max requires b >= 0");
    const int cols = 2 * n + m;  // u, w, slacks
    const S tol = scalar_traits<S>::tol();

    std::vector<std::vector<S>> T(m, std::vector<S>(cols, S(0)));
    std::vector<S> rhs = b;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            T[i][j] = A[i][j];
            T[i][n + j] = S(0) - A[i][j];
        }
        T[i][2 * n + i] = S(1);
    }
    std::vector<S> obj(cols, S(0));
    for (int j = 0; j < n; ++j) {
        obj[j] = c[j];
        obj[n + j] = S(0) - c[j];
    }
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = 2 * n + i;

    LpResult<S> out;
    const long long max_iter = 4096 + 64LL * (m + cols);
    for (long long iter = 0;; ++iter) {
        if (iter > max_iter) throw std::runtime_error("simplex iteration limit exceeded");
        int enter = -1;
        for (int j = 0; j < cols; ++j)
            if (obj[j] > tol) { enter = j; break; }
        if (enter < 0) break;
        int leave = -1;
        S best_ratio(0);
        for (int i = 0; i < m; ++i) {
            if (T[i][enter] > tol) {
                S ratio = rhs[i] / T[i][enter];
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
        }
        if (leave < 0) {
            out.status = LpStatus::kUnbounded;
            return out;
        }
        S piv = T[leave][enter];
        for (int j = 0; j < cols; ++j) T[leave][j] /= piv;
        rhs[leave] /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == leave) continue;
            S f = T[i][enter];
            if (f == S(0)) continue;
            for (int j = 0; j < cols; ++j) T[i][j] -= f * T[leave][j];
            rhs[i] -= f * rhs[leave];
        }
        S f = obj[enter];
        for (int j = 0; j < cols; ++j) obj[j] -= f * T[leave][j];
        out.value += f * rhs[leave];
        basis[leave] = enter;
    }

    out.x.assign(n, S(0));
    for (int i = 0; i < m; ++i) {
        if (basis[i] < n)
            out.x[basis[i]] += rhs[i];
        else if (basis[i] < 2 * n)
            out.x[basis[i] - n] -= rhs[i];
    }
    return out;
}

}  // namespace freelip
