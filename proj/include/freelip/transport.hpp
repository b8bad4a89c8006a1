#pragma once

#include <queue>
#include <stdexcept>
#include <vector>

#include "freelip/numeric.hpp"

namespace freelip {

/// Balanced transportation problem solved with the classical tableau method
/// (northwest-corner start, tree potentials, cycle pivots). Entering and
/// leaving cells follow Bland's smallest-index rule, so the rational
/// instantiation terminates with the exact optimum. Costs are normalized by
/// their maximum for the pivot tests; the reported value is the dot product
/// of the final flow with the original costs.
template <class S>
S transport_min_cost(std::vector<S> supply, std::vector<S> demand,
                     const std::vector<std::vector<S>>& cost) {
    const int m = static_cast<int>(supply.size());
    const int n = static_cast<int>(demand.size());
    if (m == 0 || n == 0) return S(0);
    S total_s(0), total_d(0);
    for (const auto& s : supply) {
        if (s < S(0)) throw std::invalid_argument("negative supply");
        total_s += s;
    }
    for (const auto& d : demand) {
        if (d < S(0)) throw std::invalid_argument("negative demand");
        total_d += d;
    }
    if (total_s != total_d) throw std::invalid_argument("unbalanced transportation problem");
    if (total_s == S(0)) return S(0);

    S scale(0);
    for (const auto& row : cost)
        for (const auto& c : row) scale = std::max(scale, abs_val<S>(c));
    if (scale == S(0)) return S(0);
    std::vector<std::vector<S>> w(m, std::vector<S>(n));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) w[i][j] = cost[i][j] / scale;

    std::vector<std::vector<S>> flow(m, std::vector<S>(n, S(0)));
    std::vector<std::vector<bool>> basic(m, std::vector<bool>(n, false));

    // Northwest-corner staircase: m + n - 1 basic cells forming a tree.
    {
        int i = 0, j = 0;
        auto rs = supply;
        auto rd = demand;
        while (true) {
            basic[i][j] = true;
            S f = std::min(rs[i], rd[j]);
            flow[i][j] = f;
            rs[i] -= f;
            rd[j] -= f;
            if (i == m - 1 && j == n - 1) break;
            if (rs[i] == S(0) && i < m - 1)
                ++i;
            else if (rd[j] == S(0) && j < n - 1)
                ++j;
            else if (j < n - 1)
                ++j;
            else
                ++i;
        }
    }

    const S tol = scalar_traits<S>::tol();
    std::vector<S> u(m), v(n);
    std::vector<char> u_set(m), v_set(n);
    const long long max_iter = 4096 + 64LL * (m + n) * (m + n);
    for (long long iter = 0;; ++iter) {
        if (iter > max_iter) throw std::runtime_error("transportation iteration limit exceeded");

        // Potentials from the basis tree.
        std::fill(u_set.begin(), u_set.end(), 0);
        std::fill(v_set.begin(), v_set.end(), 0);
        u[0] = S(0);
        u_set[0] = 1;
        std::queue<int> bfs;  // nodes: rows 0..m-1, cols m..m+n-1
        bfs.push(0);
        while (!bfs.empty()) {
            int node = bfs.front();
            bfs.pop();
            if (node < m) {
                for (int j = 0; j < n; ++j)
                    if (basic[node][j] && !v_set[j]) {
                        v[j] = w[node][j] - u[node];
                        v_set[j] = 1;
                        bfs.push(m + j);
                    }
            } else {
                int j = node - m;
                for (int i = 0; i < m; ++i)
                    if (basic[i][j] && !u_set[i]) {
                        u[i] = w[i][j] - v[j];
                        u_set[i] = 1;
                        bfs.push(i);
                    }
            }
        }

        int ei = -1, ej = -1;
        for (int i = 0; i < m && ei < 0; ++i)
            for (int j = 0; j < n; ++j)
                if (!basic[i][j] && w[i][j] - u[i] - v[j] < S(0) - tol) {
                    ei = i;
                    ej = j;
                    break;
                }
        if (ei < 0) break;

        // Unique tree path from row ei to col ej; the entering cell closes it
        // into the pivot cycle.
        std::vector<int> parent(m + n, -1);
        std::vector<char> seen(m + n, 0);
        std::queue<int> q;
        q.push(ei);
        seen[ei] = 1;
        while (!q.empty()) {
            int node = q.front();
            q.pop();
            if (node == m + ej) break;
            if (node < m) {
                for (int j = 0; j < n; ++j)
                    if (basic[node][j] && !seen[m + j]) {
                        seen[m + j] = 1;
                        parent[m + j] = node;
                        q.push(m + j);
                    }
            } else {
                int j = node - m;
                for (int i = 0; i < m; ++i)
                    if (basic[i][j] && !seen[i]) {
                        seen[i] = 1;
                        parent[i] = m + j;
                        q.push(i);
                    }
            }
        }
        if (!seen[m + ej]) throw std::runtime_error("transportation basis lost connectivity");
        std::vector<int> path;  // nodes from row ei to col ej
        for (int node = m + ej; node != -1; node = parent[node]) path.push_back(node);
        std::reverse(path.begin(), path.end());

        // Edge t of the path (0-based from the entering row) is a minus cell
        // when t is even: the cycle alternates starting from the entering +.
        std::vector<std::pair<int, int>> minus_cells, plus_cells;
        for (size_t t = 0; t + 1 < path.size(); ++t) {
            int a = path[t], b = path[t + 1];
            int ri = a < m ? a : b;
            int cj = a < m ? b - m : a - m;
            if (t % 2 == 0)
                minus_cells.push_back({ri, cj});
            else
                plus_cells.push_back({ri, cj});
        }
        int li = -1, lj = -1;
        S theta(0);
        for (const auto& [ri, cj] : minus_cells) {
            if (li < 0 || flow[ri][cj] < theta ||
                (flow[ri][cj] == theta && (ri < li || (ri == li && cj < lj)))) {
                li = ri;
                lj = cj;
                theta = flow[ri][cj];
            }
        }
        for (const auto& [ri, cj] : minus_cells) flow[ri][cj] -= theta;
        for (const auto& [ri, cj] : plus_cells) flow[ri][cj] += theta;
        flow[ei][ej] = theta;
        basic[ei][ej] = true;
        basic[li][lj] = false;
    }

    S value(0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if (flow[i][j] != S(0)) value += flow[i][j] * cost[i][j];
    return value;
}

}  // namespace freelip
