#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "freelip/free_space.hpp"

namespace freelip {

/// 2^n as an exact scalar (negative n gives exact dyadic fractions).
template <class S>
S pow2_scalar(int n) {
    S p(1);
    for (int i = 0; i < (n >= 0 ? n : -n); ++i) p *= S(2);
    return n >= 0 ? p : S(S(1) / p);
}

/// Dyadic shell structure of a finite pointed space: K_n = {d(0,x) <= 2^n},
/// O_n its strict version, bands K_n \ K_{n-1}. Each non-basepoint x gets its
/// band exponent and the ramp value log2 d(0,x) - (band-1) in (0,1], exact at
/// powers of two. Falling ramps are formed as 1 - ramp, so consecutive tent
/// weights sum to 1 exactly even in floating point.
template <class S>
class ShellSystem {
  public:
    explicit ShellSystem(SpacePtr<S> space) : space_(std::move(space)) {
        if (!space_) throw std::invalid_argument("shell system needs a space");
        const auto& sp = *space_;
        band_.assign(sp.size(), 0);
        ramp_.assign(sp.size(), S(0));
        bool found = false;
        for (int i = 0; i < sp.size(); ++i) {
            if (i == sp.base()) continue;
            const S d = sp.dist(sp.base(), i);
            band_[i] = band_of(d);
            ramp_[i] = ramp_of(d, band_[i]);
            if (!found || band_[i] < n_min_) n_min_ = band_[i];
            if (!found || band_[i] > n_max_) n_max_ = band_[i];
            found = true;
        }
        if (!found) n_min_ = n_max_ = 0;
    }

    const SpacePtr<S>& space() const { return space_; }
    int n_min() const { return n_min_; }
    int n_max() const { return n_max_; }

    /// Band exponent of a non-basepoint point: the least n with d(0,x) <= 2^n.
    int band(int i) const {
        if (i == space_->base()) throw std::invalid_argument("basepoint has no shell band");
        return band_[i];
    }
    const S& ramp(int i) const {
        if (i == space_->base()) throw std::invalid_argument("basepoint has no ramp value");
        return ramp_[i];
    }

    bool in_K(int i, int n) const {
        return space_->dist(space_->base(), i) <= pow2_scalar<S>(n);
    }
    bool in_O(int i, int n) const {
        return space_->dist(space_->base(), i) < pow2_scalar<S>(n);
    }
    /// Points of F_N = K_{N+1} \ O_{-N-1}, basepoint excluded.
    std::vector<int> band_points(int N) const {
        std::vector<int> out;
        for (int i = 0; i < space_->size(); ++i)
            if (i != space_->base() && in_K(i, N + 1) && !in_O(i, -N - 1)) out.push_back(i);
        return out;
    }

  private:
    int band_of(const S& d) const {
        const int g = std::ilogb(to_double<S>(d));
        for (int n = g - 2; n <= g + 3; ++n)
            if (d <= pow2_scalar<S>(n)) return n;
        throw std::logic_error("shell band scan failed");
    }

    S ramp_of(const S& d, int band) const {
        if (d == pow2_scalar<S>(band)) return S(1);
        double r = std::log2(to_double<S>(d)) - (band - 1);
        if (r < 0) r = 0;
        if (r > 1) r = 1;
        if constexpr (scalar_traits<S>::exact)
            return rational_from_double(r);
        else
            return S(r);
    }

    SpacePtr<S> space_;
    std::vector<int> band_;
    std::vector<S> ramp_;
    int n_min_ = 0, n_max_ = 0;
};

/// Tent operator of exponent n: diagonal in the delta basis, weight 0 on
/// K_{n-1}, rising log2 d(0,x) - (n-1) on K_n \ K_{n-1}, falling
/// n+1 - log2 d(0,x) on K_{n+1} \ K_n, 0 beyond K_{n+1}.
template <class S>
FreeOperator<S> kalton_T(const ShellSystem<S>& sys, int n) {
    const auto& sp = *sys.space();
    std::vector<S> w(sp.size(), S(0));
    for (int i = 0; i < sp.size(); ++i) {
        if (i == sp.base()) continue;
        if (sys.band(i) == n)
            w[i] = sys.ramp(i);
        else if (sys.band(i) == n + 1)
            w[i] = S(S(1) - sys.ramp(i));
    }
    return FreeOperator<S>::diagonal(sys.space(), w);
}

/// S_N = sum of the tents with exponents -N..N. Diagonal, supported in F_N,
/// weight exactly 1 on every interior band.
template <class S>
FreeOperator<S> kalton_S(const ShellSystem<S>& sys, int N) {
    if (N < 0) throw std::invalid_argument("shell sum needs N >= 0");
    const auto& sp = *sys.space();
    std::vector<S> w(sp.size(), S(0));
    for (int i = 0; i < sp.size(); ++i) {
        if (i == sp.base()) continue;
        const int b = sys.band(i);
        // tents with this band index in their support: T_b (rising) and
        // T_{b-1} (falling)
        if (b >= -N && b <= N) w[i] += sys.ramp(i);
        if (b - 1 >= -N && b - 1 <= N) w[i] += S(S(1) - sys.ramp(i));
    }
    return FreeOperator<S>::diagonal(sys.space(), w);
}

/// Finite-rank substitute for a norm-one retraction: collapse every point to
/// its nearest net point. The net is grown greedily over points ordered by
/// distance to the basepoint (then id), keeping pairwise distances > mesh;
/// the projection breaks ties toward smaller d(0,.) then lexicographic id.
/// The measured operator norm is reported, not asserted to be 1.
template <class S>
struct NetRetraction {
    FreeOperator<S> op;
    std::vector<int> net;   // net point indices, basepoint first
    std::vector<int> proj;  // per point: index into net
    int rank = 0;           // net size minus the basepoint
    S norm{0};
};

template <class S>
NetRetraction<S> net_retraction(const SpacePtr<S>& space, const S& mesh) {
    if (mesh <= S(0)) throw std::invalid_argument("net mesh must be positive");
    const auto& sp = *space;
    std::vector<int> order;
    for (int i = 0; i < sp.size(); ++i)
        if (i != sp.base()) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const S da = sp.dist(sp.base(), a), db = sp.dist(sp.base(), b);
        if (da != db) return da < db;
        return sp.id(a) < sp.id(b);
    });

    std::vector<int> net{sp.base()};
    for (int cand : order) {
        bool clear = true;
        for (int m : net)
            if (sp.dist(cand, m) <= mesh) {
                clear = false;
                break;
            }
        if (clear) net.push_back(cand);
    }

    std::vector<int> proj(sp.size(), 0);
    for (int i = 0; i < sp.size(); ++i) {
        int best = 0;
        for (std::size_t k = 1; k < net.size(); ++k) {
            const S dk = sp.dist(i, net[k]);
            const S db = sp.dist(i, net[best]);
            if (dk < db) {
                best = static_cast<int>(k);
            } else if (dk == db) {
                const S rk = sp.dist(sp.base(), net[k]);
                const S rb = sp.dist(sp.base(), net[best]);
                if (rk < rb || (rk == rb && sp.id(net[k]) < sp.id(net[best])))
                    best = static_cast<int>(k);
            }
        }
        proj[i] = best;
    }

    std::vector<std::vector<S>> mat(sp.size(), std::vector<S>(sp.size(), S(0)));
    for (int i = 0; i < sp.size(); ++i) mat[net[proj[i]]][i] = S(1);
    FreeOperator<S> op(space, space, std::move(mat));
    NetRetraction<S> out{std::move(op), std::move(net), std::move(proj),
                         static_cast<int>(0), S(0)};
    out.rank = static_cast<int>(out.net.size()) - 1;
    out.norm = operator_norm(out.op);
    return out;
}

template <class S>
struct BapReport {
    int N = 0;
    S mesh{0};
    int rank = 0;
    S norm_S{0};
    S norm_Q{0};
    std::vector<S> errors;  // kr_norm(Q gamma - gamma) per battery molecule
};

/// One point of the approximation scheme: Q = retraction after shell sum.
template <class S>
BapReport<S> bap_experiment(const SpacePtr<S>& space, int N, const S& mesh,
                            const std::vector<Molecule<S>>& battery) {
    ShellSystem<S> sys(space);
    FreeOperator<S> sn = kalton_S(sys, N);
    NetRetraction<S> ret = net_retraction(space, mesh);
    FreeOperator<S> q = ret.op.compose(sn);
    BapReport<S> out;
    out.N = N;
    out.mesh = mesh;
    out.rank = ret.rank;
    out.norm_S = operator_norm(sn);
    out.norm_Q = operator_norm(q);
    out.errors.reserve(battery.size());
    for (const auto& g : battery) out.errors.push_back(kr_norm(q.apply(g) - g));
    return out;
}

}  // namespace freelip
