#pragma once

#include <map>
#include <stdexcept>

#include "freelip/lipschitz.hpp"
#include "freelip/metric_space.hpp"

namespace freelip {

/// Finitely supported element of the free space over a finite pointed metric
/// space: a formal combination sum_x coeff(x) * delta_x. The basepoint never
/// carries a coefficient (delta_0 = 0).
template <class S>
class Molecule {
  public:
    explicit Molecule(SpacePtr<S> space) : space_(std::move(space)) {
        if (!space_) throw std::invalid_argument("molecule needs a space");
    }

    const SpacePtr<S>& space() const { return space_; }
    const std::map<int, S>& coeffs() const { return coeffs_; }
    bool empty() const { return coeffs_.empty(); }

    S coeff(int i) const {
        auto it = coeffs_.find(i);
        return it == coeffs_.end() ? S(0) : it->second;
    }

    void set(int i, const S& c) {
        if (i < 0 || i >= space_->size()) throw std::out_of_range("molecule index out of range");
        if (i == space_->base()) {
            if (c != S(0)) throw std::invalid_argument("basepoint carries no coefficient");
            return;
        }
        if (c == S(0))
            coeffs_.erase(i);
        else
            coeffs_[i] = c;
    }

    void add(int i, const S& c) {
        if (i == space_->base()) return;  // delta at the basepoint is the zero element
        set(i, coeff(i) + c);
    }

    Molecule operator+(const Molecule& other) const {
        require_same(other);
        Molecule out = *this;
        for (const auto& [i, c] : other.coeffs_) out.add(i, c);
        return out;
    }

    Molecule operator-(const Molecule& other) const {
        require_same(other);
        Molecule out = *this;
        for (const auto& [i, c] : other.coeffs_) out.add(i, S(0) - c);
        return out;
    }

    Molecule operator*(const S& s) const {
        Molecule out(space_);
        if (s == S(0)) return out;
        for (const auto& [i, c] : coeffs_) out.set(i, c * s);
        return out;
    }

    std::vector<int> support() const {
        std::vector<int> out;
        for (const auto& [i, c] : coeffs_) out.push_back(i);
        return out;
    }

    static Molecule delta(const SpacePtr<S>& space, int i) {
        Molecule m(space);
        if (i != space->base()) m.set(i, S(1));
        return m;
    }

  private:
    void require_same(const Molecule& other) const {
        if (!same_space<S>(space_, other.space_))
            throw std::invalid_argument("molecules live on different spaces");
    }

    SpacePtr<S> space_;
    std::map<int, S> coeffs_;
};

/// Duality pairing <m, f> = sum coeff(x) f(x).
template <class S>
S pair(const Molecule<S>& m, const LipFn<S>& f) {
    if (!same_space<S>(m.space(), f.space()))
        throw std::invalid_argument("pairing requires a shared space");
    S out(0);
    for (const auto& [i, c] : m.coeffs()) out += c * f[i];
    return out;
}

}  // namespace freelip
