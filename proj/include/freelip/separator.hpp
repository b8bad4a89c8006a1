#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "freelip/lipschitz.hpp"
#include "freelip/tower.hpp"

namespace freelip {

/// A value-space plateau: the output is constant on `band`.
struct Plateau {
    Interval band;
    Rational value{0};
    int level = 1;  // cascade round that placed it
};

/// Raised when a freshly placed plateau meets the closure of an earlier one.
/// The construction asserts disjointness; we surface the configuration
/// instead of clipping.
class PlateauOverlap : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Nondecreasing continuous piecewise-affine function [0,inf) -> [0,inf):
/// constant on each plateau, affine between consecutive ones. The first
/// plateau starts at 0 and the last extends to infinity.
class StaircaseFn {
  public:
    explicit StaircaseFn(std::vector<Plateau> plateaus);

    const std::vector<Plateau>& plateaus() const { return plateaus_; }
    Rational eval(const Rational& t) const;
    /// Largest affine slope between consecutive plateaus.
    Rational max_slope() const;
    /// Largest slope among segments created at the given cascade round.
    Rational max_slope_at_level(int level) const;

  private:
    std::vector<Plateau> plateaus_;  // sorted by band position
};

/// One cascade round of the separator construction.
struct CascadeLevel {
    int level = 1;            // 1-based round number
    int alpha = 0;            // derivation steps that made the working set finite
    std::vector<Rational> center_values;  // sorted distinct distances to x
    Rational v{0};            // min spacing value of the round
    Rational half_width{0};   // plateau half width v / 2^{level+1}
    bool c_finite = false;
    bool c_empty = false;
    int c_tail_count = 0;                // infinite components left after the round
    std::vector<Rational> c_points;      // coordinates, when finite
    std::vector<Rational> d_points;      // coordinates of the strict-interior set
};

/// Output of the separator: a radial function h = 2(phi(d(.,x)) - phi(d(0,x)))
/// that transports the full distance between x and y, has slope at most
/// slope_bound, and is flat at scales below witness_delta.
struct SeparatorCertificate {
    TowerSpace space;
    NodeRef x, y;
    Rational a{0};  // d(x, y)
    StaircaseFn phi;
    LipFn<Rational> h;  // materialized on the space's default truncation
    int levels = 0;
    Rational slope_bound{0};
    Rational witness_delta{0};
    std::vector<CascadeLevel> trace;

    /// h on a given truncation of the same space.
    LipFn<Rational> materialize(const TowerSpace::Truncation& tr) const;
};

/// Runs the cascade for two distinct points given by node address.
SeparatorCertificate separate(const TowerSpace& space, const NodeRef& x, const NodeRef& y);

/// 2 * prod_{j=1..levels} (1 + 1/(2^j - 1)), exact.
Rational separation_constant(int levels);
/// Limit of the products, accurate to 1e-12.
double separation_constant_limit();

struct CertificateCheck {
    bool present = true;        // x and y realized at the requested depth
    bool transport_exact = false;
    bool slope_ok = false;
    bool flat_below_delta = false;
    bool base_zero = false;
    Rational measured_lip{0};
    Rational measured_modulus{0};
    // pair violating flatness, when one exists
    std::string modulus_witness_u, modulus_witness_v;
    bool ok() const {
        return present && transport_exact && slope_ok && flat_below_delta && base_zero;
    }
};

/// Re-materializes h at the given truncation depth and re-checks the four
/// certificate invariants from scratch.
CertificateCheck verify_certificate(const SeparatorCertificate& cert, int depth);

}  // namespace freelip
