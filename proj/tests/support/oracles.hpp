#pragma once

#include <vector>

#include "freelip/molecule.hpp"

namespace freelip::testing {

/// Every vertex of {f : f(base) = 0, |f(i) - f(j)| <= d(i,j)}, as full value
/// vectors aligned with the space indices. Exhaustive enumeration of tight
/// constraint subsets; intended for spaces with at most 6 points.
std::vector<std::vector<Rational>> lip_polytope_vertices(const FiniteSpace<Rational>& sp);

/// Free-space norm the slow way: maximize <m, f> over the polytope vertices.
/// Shares nothing with the transportation or LP solvers.
Rational polytope_norm(const Molecule<Rational>& m);

/// Brute accumulation detector for geometric tower snapshots taken two
/// truncation depths apart. A point accumulates exactly when deepening
/// shrinks its nearest-neighbor distance by the square of the decay ratio;
/// every non-accumulating point loses at most a factor (1 - ratio) to new
/// boundary siblings. Marks points whose shrink factor is at or below the
/// midpoint of those two regimes.
std::vector<Rational> brute_accumulation(const std::vector<Rational>& shallow,
                                         const std::vector<Rational>& deep,
                                         const Rational& ratio);

}  // namespace freelip::testing
