#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "freelip/molecule.hpp"
#include "freelip/separator.hpp"
#include "freelip/tower.hpp"

namespace freelip {

// std::map-backed objects: keys always serialize in sorted order, so every
// report has one canonical byte form.
using Json = nlohmann::json;

/// Scalars are emitted as strings: exact "p/q" for rationals, fixed 12
/// significant digits for floats. Reports stay byte-stable and rational
/// round-trips lose nothing.
std::string scalar_str(const Rational& v);
std::string scalar_str(double v);

template <class S>
Json scalar_json(const S& v) {
    return Json(scalar_str(v));
}

/// { "finite": {"points": [...], "base": i, "dist": [[...]]} } or, for line
/// spaces, { "line": {"points": [...], "base": i, "coords": [...]} }.
template <class S>
Json space_json(const FiniteSpace<S>& sp) {
    Json body;
    body["points"] = sp.ids();
    body["base"] = sp.base();
    Json out;
    if (sp.is_line()) {
        Json coords = Json::array();
        for (int i = 0; i < sp.size(); ++i) coords.push_back(scalar_str(sp.coord(i)));
        body["coords"] = std::move(coords);
        out["line"] = std::move(body);
    } else {
        Json rows = Json::array();
        for (int i = 0; i < sp.size(); ++i) {
            Json row = Json::array();
            for (int j = 0; j < sp.size(); ++j) row.push_back(scalar_str(sp.dist(i, j)));
            rows.push_back(std::move(row));
        }
        body["dist"] = std::move(rows);
        out["finite"] = std::move(body);
    }
    return out;
}

/// Inverse of space_json plus the tower form
/// { "tower": {"ratio": q, "depth": n, "towers": [{"rank","anchor","scale"}...]} }
/// (single-tower shorthand: rank/anchor/scale at the top level).
FiniteSpace<Rational> space_from_json(const Json& j);
bool is_tower_json(const Json& j);
TowerSpace tower_from_json(const Json& j);
Json tower_json(const TowerSpace& t);

template <class S>
Json molecule_json(const Molecule<S>& m) {
    Json out = Json::object();
    for (const auto& [i, c] : m.coeffs()) out[m.space()->id(i)] = scalar_str(c);
    return out;
}

/// Coefficients keyed by point id; values "p/q" strings or numbers.
template <class S>
Molecule<S> molecule_from_json(const Json& j, const SpacePtr<S>& space) {
    Molecule<S> m(space);
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Rational c = it.value().is_string() ? parse_rational(it.value().get<std::string>())
                                                  : rational_from_double(it.value().get<double>());
        m.add(space->index_of(it.key()), scalar_traits<S>::from_rational(c));
    }
    return m;
}

template <class S>
Json function_json(const LipFn<S>& f) {
    Json out = Json::object();
    for (int i = 0; i < f.space()->size(); ++i) out[f.space()->id(i)] = scalar_str(f[i]);
    return out;
}

/// Full certificate: pair data, the staircase profile, the cascade trace,
/// the materialized values of h, and the verification scales.
Json certificate_json(const SeparatorCertificate& cert);

/// 2-space indent, trailing newline, keys already sorted by the map-backed
/// object type. The single canonical form every report writer must use.
std::string dump_canonical(const Json& j);

}  // namespace freelip
