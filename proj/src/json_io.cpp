#include "freelip/json_io.hpp"

#include <cstdio>

namespace freelip {

std::string scalar_str(const Rational& v) { return rational_to_string(v); }

std::string scalar_str(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

Rational rat_field(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    return rational_from_double(j.get<double>());
}

Json interval_json(const Interval& iv) {
    Json out;
    out["lo"] = iv.lo_unbounded ? Json() : Json(scalar_str(iv.lo));
    out["hi"] = iv.hi_unbounded ? Json() : Json(scalar_str(iv.hi));
    out["lo_open"] = iv.lo_open;
    out["hi_open"] = iv.hi_open;
    return out;
}

}  // namespace

FiniteSpace<Rational> space_from_json(const Json& j) {
    if (j.contains("line")) {
        const Json& b = j.at("line");
        std::vector<std::string> ids = b.at("points").get<std::vector<std::string>>();
        std::vector<Rational> coords;
        for (const auto& c : b.at("coords")) coords.push_back(rat_field(c));
        return FiniteSpace<Rational>::from_line(std::move(ids), std::move(coords),
                                                b.at("base").get<int>());
    }
    if (!j.contains("finite")) throw std::invalid_argument("space json needs 'finite' or 'line'");
    const Json& b = j.at("finite");
    std::vector<std::string> ids = b.at("points").get<std::vector<std::string>>();
    std::vector<std::vector<Rational>> d;
    for (const auto& row : b.at("dist")) {
        d.emplace_back();
        for (const auto& c : row) d.back().push_back(rat_field(c));
    }
    return FiniteSpace<Rational>::from_matrix(std::move(ids), std::move(d),
                                              b.at("base").get<int>());
}

bool is_tower_json(const Json& j) { return j.is_object() && j.contains("tower"); }

TowerSpace tower_from_json(const Json& j) {
    const Json& b = j.at("tower");
    const Rational ratio = rat_field(b.at("ratio"));
    const int depth = b.value("depth", 8);
    std::vector<Tower> towers;
    if (b.contains("towers")) {
        for (const auto& t : b.at("towers")) {
            Tower tw;
            tw.rank = t.at("rank").get<int>();
            tw.anchor = t.contains("anchor") ? rat_field(t.at("anchor")) : Rational(0);
            tw.scale = t.contains("scale") ? rat_field(t.at("scale")) : Rational(1);
            towers.push_back(std::move(tw));
        }
    } else {
        Tower tw;
        tw.rank = b.at("rank").get<int>();
        tw.anchor = b.contains("anchor") ? rat_field(b.at("anchor")) : Rational(0);
        tw.scale = b.contains("scale") ? rat_field(b.at("scale")) : Rational(1);
        towers.push_back(std::move(tw));
    }
    return TowerSpace(ratio, std::move(towers), depth);
}

Json tower_json(const TowerSpace& t) {
    Json body;
    body["ratio"] = scalar_str(t.ratio());
    body["depth"] = t.depth_hint();
    Json list = Json::array();
    for (const auto& tw : t.towers()) {
        Json one;
        one["rank"] = tw.rank;
        one["anchor"] = scalar_str(tw.anchor);
        one["scale"] = scalar_str(tw.scale);
        list.push_back(std::move(one));
    }
    body["towers"] = std::move(list);
    Json out;
    out["tower"] = std::move(body);
    return out;
}

Json certificate_json(const SeparatorCertificate& cert) {
    Json out;
    out["space"] = tower_json(cert.space);
    Json pair;
    pair["x"] = cert.space.point_id(cert.x);
    pair["y"] = cert.space.point_id(cert.y);
    pair["distance"] = scalar_str(cert.a);
    out["pair"] = std::move(pair);
    out["levels"] = cert.levels;
    out["slope_bound"] = scalar_str(cert.slope_bound);
    out["witness_delta"] = scalar_str(cert.witness_delta);

    Json plateaus = Json::array();
    for (const auto& p : cert.phi.plateaus()) {
        Json one;
        one["band"] = interval_json(p.band);
        one["value"] = scalar_str(p.value);
        one["level"] = p.level;
        plateaus.push_back(std::move(one));
    }
    out["plateaus"] = std::move(plateaus);

    Json trace = Json::array();
    for (const auto& lv : cert.trace) {
        Json one;
        one["level"] = lv.level;
        one["alpha"] = lv.alpha;
        Json cv = Json::array();
        for (const auto& v : lv.center_values) cv.push_back(scalar_str(v));
        one["center_values"] = std::move(cv);
        one["v"] = scalar_str(lv.v);
        one["half_width"] = scalar_str(lv.half_width);
        one["c_finite"] = lv.c_finite;
        one["c_empty"] = lv.c_empty;
        one["c_tail_count"] = lv.c_tail_count;
        Json cp = Json::array();
        for (const auto& v : lv.c_points) cp.push_back(scalar_str(v));
        one["c_points"] = std::move(cp);
        Json dp = Json::array();
        for (const auto& v : lv.d_points) dp.push_back(scalar_str(v));
        one["d_points"] = std::move(dp);
        trace.push_back(std::move(one));
    }
    out["trace"] = std::move(trace);
    out["h"] = function_json(cert.h);
    return out;
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace freelip
