// Batch front door. Reads a JSON experiment config, runs one command, prints
// the canonical report to stdout and writes JSON/CSV artifacts to the output
// directory. Same config and seed give byte-identical outputs.
//
// Exit codes: 0 clean, 1 invariant violation in a computed report, 2 bad
// config or usage.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "freelip/decomposition.hpp"
#include "freelip/free_space.hpp"
#include "freelip/json_io.hpp"
#include "freelip/kalton.hpp"
#include "freelip/lipschitz.hpp"
#include "freelip/random_gen.hpp"
#include "freelip/separator.hpp"
#include "freelip/tower.hpp"
#include "suite.hpp"

namespace {

using freelip::Json;
using freelip::Rational;

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Settings {
    Json cfg;
    std::string config_path;
    std::filesystem::path out_dir;
    std::uint64_t seed = 0;
    bool rational = false;
    std::optional<int> depth;
};

const Json& field(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(std::string("missing field \"") + key + "\"");
    return *it;
}

template <class S>
S scalar_cfg(const Json& v) {
    const Rational r = v.is_string() ? freelip::parse_rational(v.get<std::string>())
                                     : freelip::rational_from_double(v.get<double>());
    return freelip::scalar_traits<S>::from_rational(r);
}

/// Tower descriptions are truncated (--depth, else config "depth", else the
/// tower's own hint); finite and line forms load as given.
struct LoadedSpace {
    freelip::SpacePtr<Rational> space;
    std::optional<freelip::TowerSpace> tower;
    int depth = 0;
};

LoadedSpace load_space(const Json& j, const Settings& st) {
    LoadedSpace out;
    if (freelip::is_tower_json(j)) {
        out.tower = freelip::tower_from_json(j);
        out.depth = st.depth.value_or(out.tower->depth_hint());
        out.space = out.tower->truncate(out.depth).space;
    } else {
        out.space =
            std::make_shared<freelip::FiniteSpace<Rational>>(freelip::space_from_json(j));
    }
    return out;
}

template <class S>
freelip::SpacePtr<S> cast_space(const freelip::SpacePtr<Rational>& sp) {
    if constexpr (freelip::scalar_traits<S>::exact) {
        return sp;
    } else {
        return std::make_shared<freelip::FiniteSpace<double>>(freelip::to_double_space(*sp));
    }
}

template <class S>
std::vector<int> indices_cfg(const Json& arr, const freelip::FiniteSpace<S>& sp) {
    if (!arr.is_array()) throw ConfigError("point list must be a JSON array of ids");
    std::vector<int> out;
    for (const auto& v : arr) {
        try {
            out.push_back(sp.index_of(v.get<std::string>()));
        } catch (const std::out_of_range& e) {
            throw ConfigError(e.what());
        }
    }
    return out;
}

void write_file(const Settings& st, const std::string& name, const std::string& bytes) {
    std::filesystem::create_directories(st.out_dir);
    const auto path = st.out_dir / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << bytes;
}

template <class S>
std::string ratio_csv(const std::vector<std::pair<std::string, S>>& log) {
    std::ostringstream csv;
    csv << "sample,ratio\n";
    for (const auto& [label, ratio] : log) csv << label << "," << freelip::scalar_str(ratio) << "\n";
    return csv.str();
}

// ---- commands ----

template <class S>
Json cmd_norm(const Settings& st, bool* violated) {
    const auto sp = cast_space<S>(load_space(field(st.cfg, "space"), st).space);
    const auto m = freelip::molecule_from_json<S>(field(st.cfg, "molecule"), sp);
    const auto det = freelip::kr_norm_detail(m);
    (void)violated;  // route disagreement throws before reaching here
    Json out;
    out["kr_norm"] = freelip::scalar_json(det.dual);
    out["attaining"] = freelip::function_json(freelip::attaining_function(m));
    return out;
}

template <class S>
Json cmd_opnorm(const Settings& st, bool* violated) {
    const auto sp = cast_space<S>(load_space(field(st.cfg, "space"), st).space);
    const Json& op = field(st.cfg, "operator");
    const std::string type = field(op, "type").get<std::string>();
    Json out;
    out["type"] = type;
    if (type == "kalton_s") {
        const freelip::ShellSystem<S> sys(sp);
        const int n = field(op, "N").get<int>();
        const S norm = freelip::operator_norm(freelip::kalton_S(sys, n));
        out["N"] = n;
        out["operator_norm"] = freelip::scalar_json(norm);
        if (norm > S(72)) *violated = true;
    } else if (type == "kalton_t") {
        const freelip::ShellSystem<S> sys(sp);
        const int n = field(op, "n").get<int>();
        out["n"] = n;
        out["operator_norm"] =
            freelip::scalar_json(freelip::operator_norm(freelip::kalton_T(sys, n)));
    } else if (type == "net") {
        const S mesh = scalar_cfg<S>(field(op, "mesh"));
        const auto ret = freelip::net_retraction(sp, mesh);
        out["mesh"] = freelip::scalar_json(mesh);
        out["rank"] = ret.rank;
        out["operator_norm"] = freelip::scalar_json(ret.norm);
    } else {
        throw ConfigError("unknown operator type \"" + type + "\"");
    }
    return out;
}

template <class S>
Json cmd_qdist(const Settings& st, bool* violated) {
    const auto sp = cast_space<S>(load_space(field(st.cfg, "space"), st).space);
    const auto a_set = indices_cfg<S>(field(st.cfg, "a_set"), *sp);
    if (std::find(a_set.begin(), a_set.end(), sp->base()) == a_set.end())
        throw ConfigError("a_set must contain the basepoint id");
    const auto m = freelip::molecule_from_json<S>(field(st.cfg, "molecule"), sp);

    const S lhs = freelip::quotient_distance(m, a_set);
    auto qsp = std::make_shared<freelip::FiniteSpace<S>>(freelip::quotient(*sp, a_set));
    std::vector<bool> in_a(sp->size(), false);
    for (int i : a_set) in_a[i] = true;
    freelip::Molecule<S> pm(qsp);
    for (const auto& [i, c] : m.coeffs())
        if (!in_a[i]) pm.add(qsp->index_of(sp->id(i)), c);
    const S rhs = freelip::kr_norm(pm);

    const S tol = freelip::scalar_traits<S>::exact ? S(0) : S(1e-9);
    if (freelip::abs_val<S>(lhs - rhs) > tol * std::max(S(1), freelip::abs_val<S>(lhs)))
        *violated = true;
    Json out;
    out["quotient_distance"] = freelip::scalar_json(lhs);
    out["quotient_norm"] = freelip::scalar_json(rhs);
    return out;
}

Json cmd_separate(const Settings& st, bool* violated) {
    const auto loaded = load_space(field(st.cfg, "space"), st);
    if (!loaded.tower) throw ConfigError("separate needs a tower space description");
    const auto& t = *loaded.tower;
    freelip::NodeRef x, y;
    try {
        x = t.parse_point(field(st.cfg, "x").get<std::string>());
        y = t.parse_point(field(st.cfg, "y").get<std::string>());
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad point address: ") + e.what());
    }
    const auto cert = freelip::separate(t, x, y);
    const auto chk = freelip::verify_certificate(cert, loaded.depth);
    if (!chk.ok()) *violated = true;
    Json out = freelip::certificate_json(cert);
    out["verified_depth"] = loaded.depth;
    out["verified"] = chk.ok();
    return out;
}

Json cmd_cb(const Settings& st, bool* violated) {
    (void)violated;
    const auto loaded = load_space(field(st.cfg, "space"), st);
    if (!loaded.tower) throw ConfigError("cb needs a tower space description");
    const auto& t = *loaded.tower;
    Json out;
    out["cb_rank"] = t.cb_rank();
    Json steps = Json::array();
    for (int k = 0; k <= t.cb_rank(); ++k) {
        const auto dk = t.derivative(k);
        Json row;
        row["step"] = k;
        row["space"] = freelip::tower_json(dk);
        row["bare"] = dk.bare();
        row["points_at_depth"] = dk.truncate(loaded.depth).space->size();
        steps.push_back(std::move(row));
    }
    out["derivatives"] = std::move(steps);
    return out;
}

template <class S>
Json cmd_kalton(const Settings& st, bool* violated) {
    const auto sp = cast_space<S>(load_space(field(st.cfg, "space"), st).space);
    if (sp->size() < 2) throw ConfigError("kalton needs a point besides the basepoint");
    const int n_max = st.cfg.contains("N") ? st.cfg.at("N").get<int>() : 4;
    if (n_max < 1) throw ConfigError("N must be at least 1");

    std::vector<S> meshes;
    if (st.cfg.contains("meshes"))
        for (const auto& v : st.cfg.at("meshes")) meshes.push_back(scalar_cfg<S>(v));
    else
        meshes = {S(1), S(S(1) / S(4)), S(S(1) / S(16))};
    for (const auto& m : meshes)
        if (m <= S(0)) throw ConfigError("meshes must be positive");

    std::vector<freelip::Molecule<S>> battery;
    std::vector<std::string> labels;
    if (st.cfg.contains("battery")) {
        int k = 0;
        for (const auto& mj : st.cfg.at("battery")) {
            battery.push_back(freelip::molecule_from_json<S>(mj, sp));
            labels.push_back("molecule#" + std::to_string(k++));
        }
    } else {
        freelip::RandomSource rng(st.seed);
        for (int k = 0; k < 3; ++k) {
            battery.push_back(freelip::random_molecule<S>(rng, sp, 4));
            labels.push_back("random#" + std::to_string(k));
        }
        int far = sp->base() == 0 ? 1 : 0;
        for (int i = 0; i < sp->size(); ++i)
            if (i != sp->base() && sp->dist(sp->base(), i) > sp->dist(sp->base(), far)) far = i;
        battery.push_back(freelip::Molecule<S>::delta(sp, far));
        labels.push_back("delta-far");
    }
    if (battery.empty()) throw ConfigError("battery is empty");

    std::ostringstream csv;
    csv << "N,mesh,rank,norm_S,norm_Q,molecule,error\n";
    Json cells = Json::array();
    for (int n = 1; n <= n_max; ++n)
        for (const auto& mesh : meshes) {
            const auto rep = freelip::bap_experiment(sp, n, mesh, battery);
            if (rep.norm_S > S(72)) *violated = true;
            Json cell;
            cell["N"] = rep.N;
            cell["mesh"] = freelip::scalar_json(rep.mesh);
            cell["rank"] = rep.rank;
            cell["norm_S"] = freelip::scalar_json(rep.norm_S);
            cell["norm_Q"] = freelip::scalar_json(rep.norm_Q);
            Json errs = Json::object();
            for (std::size_t k = 0; k < rep.errors.size(); ++k) {
                errs[labels[k]] = freelip::scalar_str(rep.errors[k]);
                csv << rep.N << "," << freelip::scalar_str(rep.mesh) << "," << rep.rank << ","
                    << freelip::scalar_str(rep.norm_S) << "," << freelip::scalar_str(rep.norm_Q)
                    << "," << labels[k] << "," << freelip::scalar_str(rep.errors[k]) << "\n";
            }
            cell["errors"] = std::move(errs);
            cells.push_back(std::move(cell));
        }
    write_file(st, "kalton.csv", csv.str());
    Json out;
    out["cells"] = std::move(cells);
    out["norm_S_bound"] = 72;
    return out;
}

template <class S>
Json cmd_decompose(const Settings& st, bool* violated) {
    const auto sp = cast_space<S>(load_space(field(st.cfg, "space"), st).space);
    freelip::SpacePartition<S> part;
    part.space = sp;
    for (const auto& ids : field(st.cfg, "parts")) part.parts.push_back(indices_cfg<S>(ids, *sp));
    freelip::validate_space_partition(part);
    const int samples = st.cfg.contains("samples") ? st.cfg.at("samples").get<int>() : 200;

    const auto sand = freelip::phi_sandwich_check(part, samples, st.seed);
    const auto l1 = freelip::l1_sum_check(part, samples, st.seed + 1);
    if (sand.upper_violations || sand.lower_violations || l1.triangle_violations ||
        l1.factor_violations)
        *violated = true;

    write_file(st, "decompose_sandwich.csv", ratio_csv(sand.ratio_log));
    write_file(st, "decompose_l1.csv", ratio_csv(l1.ratio_log));

    Json out;
    Json sj;
    sj["random_samples"] = sand.random_samples;
    sj["certificate_samples"] = sand.certificate_samples;
    sj["upper_violations"] = sand.upper_violations;
    sj["lower_violations"] = sand.lower_violations;
    sj["gap"] = freelip::scalar_json(sand.gap);
    sj["diameter"] = freelip::scalar_json(sand.diameter);
    sj["lower_bound"] = freelip::scalar_json(sand.lower_bound);
    sj["worst_ratio"] = freelip::scalar_json(sand.worst_ratio);
    sj["best_ratio"] = freelip::scalar_json(sand.best_ratio);
    sj["worst_witness"] = sand.worst_witness;
    out["sandwich"] = std::move(sj);
    Json lj;
    lj["samples"] = l1.samples;
    lj["triangle_violations"] = l1.triangle_violations;
    lj["factor_violations"] = l1.factor_violations;
    lj["factor_bound"] = freelip::scalar_json(l1.factor_bound);
    lj["worst_ratio"] = freelip::scalar_json(l1.worst_ratio);
    lj["worst_witness"] = l1.worst_witness;
    out["l1_sum"] = std::move(lj);
    return out;
}

template <class S>
Json cmd_quotient_check(const Settings& st, bool* violated) {
    const auto sp = cast_space<S>(load_space(field(st.cfg, "space"), st).space);
    const auto a_set = indices_cfg<S>(field(st.cfg, "a_set"), *sp);
    if (std::find(a_set.begin(), a_set.end(), sp->base()) == a_set.end())
        throw ConfigError("a_set must contain the basepoint id");
    const int samples = st.cfg.contains("samples") ? st.cfg.at("samples").get<int>() : 200;
    const auto rep = freelip::quotient_isometry_check(sp, a_set, samples, st.seed);
    if (rep.failures > 0) *violated = true;
    Json out;
    out["samples"] = rep.samples;
    out["failures"] = rep.failures;
    out["max_discrepancy"] = freelip::scalar_json(rep.max_discrepancy);
    out["worst_witness"] = rep.worst_witness;
    return out;
}

Json cmd_suite(const Settings& st, bool* violated) {
    const std::string name = field(st.cfg, "name").get<std::string>();
    if (name != "acceptance") throw ConfigError("unknown suite \"" + name + "\"");
    const auto rep = freelip::testing::run_acceptance_with_determinism(st.seed);
    bool all_ok = true;
    for (const auto& c : rep.criteria) {
        const bool ok = c.pass && c.within_budget();
        all_ok = all_ok && ok;
        std::fprintf(stderr, "criterion %d %-26s %s (%.1fs%s)\n", c.number, c.name.c_str(),
                     ok ? "PASS" : "FAIL", c.seconds, c.within_budget() ? "" : ", over budget");
    }
    if (!all_ok) *violated = true;
    return rep.json();
}

int run(const Settings& st) {
    const std::string cmd = field(st.cfg, "cmd").get<std::string>();
    bool violated = false;
    Json report;
    if (cmd == "norm")
        report = st.rational ? cmd_norm<Rational>(st, &violated) : cmd_norm<double>(st, &violated);
    else if (cmd == "opnorm")
        report =
            st.rational ? cmd_opnorm<Rational>(st, &violated) : cmd_opnorm<double>(st, &violated);
    else if (cmd == "qdist")
        report =
            st.rational ? cmd_qdist<Rational>(st, &violated) : cmd_qdist<double>(st, &violated);
    else if (cmd == "separate")
        report = cmd_separate(st, &violated);
    else if (cmd == "cb")
        report = cmd_cb(st, &violated);
    else if (cmd == "kalton")
        report =
            st.rational ? cmd_kalton<Rational>(st, &violated) : cmd_kalton<double>(st, &violated);
    else if (cmd == "decompose")
        report = st.rational ? cmd_decompose<Rational>(st, &violated)
                             : cmd_decompose<double>(st, &violated);
    else if (cmd == "quotient-check")
        report = st.rational ? cmd_quotient_check<Rational>(st, &violated)
                             : cmd_quotient_check<double>(st, &violated);
    else if (cmd == "suite")
        report = cmd_suite(st, &violated);
    else
        throw ConfigError("unknown cmd \"" + cmd + "\"");

    report["cmd"] = cmd;
    report["seed"] = st.seed;
    const std::string bytes = freelip::dump_canonical(report);
    write_file(st, cmd + ".json", bytes);
    std::fputs(bytes.c_str(), stdout);
    return violated ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"free space experiments over finite pointed metric spaces"};
    Settings st;
    std::string out_dir = "out";
    std::uint64_t seed_flag = 0;
    int depth_flag = 0;
    app.add_option("--config", st.config_path, "experiment config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory for reports");
    auto* seed_opt = app.add_option("--seed", seed_flag, "seed override (default from config)");
    app.add_flag("--rational", st.rational, "exact arithmetic mode");
    auto* depth_opt = app.add_option("--depth", depth_flag, "tower truncation depth override")
                          ->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);
    st.out_dir = out_dir;

    std::ifstream in(st.config_path);
    try {
        st.cfg = Json::parse(in);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error (%s): %s\n", st.config_path.c_str(), e.what());
        return 2;
    }
    try {
        if (st.cfg.contains("seed")) st.seed = st.cfg.at("seed").get<std::uint64_t>();
        if (seed_opt->count() > 0) st.seed = seed_flag;
        if (st.cfg.contains("depth")) st.depth = st.cfg.at("depth").get<int>();
        if (depth_opt->count() > 0) st.depth = depth_flag;
        return run(st);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error (%s): %s\n", st.config_path.c_str(), e.what());
        return 2;
    } catch (const Json::exception& e) {
        std::fprintf(stderr, "config error (%s): %s\n", st.config_path.c_str(), e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error (%s): %s\n", st.config_path.c_str(), e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "invariant violation: %s\n", e.what());
        return 1;
    }
}
