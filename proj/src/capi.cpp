#include "rarenet/rarenet.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "conditions.hpp"
#include "experiments.hpp"
#include "serialization.hpp"
#include "textio.hpp"

namespace {

using rarenet::ordered_json;

thread_local std::string g_last_error = "no error";

rn_status fail(rn_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p != nullptr) std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

template <typename Fn>
rn_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const nlohmann::json::exception& e) {
        return fail(RN_ERROR_CONFIG, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(RN_ERROR_CONFIG, e.what());
    } catch (const std::exception& e) {
        return fail(RN_ERROR_RUNTIME, e.what());
    }
}

ordered_json parse_config(const char* text) {
    if (text == nullptr) throw std::invalid_argument("config JSON is null");
    ordered_json j = ordered_json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("config JSON must be an object");
    return j;
}

void check_keys(const ordered_json& j, std::initializer_list<const char*> allowed) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (item.key() == a) known = true;
        if (!known)
            throw std::invalid_argument("unknown config key '" + item.key() + "'");
    }
}

const ordered_json& require(const ordered_json& j, const char* key) {
    if (!j.contains(key))
        throw std::invalid_argument(std::string("missing config key '") + key + "'");
    return j.at(key);
}

rarenet::PointConfig sample_from_config(const ordered_json& j) {
    const int dim = require(j, "dim").get<int>();
    const double n = require(j, "n").get<double>();
    const double margin = j.value("margin", 0.0);
    if (margin < 0.0) throw std::invalid_argument("margin must be >= 0");
    const rarenet::Seed seed = rarenet::seed_from_json(require(j, "seed"));
    const rarenet::Box box = rarenet::Box::cube(dim, n + 2.0 * margin);
    if (j.contains("count")) {
        if (j.contains("intensity"))
            throw std::invalid_argument("give either intensity or count, not both");
        return rarenet::sample_binomial(box, j.at("count").get<long long>(), seed);
    }
    return rarenet::sample_poisson(box, j.value("intensity", 1.0), seed);
}

// the echoed config describes the experiment; worker count is execution
// plumbing and would break byte-identical artifacts across thread counts
ordered_json audit_config(const ordered_json& cfg) {
    ordered_json j = cfg;
    j.erase("workers");
    return j;
}

std::string merge_run_config(const std::string& artifact_json, const ordered_json& cfg) {
    ordered_json j = ordered_json::parse(artifact_json);
    j["run_config"] = audit_config(cfg);
    return j.dump(2);
}

ordered_json cmd_sample(const ordered_json& cfg) {
    check_keys(cfg, {"dim", "n", "margin", "seed", "intensity", "count", "out"});
    const std::string out = require(cfg, "out").get<std::string>();
    const rarenet::PointConfig pts = sample_from_config(cfg);
    rarenet::write_points_csv(pts, out, cfg.dump());
    ordered_json res;
    res["command"] = "sample";
    res["points"] = pts.size();
    res["out"] = out;
    return res;
}

ordered_json cmd_graph(const ordered_json& cfg) {
    check_keys(cfg, {"points", "model", "out"});
    const rarenet::PointConfig pts =
        rarenet::read_points_csv(require(cfg, "points").get<std::string>());
    const rarenet::GraphModel model = rarenet::model_from_json(require(cfg, "model"));
    const rarenet::DirectedAdjacency adj = rarenet::build_adjacency(pts, model);
    const std::string out = require(cfg, "out").get<std::string>();
    rarenet::write_edges_csv(adj, out, cfg.dump());
    ordered_json res;
    res["command"] = "graph";
    res["nodes"] = adj.node_count();
    res["arcs"] = adj.arc_count();
    res["out"] = out;
    return res;
}

ordered_json cmd_score(const ordered_json& cfg) {
    check_keys(cfg, {"points", "model", "variant", "n", "out"});
    const rarenet::PointConfig pts =
        rarenet::read_points_csv(require(cfg, "points").get<std::string>());
    const rarenet::GraphModel model = rarenet::model_from_json(require(cfg, "model"));
    const rarenet::ScoreVariant variant =
        rarenet::variant_from_json(require(cfg, "variant"));
    const double n = require(cfg, "n").get<double>();
    const rarenet::Box window = rarenet::Box::cube(model.dim, n);
    const rarenet::DirectedAdjacency adj = rarenet::build_adjacency(pts, model);
    const rarenet::ScoreTable table = rarenet::build_score_table(adj, window, variant);
    const std::string out = require(cfg, "out").get<std::string>();
    rarenet::write_scores_csv(table, out, cfg.dump());
    ordered_json res;
    res["command"] = "score";
    res["window_nodes"] = table.node_index.size();
    res["hn"] = rarenet::functional_hn(adj, window, n, variant);
    res["out"] = out;
    return res;
}

ordered_json cmd_mu(const ordered_json& cfg) {
    check_keys(cfg, {"model", "variant", "calib_box_side", "margin", "replicas", "seed",
                     "workers", "out"});
    const rarenet::GraphModel model = rarenet::model_from_json(require(cfg, "model"));
    const rarenet::ScoreVariant variant =
        rarenet::variant_from_json(require(cfg, "variant"));
    const rarenet::MuEstimate est = rarenet::estimate_mu(
        model, variant, cfg.value("calib_box_side", 12.0), cfg.value("margin", 4.0),
        require(cfg, "replicas").get<long long>(),
        rarenet::seed_from_json(require(cfg, "seed")), cfg.value("workers", 1));
    ordered_json res;
    res["command"] = "mu";
    res["schema_version"] = 1;
    res["mu"] = est.mean;
    res["std_error"] = est.std_error;
    res["replicas"] = est.replicas;
    if (std::isfinite(est.radius_p999))
        res["radius_p999"] = est.radius_p999;
    else
        res["radius_p999"] = nullptr;
    res["margin_warning"] = est.margin_warning;
    if (cfg.contains("out")) {
        const std::string out = cfg.at("out").get<std::string>();
        rarenet::write_text_file(out, merge_run_config(res.dump(), cfg) + "\n");
        res["out"] = out;
    }
    return res;
}

rarenet::TailParams tail_params_from(const ordered_json& cfg) {
    rarenet::TailParams p;
    p.model = rarenet::model_from_json(require(cfg, "model"));
    p.variant = rarenet::variant_from_json(require(cfg, "variant"));
    p.n = require(cfg, "n").get<double>();
    p.margin = cfg.value("margin", 3.0);
    p.r = require(cfg, "r").get<double>();
    p.samples = require(cfg, "samples").get<long long>();
    if (cfg.contains("mu_override")) p.mu_override = cfg.at("mu_override").get<double>();
    p.pilot_samples = cfg.value("pilot_samples", p.pilot_samples);
    p.hit_cap = cfg.value("hit_cap", p.hit_cap);
    p.seed = rarenet::seed_from_json(require(cfg, "seed"));
    p.workers = cfg.value("workers", 1);
    return p;
}

ordered_json cmd_tail(const ordered_json& cfg) {
    check_keys(cfg, {"model", "variant", "n", "margin", "r", "samples", "mu_override",
                     "pilot_samples", "hit_cap", "seed", "workers", "out", "hits_csv"});
    const rarenet::TailParams params = tail_params_from(cfg);
    const rarenet::TailRunRecord rec = rarenet::tail_probability(params);
    const std::string out = require(cfg, "out").get<std::string>();
    rarenet::write_text_file(out, rec.to_json(audit_config(cfg).dump()) + "\n");
    if (cfg.contains("hits_csv"))
        rarenet::write_hits_csv(rec, cfg.at("hits_csv").get<std::string>(),
                                audit_config(cfg).dump());
    ordered_json res;
    res["command"] = "tail";
    res["samples"] = rec.samples;
    res["hits"] = rec.hits;
    res["p_hat"] = rec.p_hat;
    res["ci95"] = {rec.ci_lo, rec.ci_hi};
    res["mu_used"] = rec.mu_used;
    res["mu_source"] = rec.mu_source;
    res["out"] = out;
    return res;
}

ordered_json cmd_condense(const ordered_json& cfg) {
    check_keys(cfg, {"record", "m_list", "out"});
    const std::string record_path = require(cfg, "record").get<std::string>();
    const rarenet::TailRunRecord rec =
        rarenet::TailRunRecord::from_json(rarenet::read_text_file(record_path));
    std::vector<long long> m_list{1, 2, 4, 8};
    if (cfg.contains("m_list")) m_list = cfg.at("m_list").get<std::vector<long long>>();
    const auto summaries = rarenet::condensation_stats(rec, m_list);
    ordered_json arr = ordered_json::array();
    for (const auto& s : summaries) {
        ordered_json row;
        row["m"] = s.m;
        row["hits"] = s.fractions.size();
        auto put = [&](const char* key, double v) {
            if (std::isfinite(v))
                row[key] = v;
            else
                row[key] = nullptr;
        };
        put("q10", s.q10);
        put("q50", s.q50);
        put("q90", s.q90);
        row["fractions"] = s.fractions;
        arr.push_back(std::move(row));
    }
    ordered_json res;
    res["command"] = "condense";
    res["schema_version"] = 1;
    res["record"] = record_path;
    res["r"] = rec.r;
    res["n"] = rec.n;
    res["hits"] = rec.hits;
    res["summaries"] = arr;
    if (cfg.contains("out")) {
        const std::string out = cfg.at("out").get<std::string>();
        rarenet::write_text_file(out, merge_run_config(res.dump(), cfg) + "\n");
        res["out"] = out;
    }
    // the CLI prints the result line; drop the bulky payload there
    for (auto& row : res["summaries"]) row.erase("fractions");
    return res;
}

ordered_json cmd_rate_opt(const ordered_json& cfg) {
    check_keys(cfg, {"model", "variant", "objective", "restarts", "steps_per_restart",
                     "initial_temp", "cooling", "jitter_scale", "m_max", "seed", "workers",
                     "anneal_rel_tol", "final_rel_tol", "anneal_mc_samples",
                     "final_mc_samples", "top1_limit", "out"});
    const rarenet::GraphModel model = rarenet::model_from_json(require(cfg, "model"));
    const rarenet::ScoreVariant variant =
        rarenet::variant_from_json(require(cfg, "variant"));
    const rarenet::RateObjective objective =
        rarenet::objective_parse(require(cfg, "objective").get<std::string>());
    rarenet::AnnealParams params;
    params.restarts = cfg.value("restarts", params.restarts);
    params.steps_per_restart = cfg.value("steps_per_restart", params.steps_per_restart);
    params.initial_temp = cfg.value("initial_temp", params.initial_temp);
    params.cooling = cfg.value("cooling", params.cooling);
    params.jitter_scale = cfg.value("jitter_scale", params.jitter_scale);
    params.m_max = cfg.value("m_max", params.m_max);
    params.seed = rarenet::seed_from_json(require(cfg, "seed"));
    params.workers = cfg.value("workers", 1);
    params.anneal_rel_tol = cfg.value("anneal_rel_tol", params.anneal_rel_tol);
    params.final_rel_tol = cfg.value("final_rel_tol", params.final_rel_tol);
    params.anneal_mc_samples = cfg.value("anneal_mc_samples", params.anneal_mc_samples);
    params.final_mc_samples = cfg.value("final_mc_samples", params.final_mc_samples);
    params.top1_limit = cfg.value("top1_limit", params.top1_limit);
    const rarenet::OptResult result = rarenet::optimize_rate(model, variant, objective, params);
    const std::string out = require(cfg, "out").get<std::string>();
    rarenet::write_text_file(out, merge_run_config(result.to_json(), cfg) + "\n");
    ordered_json res;
    res["command"] = "rate-opt";
    res["objective"] = rarenet::objective_name(objective);
    res["best_volume"] = result.best.normalized_volume;
    res["psi_size"] = result.best.pair.psi.size();
    res["phi_size"] = result.best.pair.phi_count();
    res["out"] = out;
    return res;
}

ordered_json cmd_rate_curve(const ordered_json& cfg) {
    check_keys(cfg, {"records", "inf_a", "out", "plot_out"});
    std::vector<rarenet::TailRunRecord> records;
    for (const auto& p : require(cfg, "records"))
        records.push_back(rarenet::TailRunRecord::from_json(
            rarenet::read_text_file(p.get<std::string>())));
    const double inf_a = require(cfg, "inf_a").get<double>();
    const auto rows = rarenet::rate_curve(records, inf_a);
    const std::string out = require(cfg, "out").get<std::string>();
    rarenet::write_rate_curve_csv(rows, out, cfg.dump());
    if (cfg.contains("plot_out"))
        rarenet::write_text_file(cfg.at("plot_out").get<std::string>(),
                                 rarenet::rate_curve_plot_script(out));
    ordered_json res;
    res["command"] = "rate-curve";
    res["rows"] = rows.size();
    res["out"] = out;
    return res;
}

ordered_json cmd_check(const ordered_json& cfg) {
    check_keys(cfg, {"model", "seed", "trials", "workers", "out"});
    const rarenet::GraphModel model = rarenet::model_from_json(require(cfg, "model"));
    const auto reports = rarenet::run_condition_checks(
        model, rarenet::seed_from_json(require(cfg, "seed")), cfg.value("workers", 1),
        cfg.value("trials", 0LL));
    ordered_json arr = ordered_json::array();
    long long total_violations = 0;
    for (const auto& rep : reports) {
        arr.push_back(ordered_json::parse(rep.to_json()));
        total_violations += rep.violations;
    }
    ordered_json res;
    res["command"] = "check";
    res["schema_version"] = 1;
    res["conditions"] = reports.size();
    res["total_violations"] = total_violations;
    res["reports"] = arr;
    if (cfg.contains("out")) {
        const std::string out = cfg.at("out").get<std::string>();
        rarenet::write_text_file(out, merge_run_config(res.dump(), cfg) + "\n");
        res["out"] = out;
    }
    res.erase("reports");
    return res;
}

}  // namespace

extern "C" {

struct rn_points {
    rarenet::PointConfig cfg;
};

struct rn_graph {
    rarenet::DirectedAdjacency adj;
};

const char* rn_version(void) { return "1.0.0"; }

const char* rn_last_error(void) { return g_last_error.c_str(); }

void rn_string_free(char* s) { std::free(s); }

rn_status rn_points_sample(const char* config_json, rn_points** out) {
    if (out == nullptr) return fail(RN_ERROR_CONFIG, "null out pointer");
    return guarded([&] {
        const ordered_json cfg = parse_config(config_json);
        check_keys(cfg, {"dim", "n", "margin", "seed", "intensity", "count"});
        *out = new rn_points{sample_from_config(cfg)};
        return RN_OK;
    });
}

rn_status rn_points_from_csv(const char* path, rn_points** out) {
    if (out == nullptr || path == nullptr) return fail(RN_ERROR_CONFIG, "null argument");
    return guarded([&] {
        *out = new rn_points{rarenet::read_points_csv(path)};
        return RN_OK;
    });
}

rn_status rn_points_from_json(const char* points_json, rn_points** out) {
    if (out == nullptr || points_json == nullptr)
        return fail(RN_ERROR_CONFIG, "null argument");
    return guarded([&] {
        *out = new rn_points{
            rarenet::points_from_json(ordered_json::parse(points_json))};
        return RN_OK;
    });
}

rn_status rn_points_write_csv(const rn_points* pts, const char* path,
                              const char* audit_json) {
    if (pts == nullptr || path == nullptr) return fail(RN_ERROR_CONFIG, "null argument");
    return guarded([&] {
        rarenet::write_points_csv(pts->cfg, path,
                                  audit_json == nullptr ? "" : audit_json);
        return RN_OK;
    });
}

int rn_points_dim(const rn_points* pts) { return pts == nullptr ? 0 : pts->cfg.dim(); }

int64_t rn_points_size(const rn_points* pts) {
    return pts == nullptr ? 0 : pts->cfg.size();
}

rn_status rn_points_coord(const rn_points* pts, int64_t index, int axis, double* out) {
    if (pts == nullptr || out == nullptr) return fail(RN_ERROR_CONFIG, "null argument");
    if (index < 0 || index >= pts->cfg.size() || axis < 0 || axis >= pts->cfg.dim())
        return fail(RN_ERROR_CONFIG, "point index or axis out of range");
    *out = pts->cfg.point(index)[static_cast<std::size_t>(axis)];
    return RN_OK;
}

void rn_points_free(rn_points* pts) { delete pts; }

rn_status rn_graph_build(const rn_points* pts, const char* model_json, rn_graph** out) {
    if (pts == nullptr || model_json == nullptr || out == nullptr)
        return fail(RN_ERROR_CONFIG, "null argument");
    return guarded([&] {
        const rarenet::GraphModel model =
            rarenet::model_from_json(ordered_json::parse(model_json));
        *out = new rn_graph{rarenet::build_adjacency(pts->cfg, model)};
        return RN_OK;
    });
}

int64_t rn_graph_node_count(const rn_graph* g) {
    return g == nullptr ? 0 : g->adj.node_count();
}

int64_t rn_graph_arc_count(const rn_graph* g) {
    return g == nullptr ? 0 : g->adj.arc_count();
}

rn_status rn_graph_out_degree(const rn_graph* g, int64_t node, int64_t* out) {
    if (g == nullptr || out == nullptr) return fail(RN_ERROR_CONFIG, "null argument");
    if (node < 0 || node >= g->adj.node_count())
        return fail(RN_ERROR_CONFIG, "node out of range");
    *out = static_cast<int64_t>(g->adj.out(node).size());
    return RN_OK;
}

rn_status rn_graph_write_csv(const rn_graph* g, const char* path,
                             const char* audit_json) {
    if (g == nullptr || path == nullptr) return fail(RN_ERROR_CONFIG, "null argument");
    return guarded([&] {
        rarenet::write_edges_csv(g->adj, path, audit_json == nullptr ? "" : audit_json);
        return RN_OK;
    });
}

void rn_graph_free(rn_graph* g) { delete g; }

rn_status rn_run_command(const char* command, const char* config_json,
                         char** result_json) {
    if (command == nullptr || result_json == nullptr)
        return fail(RN_ERROR_CONFIG, "null argument");
    return guarded([&] {
        const ordered_json cfg = parse_config(config_json);
        const std::string name = command;
        ordered_json res;
        if (name == "sample")
            res = cmd_sample(cfg);
        else if (name == "graph")
            res = cmd_graph(cfg);
        else if (name == "score")
            res = cmd_score(cfg);
        else if (name == "mu")
            res = cmd_mu(cfg);
        else if (name == "tail")
            res = cmd_tail(cfg);
        else if (name == "condense")
            res = cmd_condense(cfg);
        else if (name == "rate-opt")
            res = cmd_rate_opt(cfg);
        else if (name == "rate-curve")
            res = cmd_rate_curve(cfg);
        else if (name == "check")
            res = cmd_check(cfg);
        else
            throw std::invalid_argument("unknown command '" + name + "'");
        *result_json = dup_string(res.dump());
        if (*result_json == nullptr) throw std::runtime_error("out of memory");
        return RN_OK;
    });
}

}  // extern "C"
