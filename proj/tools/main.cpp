// command line front end; all work goes through the C API in rarenet/rarenet.h
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <rarenet/rarenet.h>

namespace {

using ordered_json = nlohmann::ordered_json;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CLI::ValidationError("--config", "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_command(const std::string& name, const ordered_json& cfg) {
    char* result = nullptr;
    const rn_status st = rn_run_command(name.c_str(), cfg.dump().c_str(), &result);
    if (st == RN_OK) {
        std::cout << result << "\n";
        rn_string_free(result);
        return 0;
    }
    std::cerr << "error: " << rn_last_error() << "\n";
    return static_cast<int>(st);
}

// builds one subcommand whose flags overlay the --config file contents;
// flags win key by key, nested objects (model, variant, seed) merge per field
struct SubBuilder {
    CLI::App* sub;
    std::shared_ptr<ordered_json> ov = std::make_shared<ordered_json>(ordered_json::object());
    std::shared_ptr<std::string> config_path = std::make_shared<std::string>();

    SubBuilder(CLI::App& app, const std::string& name, const std::string& desc) {
        sub = app.add_subcommand(name, desc);
        sub->add_option("--config", *config_path,
                        "JSON config file; explicit flags override its keys");
    }

    void num(const std::string& flag, const std::string& key, const std::string& desc) {
        auto o = ov;
        sub->add_option_function<double>(
            flag, [o, key](const double& v) { (*o)[key] = v; }, desc);
    }

    void integer(const std::string& flag, const std::string& key,
                 const std::string& desc) {
        auto o = ov;
        sub->add_option_function<long long>(
            flag, [o, key](const long long& v) { (*o)[key] = v; }, desc);
    }

    void str(const std::string& flag, const std::string& key, const std::string& desc) {
        auto o = ov;
        sub->add_option_function<std::string>(
            flag, [o, key](const std::string& v) { (*o)[key] = v; }, desc);
    }

    void integers(const std::string& flag, const std::string& key,
                  const std::string& desc) {
        auto o = ov;
        sub->add_option_function<std::vector<long long>>(
            flag, [o, key](const std::vector<long long>& v) { (*o)[key] = v; }, desc);
    }

    void strings(const std::string& flag, const std::string& key,
                 const std::string& desc) {
        auto o = ov;
        sub->add_option_function<std::vector<std::string>>(
            flag, [o, key](const std::vector<std::string>& v) { (*o)[key] = v; }, desc);
    }

    void model_flags() {
        auto o = ov;
        sub->add_option_function<std::string>(
            "--model",
            [o](const std::string& v) {
                (*o)["model"]["kind"] = (v == "beta") ? "beta_skeleton" : v;
            },
            "graph model kind: knn or beta_skeleton");
        sub->add_option_function<int>(
            "--dim", [o](const int& v) { (*o)["model"]["dim"] = v; },
            "ambient dimension");
        sub->add_option_function<int>(
            "--k", [o](const int& v) { (*o)["model"]["k"] = v; },
            "neighbor count for knn");
        sub->add_option_function<double>(
            "--beta", [o](const double& v) { (*o)["model"]["beta"] = v; },
            "lens parameter for beta_skeleton, >= 1");
    }

    void variant_flags() {
        auto o = ov;
        sub->add_option_function<std::string>(
            "--variant", [o](const std::string& v) { (*o)["variant"]["tag"] = v; },
            "score variant: dir, undir or bidir");
        sub->add_option_function<double>(
            "--alpha", [o](const double& v) { (*o)["variant"]["alpha"] = v; },
            "edge length exponent");
    }

    void seed_flags() {
        auto o = ov;
        sub->add_option_function<std::uint64_t>(
            "--seed", [o](const std::uint64_t& v) { (*o)["seed"]["root"] = v; },
            "root seed (required for randomized commands)");
        sub->add_option_function<std::uint64_t>(
            "--stream", [o](const std::uint64_t& v) { (*o)["seed"]["stream"] = v; },
            "seed stream index, default 0");
    }

    void finalize(const std::string& name, int* exit_code) {
        auto o = ov;
        auto cp = config_path;
        sub->callback([o, cp, name, exit_code] {
            ordered_json cfg = ordered_json::object();
            if (!cp->empty()) {
                cfg = ordered_json::parse(slurp(*cp));
                if (!cfg.is_object())
                    throw CLI::ValidationError("--config",
                                               "file must hold a JSON object");
            }
            cfg.update(*o, true);
            *exit_code = run_command(name, cfg);
        });
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spatial random network simulator and rate constant toolkit"};
    app.set_version_flag("--version", rn_version());
    app.require_subcommand(1);
    int exit_code = 0;

    SubBuilder sample(app, "sample", "draw a point process in a centered box");
    sample.integer("--dim", "dim", "ambient dimension");
    sample.num("--n", "n", "window side; the sampling box side is n + 2 margin");
    sample.num("--margin", "margin", "padding beyond the window on each side");
    sample.num("--intensity", "intensity", "Poisson intensity (default 1)");
    sample.integer("--count", "count", "fixed point count instead of Poisson");
    sample.seed_flags();
    sample.str("--out", "out", "points CSV path");
    sample.finalize("sample", &exit_code);

    SubBuilder graph(app, "graph", "build the directed edge set of a point file");
    graph.str("--points", "points", "points CSV path");
    graph.model_flags();
    graph.str("--out", "out", "edges CSV path");
    graph.finalize("graph", &exit_code);

    SubBuilder score(app, "score", "per node power weighted edge length scores");
    score.str("--points", "points", "points CSV path");
    score.model_flags();
    score.variant_flags();
    score.num("--n", "n", "window side for the normalized functional");
    score.str("--out", "out", "scores CSV path");
    score.finalize("score", &exit_code);

    SubBuilder mu(app, "mu", "estimate the mean score of a typical node");
    mu.model_flags();
    mu.variant_flags();
    mu.num("--calib-box-side", "calib_box_side", "sampling box side, default 12");
    mu.num("--margin", "margin", "distance kept between origin and boundary, default 4");
    mu.integer("--replicas", "replicas", "independent replicas");
    mu.seed_flags();
    mu.integer("--workers", "workers", "worker threads, default 1");
    mu.str("--out", "out", "optional JSON artifact path");
    mu.finalize("mu", &exit_code);

    SubBuilder tail(app, "tail", "estimate an upper tail probability of the score sum");
    tail.model_flags();
    tail.variant_flags();
    tail.num("--n", "n", "window side");
    tail.num("--margin", "margin", "sampling padding, default 3");
    tail.num("--r", "r", "tail offset: count a hit when H_n >= mu + r");
    tail.integer("--samples", "samples", "replica count");
    tail.num("--mu-override", "mu_override", "skip the pilot and use this mu");
    tail.integer("--pilot-samples", "pilot_samples", "pilot replicas for mu, default 4000");
    tail.integer("--hit-cap", "hit_cap", "cap on retained hit records, default 100000");
    tail.seed_flags();
    tail.integer("--workers", "workers", "worker threads, default 1");
    tail.str("--out", "out", "tail record JSON path");
    tail.str("--hits-csv", "hits_csv", "optional per hit CSV path");
    tail.finalize("tail", &exit_code);

    SubBuilder condense(app, "condense",
                        "share of the overshoot carried by the top m scores of each hit");
    condense.str("--record", "record", "tail record JSON path");
    condense.integers("--m", "m_list", "top score counts, default 1 2 4 8");
    condense.str("--out", "out", "optional JSON artifact path");
    condense.finalize("condense", &exit_code);

    SubBuilder rate_opt(app, "rate-opt",
                        "minimize influence zone volume over unit score configurations");
    rate_opt.model_flags();
    rate_opt.variant_flags();
    rate_opt.str("--objective", "objective", "literal or nng_reduced");
    rate_opt.integer("--restarts", "restarts", "annealing restarts, default 8");
    rate_opt.integer("--steps", "steps_per_restart", "steps per restart, default 20000");
    rate_opt.num("--initial-temp", "initial_temp", "starting temperature, default 0.5");
    rate_opt.num("--cooling", "cooling", "geometric cooling factor, default 0.9995");
    rate_opt.num("--jitter-scale", "jitter_scale", "move size relative to spacing");
    rate_opt.integer("--m-max", "m_max", "largest candidate point count, default 8");
    rate_opt.seed_flags();
    rate_opt.integer("--workers", "workers", "worker threads, default 1");
    rate_opt.num("--anneal-rel-tol", "anneal_rel_tol", "volume tolerance while annealing");
    rate_opt.num("--final-rel-tol", "final_rel_tol", "volume tolerance for the final pass");
    rate_opt.integer("--anneal-mc-samples", "anneal_mc_samples",
                     "MC samples per volume while annealing");
    rate_opt.integer("--final-mc-samples", "final_mc_samples",
                     "MC samples for the final volumes");
    rate_opt.num("--top1-limit", "top1_limit",
                 "cap on the largest phi score fraction, 1 disables");
    rate_opt.str("--out", "out", "result JSON path");
    rate_opt.finalize("rate-opt", &exit_code);

    SubBuilder rate_curve(app, "rate-curve",
                          "empirical against fitted rate over several tail records");
    rate_curve.strings("--record", "records", "tail record JSON paths");
    rate_curve.num("--inf-a", "inf_a", "optimized rate constant");
    rate_curve.str("--out", "out", "curve CSV path");
    rate_curve.str("--plot-out", "plot_out", "optional gnuplot script path");
    rate_curve.finalize("rate-curve", &exit_code);

    SubBuilder check(app, "check", "randomized battery for the model conditions");
    check.model_flags();
    check.seed_flags();
    check.integer("--trials", "trials", "trials per condition, 0 keeps defaults");
    check.integer("--workers", "workers", "worker threads, default 1");
    check.str("--out", "out", "optional JSON report path");
    check.finalize("check", &exit_code);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
