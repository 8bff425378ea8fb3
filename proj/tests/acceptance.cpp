// Acceptance gates for the toolkit: each criterion prints one PASS/FAIL line
// and the process exits with the number of failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>
#include <rarenet/rarenet.h>

#include "../src/conditions.hpp"
#include "../src/experiments.hpp"
#include "../src/serialization.hpp"

using namespace rarenet;
using nlohmann::ordered_json;

namespace {



int workers() {
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(8u, std::max(1u, hw)));
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(5);
    ss << v;
    return ss.str();
}

const GraphModel kNng = GraphModel::knn_model(2, 1);
const ScoreVariant kDir15{ScoreTag::dir, 15.0};

// ---------------------------------------------------------------- criterion 1

bool criterion_1(std::string& d) {
    long long mismatches = 0;
    long long total_points = 0;
    for (int i = 0; i < 200; ++i) {
        GraphModel model;
        if (i % 5 < 3) {
            model = GraphModel::knn_model((i / 3) % 3 + 1, i % 3 + 1);
        } else {
            model = GraphModel::beta_model(i % 2 == 0 ? 1.2 : 2.0);
        }
        long long count = 3 + (i * 37) % 298;
        if (count < model.k + 1) count = model.k + 1;
        const double side = std::max(
            2.0, std::pow(static_cast<double>(count), 1.0 / model.dim));
        const PointConfig pts = sample_binomial(Box::cube(model.dim, side), count,
                                                Seed{101, static_cast<std::uint64_t>(i)});
        total_points += pts.size();
        const DirectedAdjacency fast = build_adjacency(pts, model);
        const DirectedAdjacency brute = build_adjacency_brute(pts, model);
        if (fast.offsets != brute.offsets || fast.targets != brute.targets) ++mismatches;
    }
    d = "configs=200 points=" + std::to_string(total_points) +
        " mismatches=" + std::to_string(mismatches);
    return mismatches == 0;
}

// ---------------------------------------------------------------- criterion 2

bool criterion_2(std::string& d) {
    double worst_identity = 0.0;
    double worst_scaling = 0.0;
    for (int i = 0; i < 100; ++i) {
        GraphModel model;
        if (i % 2 == 0) {
            model = GraphModel::knn_model(i % 4 < 2 ? 1 : 2, i % 3 + 1);
        } else {
            model = GraphModel::beta_model(i % 4 < 2 ? 1.2 : 2.0);
        }
        const double alpha = i % 3 == 0 ? 3.0 : 15.0;
        const long long count = 20 + (i * 7) % 60;
        const double side = std::max(
            2.0, std::pow(static_cast<double>(count), 1.0 / model.dim));
        const PointConfig pts = sample_binomial(Box::cube(model.dim, side), count,
                                                Seed{202, static_cast<std::uint64_t>(i)});
        const DirectedAdjacency adj = build_adjacency(pts, model);
        const ScoreVariant dir{ScoreTag::dir, alpha};
        const ScoreVariant undir{ScoreTag::undir, alpha};
        const ScoreVariant bidir{ScoreTag::bidir, alpha};
        for (long long x = 0; x < pts.size(); ++x) {
            const double sd = score_node(adj, x, dir);
            const double su = score_node(adj, x, undir);
            const double sb = score_node(adj, x, bidir);
            worst_identity = std::max(
                worst_identity, std::abs(sd - (su + sb)) / std::max(1.0, std::abs(sd)));
        }
        for (double tau : {0.5, 2.0, 10.0}) {
            const DirectedAdjacency scaled = build_adjacency(pts.scaled(tau), model);
            const double factor = std::pow(tau, alpha);
            for (long long x = 0; x < pts.size(); ++x) {
                const double base = score_node(adj, x, dir);
                if (base == 0.0) continue;
                const double moved = score_node(scaled, x, dir);
                worst_scaling =
                    std::max(worst_scaling, std::abs(moved / (factor * base) - 1.0));
            }
        }
    }
    d = "identity_rel=" + fmt(worst_identity) + " scaling_rel=" + fmt(worst_scaling);
    return worst_identity <= 1e-12 && worst_scaling <= 1e-9;
}

// ---------------------------------------------------------------- criterion 3

bool criterion_3(std::string& d) {
    bool ok = true;
    std::ostringstream ss;
    for (int k = 1; k <= 3; ++k) {
        const ConditionReport rep = check_long_edges(
            GraphModel::knn_model(2, k), 500, Seed{303, static_cast<std::uint64_t>(k)},
            workers());
        ss << "fin2_k" << k << "=" << rep.worst_observed << "/" << rep.bound_claimed
           << " ";
        if (rep.violations != 0) ok = false;
    }
    for (double beta : {1.2, 2.0}) {
        const double got = tangent_crossing_ratio(beta);
        const double want = std::tan(std::acos(1.0 / beta));
        ss << "tangency_b" << beta << "_err=" << fmt(std::abs(got - want)) << " ";
        if (!(std::abs(got - want) <= 1e-6)) ok = false;
        const ConditionReport sep = check_edge_triangle_separation(
            beta, 200, Seed{304, static_cast<std::uint64_t>(beta * 10)});
        ss << "separation_b" << beta << "_violations=" << sep.violations << " ";
        if (sep.violations != 0) ok = false;
    }
    d = ss.str();
    return ok;
}

// ---------------------------------------------------------------- criterion 4

double mu_by_simpson(double alpha) {
    // mean of D_1^alpha under a unit planar Poisson process: the distance
    // tail exp(-pi s^2) gives alpha * integral_0^inf s^{alpha-1} exp(-pi s^2)
    const double hi = 8.0;
    const long long steps = 400000;
    const double h = hi / static_cast<double>(steps);
    auto f = [&](double s) { return std::pow(s, alpha - 1.0) * std::exp(-kPi * s * s); };
    double acc = f(0.0) + f(hi);
    for (long long i = 1; i < steps; ++i)
        acc += f(h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
    return alpha * acc * h / 3.0;
}

bool criterion_4(std::string& d) {
    bool ok = true;
    std::ostringstream ss;
    for (double alpha : {3.0, 15.0}) {
        const double closed = mu_closed_form_nng_dir(2, alpha);
        const double simpson = mu_by_simpson(alpha);
        if (!(std::abs(simpson - closed) / closed <= 1e-8)) {
            ss << "oracle_disagreement_alpha" << alpha << " ";
            ok = false;
        }
        const MuEstimate est =
            estimate_mu(kNng, ScoreVariant{ScoreTag::dir, alpha}, 12.0, 4.0, 100000,
                        Seed{404, static_cast<std::uint64_t>(alpha)}, workers());
        const double z = std::abs(est.mean - closed) / est.std_error;
        ss << "alpha" << alpha << ": mu_hat=" << fmt(est.mean) << " closed="
           << fmt(closed) << " z=" << fmt(z) << " ";
        if (!(z <= 3.0)) ok = false;
    }
    d = ss.str();
    return ok;
}

// ---------------------------------------------------------------- criterion 5

ConfigPair random_valid_pair(const GraphModel& model, long long m, Seed seed) {
    Rng rng(seed);
    const Box box = Box::cube(model.dim, 4.0);
    std::vector<double> p(model.dim);
    for (int attempt = 0; attempt < 500; ++attempt) {
        PointConfig psi = PointConfig::empty(model.dim);
        while (psi.size() < m) {
            rng.point_in_box(box.lower, box.upper, p);
            if (!psi.contains_point(p)) psi.append(p);
        }
        ConfigPair pair;
        pair.psi = std::move(psi);
        pair.in_phi.assign(static_cast<std::size_t>(m), 0);
        pair.in_phi[0] = 1;
        if (m > 3 && rng.u01() < 0.5) pair.in_phi[1] = 1;
        pair.model = model;
        pair.variant = kDir15;
        try {
            pair.validate();
            if (phi_score_sum(pair) > 0.0) return pair;
        } catch (const std::invalid_argument&) {
        }
    }
    throw std::runtime_error("no valid random pair after 500 attempts");
}

bool criterion_5(std::string& d) {
    std::vector<ConfigPair> pairs;
    for (int i = 0; i < 8; ++i)
        pairs.push_back(random_valid_pair(kNng, 3 + i % 4,
                                          Seed{505, static_cast<std::uint64_t>(i)}));
    for (int i = 0; i < 6; ++i)
        pairs.push_back(random_valid_pair(GraphModel::knn_model(2, 2), 4 + i % 3,
                                          Seed{515, static_cast<std::uint64_t>(i)}));
    for (int i = 0; i < 6; ++i)
        pairs.push_back(random_valid_pair(GraphModel::beta_model(2.0), 3 + i % 4,
                                          Seed{525, static_cast<std::uint64_t>(i)}));

    bool ok = true;
    double worst_gap = 0.0;
    long long probe_mismatches = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const ConfigPair& pair = pairs[i];
        InfluenceParams quad_p;
        quad_p.method = InfluenceMethod::quadrature;
        quad_p.quad_rel_tol = 1e-3;
        const InfluenceEstimate quad = influence_volume(pair, quad_p);
        InfluenceParams mc_p;
        mc_p.method = InfluenceMethod::monte_carlo;
        mc_p.mc_samples = 200000;
        mc_p.seed = Seed{545, static_cast<std::uint64_t>(i)};
        mc_p.workers = workers();
        const InfluenceEstimate mc = influence_volume(pair, mc_p);
        const double gap = std::abs(quad.volume.value - mc.volume.value);
        const double tol = 3.0 * mc.volume.std_error + 0.5 * quad.volume.bracket;
        worst_gap = std::max(worst_gap, tol > 0.0 ? gap / tol : gap);
        if (!(gap <= tol)) ok = false;
    }

    // pointwise identity of the k = 1 zone with the union of balls over the
    // protected nodes, probed uniformly over the certified bounding box
    for (int i = 0; i < 8; ++i) {
        const ConfigPair& pair = pairs[static_cast<std::size_t>(i)];
        const DirectedAdjacency adj = build_adjacency(pair.psi, pair.model);
        const std::vector<long long> prot = protected_nodes(pair, adj);
        const Box bounding = influence_bounding(pair);
        Rng rng(Seed{565, static_cast<std::uint64_t>(i)});
        std::vector<double> y(2);
        for (int probe = 0; probe < 10000; ++probe) {
            rng.point_in_box(bounding.lower, bounding.upper, y);
            bool in_union = false;
            for (long long node : prot) {
                if (dist(pair.psi.point(node), std::span<const double>(y)) <
                    knn_distance(pair.psi, node, 1)) {
                    in_union = true;
                    break;
                }
            }
            if (in_influence_zone_brute(pair, y) != in_union) ++probe_mismatches;
            if (in_influence_zone(pair, y) != in_union) ++probe_mismatches;
        }
    }
    if (probe_mismatches != 0) ok = false;
    d = "pairs=20 worst_gap_over_tol=" + fmt(worst_gap) +
        " probe_mismatches=" + std::to_string(probe_mismatches);
    return ok;
}

// ---------------------------------------------------------------- criterion 6

// single linkage at the given radius; returns cluster centroids
std::vector<std::vector<double>> cluster_centroids(const PointConfig& pts,
                                                   double radius) {
    const long long n = pts.size();
    std::vector<long long> comp(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) comp[i] = i;
    bool merged = true;
    while (merged) {
        merged = false;
        for (long long i = 0; i < n; ++i)
            for (long long j = i + 1; j < n; ++j)
                if (comp[i] != comp[j] && dist(pts.point(i), pts.point(j)) <= radius) {
                    const long long from = comp[j], to = comp[i];
                    for (long long t = 0; t < n; ++t)
                        if (comp[t] == from) comp[t] = to;
                    merged = true;
                }
    }
    std::vector<std::vector<double>> centroids;
    std::vector<long long> seen;
    for (long long i = 0; i < n; ++i) {
        if (std::find(seen.begin(), seen.end(), comp[i]) != seen.end()) continue;
        seen.push_back(comp[i]);
        std::vector<double> c(static_cast<std::size_t>(pts.dim()), 0.0);
        long long count = 0;
        for (long long j = 0; j < n; ++j)
            if (comp[j] == comp[i]) {
                for (int a = 0; a < pts.dim(); ++a) c[a] += pts.point(j)[a];
                ++count;
            }
        for (double& v : c) v /= static_cast<double>(count);
        centroids.push_back(std::move(c));
    }
    return centroids;
}

AnnealParams acceptance_anneal(Seed seed) {
    AnnealParams p;
    p.restarts = 32;
    p.steps_per_restart = 20000;
    p.anneal_mc_samples = 20000;
    p.final_mc_samples = 2000000;
    p.anneal_rel_tol = 1e-2;
    p.final_rel_tol = 1e-3;
    p.m_max = 8;
    p.seed = seed;
    p.workers = workers();
    return p;
}

bool criterion_6(std::string& d) {
    bool ok = true;
    std::ostringstream ss;
    const double floor = positivity_floor(kNng);

    const OptResult reduced =
        optimize_rate(kNng, kDir15, RateObjective::nng_reduced,
                      acceptance_anneal(Seed{606, 0}));
    ss << "reduced=" << fmt(reduced.best.normalized_volume) << " ";
    if (!(std::abs(reduced.best.normalized_volume - kPi) <= 0.05 * kPi)) ok = false;
    const auto centroids = cluster_centroids(reduced.best.pair.psi, 0.05);
    ss << "clusters=" << centroids.size() << " ";
    if (centroids.size() != 2) {
        ok = false;
    } else {
        const double sep = dist(centroids[0], centroids[1]);
        ss << "cluster_sep=" << fmt(sep) << " ";
        if (!(sep >= 0.95 && sep <= 1.05)) ok = false;
    }
    if (!(reduced.min_evaluated >= floor)) ok = false;

    const OptResult literal =
        optimize_rate(kNng, kDir15, RateObjective::literal,
                      acceptance_anneal(Seed{607, 0}));
    ss << "literal=" << fmt(literal.best.normalized_volume) << " ";
    if (!(std::abs(literal.best.normalized_volume - kPi) <= 0.10 * kPi)) ok = false;
    if (!(literal.min_evaluated >= floor)) ok = false;

    // the literal optimum needs a satellite shrinking the out-neighbor's ball
    const ConfigPair& lit = literal.best.pair;
    ss << "literal_psi=" << lit.psi.size() << " phi=" << lit.phi_count() << " ";
    if (lit.phi_count() != 1 || lit.psi.size() < 3) {
        ok = false;
    } else {
        const DirectedAdjacency adj = build_adjacency(lit.psi, lit.model);
        const long long hub = adj.out(lit.phi_indices()[0])[0];
        double nearest = std::numeric_limits<double>::infinity();
        for (long long i = 0; i < lit.psi.size(); ++i)
            if (i != hub && !lit.in_phi[static_cast<std::size_t>(i)])
                nearest = std::min(nearest, dist(lit.psi.point(i), lit.psi.point(hub)));
        ss << "satellite_dist=" << fmt(nearest) << " ";
        if (!(nearest <= 0.5)) ok = false;
    }

    // independent witness for the literal gate: an explicit satellite pair
    ConfigPair witness;
    witness.psi = PointConfig(2, {0.0, 0.0, 1.0, 0.0, 1.0, 0.05});
    witness.in_phi = {1, 0, 0};
    witness.model = kNng;
    witness.variant = kDir15;
    Candidate wc = normalize_pair(witness);
    evaluate_candidate(wc, RateObjective::literal, 1e-4, 2000000, Seed{608, 0});
    ss << "witness=" << fmt(wc.normalized_volume) << " ";
    if (!(std::abs(wc.normalized_volume - kPi) <= 0.10 * kPi)) ok = false;

    ss << "min_evaluated=" << fmt(std::min(reduced.min_evaluated, literal.min_evaluated))
       << " floor=" << fmt(floor);
    d = ss.str();
    return ok;
}

// ---------------------------------------------------------------- criterion 7

TailParams desk_tail(double r, Seed seed) {
    TailParams p;
    p.model = kNng;
    p.variant = kDir15;
    p.n = 8.0;
    p.margin = 4.0;
    p.r = r;
    p.samples = 1000000;
    p.seed = seed;
    p.workers = workers();
    return p;
}

bool criterion_7(std::string& d) {
    bool ok = true;
    std::ostringstream ss;
    const TailRunRecord rec = tail_probability(desk_tail(200.0, Seed{707, 0}));
    ss << "p_hat=" << fmt(rec.p_hat) << " hits=" << rec.hits << " ";
    if (!(rec.p_hat >= 1e-4 && rec.p_hat <= 1e-2)) ok = false;
    if (rec.hits < 100) ok = false;
    const auto stats = condensation_stats(rec, {1, 8});
    const double med1 = stats[0].q50;
    const double med8 = stats[1].q50;
    ss << "median_top1=" << fmt(med1) << " median_top8=" << fmt(med8) << " ";
    if (!(med1 > 0.7 && med1 < 1.3)) {
        ss << "median_top1_outside(0.7,1.3) ";
        ok = false;
    }
    const double gap = (med8 - med1) / med1;
    ss << "m8_gap=" << fmt(100.0 * gap) << "% ";
    if (!(gap < 0.15)) ok = false;
    d = ss.str();
    return ok;
}

// ---------------------------------------------------------------- criterion 8

bool criterion_8(std::string& d) {
    bool ok = true;
    std::ostringstream ss;
    std::vector<TailRunRecord> records;
    for (double r : {150.0, 300.0, 600.0}) {
        records.push_back(
            tail_probability(desk_tail(r, Seed{808, static_cast<std::uint64_t>(r)})));
        const TailRunRecord& rec = records.back();
        ss << "r" << r << ":hits=" << rec.hits << " ";
        if (rec.hits < 100) ok = false;
    }
    const auto rows = rate_curve(records, kPi);
    double prev = -1.0;
    for (const RateCurveRow& row : rows) {
        if (!row.usable) {
            ok = false;
            continue;
        }
        const double ratio = row.empirical / row.theoretical;
        ss << "r" << row.r << ":emp=" << fmt(row.empirical) << " theo="
           << fmt(row.theoretical) << " ratio=" << fmt(ratio) << " ";
        if (!(ratio >= 0.5 && ratio <= 2.0)) ok = false;
        if (!(row.empirical > prev)) ok = false;
        prev = row.empirical;
    }
    d = ss.str();
    return ok;
}

// ---------------------------------------------------------------- criterion 9

std::string run_via_capi(const char* command, const ordered_json& cfg) {
    char* result = nullptr;
    const rn_status st = rn_run_command(command, cfg.dump().c_str(), &result);
    if (st != RN_OK)
        throw std::runtime_error(std::string(command) + ": " + rn_last_error());
    std::string text(result);
    rn_string_free(result);
    return text;
}

std::string file_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in.good()) throw std::runtime_error("missing artifact " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool criterion_9(std::string& d) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "rarenet_acceptance9";
    fs::create_directories(dir);
    const ordered_json model = {{"kind", "knn"}, {"dim", 2}, {"k", 1}};
    const ordered_json variant = {{"tag", "dir"}, {"alpha", 15.0}};
    const std::vector<std::string> names = {"mu.json",   "tail30.json", "hits30.csv",
                                            "tail10.json", "cond.json", "opt.json",
                                            "curve.csv", "curve.gp"};

    // reduced-scale reruns of the artifact pipelines; determinism does not
    // depend on the sample counts, so the full budgets are not repeated here
    auto run_leg = [&](int leg_workers) {
        ordered_json mu = {{"model", model},       {"variant", variant},
                           {"calib_box_side", 8.0}, {"margin", 2.0},
                           {"replicas", 2000},      {"seed", {{"root", 4141}}},
                           {"workers", leg_workers}, {"out", (dir / "mu.json").string()}};
        run_via_capi("mu", mu);
        ordered_json tail30 = {{"model", model},
                               {"variant", variant},
                               {"n", 6.0},
                               {"margin", 3.0},
                               {"r", 30.0},
                               {"samples", 20000},
                               {"seed", {{"root", 4242}}},
                               {"workers", leg_workers},
                               {"out", (dir / "tail30.json").string()},
                               {"hits_csv", (dir / "hits30.csv").string()}};
        run_via_capi("tail", tail30);
        ordered_json tail10 = {{"model", model},
                               {"variant", variant},
                               {"n", 6.0},
                               {"margin", 3.0},
                               {"r", 10.0},
                               {"samples", 20000},
                               {"seed", {{"root", 4242}}},
                               {"workers", leg_workers},
                               {"out", (dir / "tail10.json").string()}};
        run_via_capi("tail", tail10);
        ordered_json cond = {{"record", (dir / "tail30.json").string()},
                             {"m_list", {1, 2, 4, 8}},
                             {"out", (dir / "cond.json").string()}};
        run_via_capi("condense", cond);
        ordered_json opt = {{"model", model},
                            {"variant", variant},
                            {"objective", "nng_reduced"},
                            {"restarts", 4},
                            {"steps_per_restart", 400},
                            {"anneal_mc_samples", 4000},
                            {"final_mc_samples", 40000},
                            {"m_max", 6},
                            {"seed", {{"root", 4343}}},
                            {"workers", leg_workers},
                            {"out", (dir / "opt.json").string()}};
        run_via_capi("rate-opt", opt);
        ordered_json curve = {
            {"records", {(dir / "tail10.json").string(), (dir / "tail30.json").string()}},
            {"inf_a", kPi},
            {"out", (dir / "curve.csv").string()},
            {"plot_out", (dir / "curve.gp").string()}};
        run_via_capi("rate-curve", curve);
        std::map<std::string, std::string> bytes;
        for (const std::string& name : names) bytes[name] = file_bytes(dir / name);
        return bytes;
    };

    const auto leg_a = run_leg(8);
    const auto leg_b = run_leg(8);
    const auto leg_c = run_leg(1);
    bool ok = true;
    std::string bad;
    for (const std::string& name : names) {
        if (leg_a.at(name) != leg_b.at(name)) {
            ok = false;
            bad += " rerun:" + name;
        }
        if (leg_a.at(name) != leg_c.at(name)) {
            ok = false;
            bad += " workers:" + name;
        }
    }
    d = "artifacts=" + std::to_string(names.size()) +
        " legs=3 (repeat x2 at 8 workers, once at 1 worker, reduced scale)" + bad;
    return ok;
}

bool run_criterion(int id, std::string& d) {
    switch (id) {
        case 1: return criterion_1(d);
        case 2: return criterion_2(d);
        case 3: return criterion_3(d);
        case 4: return criterion_4(d);
        case 5: return criterion_5(d);
        case 6: return criterion_6(d);
        case 7: return criterion_7(d);
        case 8: return criterion_8(d);
        case 9: return criterion_9(d);
        default: throw std::invalid_argument("unknown criterion " + std::to_string(id));
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7, 8, 9};

    int failures = 0;
    for (int id : which) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = run_criterion(id, detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        std::printf("criterion %d %s %s [%.1fs]\n", id, ok ? "PASS" : "FAIL",
                    detail.c_str(), secs);
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures;
}
