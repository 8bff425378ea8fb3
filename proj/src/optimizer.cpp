#include "optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "conditions.hpp"
#include "parallel.hpp"
#include "serialization.hpp"

namespace rarenet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

enum class Move { jitter, add_satellite, remove_point, toggle_phi };

// restart modes cycle: free phi mask, then forced #phi = 1, then #phi = 2
int restart_mode(long long restart) { return static_cast<int>(restart % 3); }

Move pick_move(const AnnealParams& params, Rng& rng) {
    const double u = rng.u01();
    double acc = 0.0;
    for (int m = 0; m < 4; ++m) {
        acc += params.move_mix[static_cast<std::size_t>(m)];
        if (u <= acc) return static_cast<Move>(m);
    }
    return Move::jitter;
}

ConfigPair random_pair(const GraphModel& model, const ScoreVariant& variant, Rng& rng,
                       int mode, long long m_max) {
    const long long floor_m = std::max<long long>(c_inf_minimum(model), mode == 0 ? 1 : mode);
    const long long ceil_m = std::max(floor_m, std::min(m_max, floor_m + 2));
    const long long m = floor_m + static_cast<long long>(rng.below(
                                      static_cast<std::uint64_t>(ceil_m - floor_m + 1)));
    const Box box = Box::cube(model.dim, 2.0);
    PointConfig psi = PointConfig::empty(model.dim);
    std::vector<double> p(model.dim);
    for (long long i = 0; i < m; ++i) {
        rng.point_in_box(box.lower, box.upper, p);
        if (psi.contains_point(p)) {
            --i;
            continue;
        }
        psi.append(p);
    }
    std::vector<char> mask(static_cast<std::size_t>(m), 0);
    if (mode == 0) {
        bool any = false;
        for (auto& f : mask) {
            f = rng.u01() < 0.5 ? 1 : 0;
            any = any || f;
        }
        if (!any) mask[rng.below(static_cast<std::uint64_t>(m))] = 1;
    } else {
        while (std::count(mask.begin(), mask.end(), 1) < mode)
            mask[rng.below(static_cast<std::uint64_t>(m))] = 1;
    }
    ConfigPair pair;
    pair.psi = std::move(psi);
    pair.in_phi = std::move(mask);
    pair.model = model;
    pair.variant = variant;
    return pair;
}

// returns false when the move proposes nothing new
bool propose(const ConfigPair& cur, const AnnealParams& params, int mode, Rng& rng,
             ConfigPair& out) {
    const long long n = cur.psi.size();
    const int dim = cur.psi.dim();
    Move move = pick_move(params, rng);
    if (move == Move::add_satellite && (n >= params.m_max || n < 2)) move = Move::jitter;
    if (move == Move::remove_point) {
        bool removable = false;
        for (std::size_t i = 0; i < cur.in_phi.size(); ++i)
            if (!cur.in_phi[i]) removable = true;
        if (!removable || n <= c_inf_minimum(cur.model) ||
            (mode == 2 && n <= 2))
            move = Move::jitter;
    }

    out = cur;
    std::vector<double> shift(dim);
    switch (move) {
        case Move::jitter: {
            const long long idx = static_cast<long long>(
                rng.below(static_cast<std::uint64_t>(n)));
            rng.point_in_ball(params.jitter_scale, shift);
            std::vector<double> coords = cur.psi.coords();
            for (int j = 0; j < dim; ++j) coords[idx * dim + j] += shift[j];
            out.psi = PointConfig(dim, std::move(coords));
            return true;
        }
        case Move::add_satellite: {
            const long long idx = static_cast<long long>(
                rng.below(static_cast<std::uint64_t>(n)));
            const double local = knn_distance(cur.psi, idx, 1);
            rng.point_in_ball(0.05 * local, shift);
            std::vector<double> p(cur.psi.point(idx).begin(), cur.psi.point(idx).end());
            for (int j = 0; j < dim; ++j) p[j] += shift[j];
            if (cur.psi.contains_point(p)) return false;
            out.psi = cur.psi.with(p);
            out.in_phi.push_back(0);
            return true;
        }
        case Move::remove_point: {
            std::vector<long long> victims;
            for (std::size_t i = 0; i < cur.in_phi.size(); ++i)
                if (!cur.in_phi[i]) victims.push_back(static_cast<long long>(i));
            const long long idx = victims[rng.below(victims.size())];
            out.psi = cur.psi.without(idx);
            out.in_phi.erase(out.in_phi.begin() + idx);
            return true;
        }
        case Move::toggle_phi: {
            if (mode == 0) {
                const long long idx = static_cast<long long>(
                    rng.below(static_cast<std::uint64_t>(n)));
                if (cur.in_phi[idx] && cur.phi_count() == 1) return false;
                out.in_phi[idx] = cur.in_phi[idx] ? 0 : 1;
                return true;
            }
            std::vector<long long> on, off;
            for (std::size_t i = 0; i < cur.in_phi.size(); ++i)
                (cur.in_phi[i] ? on : off).push_back(static_cast<long long>(i));
            if (off.empty()) return false;
            out.in_phi[on[rng.below(on.size())]] = 0;
            out.in_phi[off[rng.below(off.size())]] = 1;
            return true;
        }
    }
    return false;
}

struct RestartOutcome {
    Candidate best;
    std::vector<TracePoint> trace;
    bool found = false;
    double min_seen = std::numeric_limits<double>::infinity();
};

// parsimony tie-break: among volume ties a candidate with fewer psi points
// wins, so flat stretches of the objective still settle on minimal witnesses
bool improves_best(double v, long long m, double best_v, long long best_m) {
    constexpr double kTie = 1e-9;
    if (v < best_v - kTie) return true;
    if (v > best_v + kTie) return false;
    return m < best_m;
}

}  // namespace

std::string objective_name(RateObjective o) {
    return o == RateObjective::literal ? "literal" : "nng_reduced";
}

RateObjective objective_parse(const std::string& name) {
    if (name == "literal") return RateObjective::literal;
    if (name == "nng_reduced" || name == "nng-reduced") return RateObjective::nng_reduced;
    throw std::invalid_argument("objective: unknown name '" + name + "'");
}

void AnnealParams::validate(const GraphModel& model) const {
    if (restarts < 1) throw std::invalid_argument("anneal: restarts must be >= 1");
    if (steps_per_restart < 1) throw std::invalid_argument("anneal: steps must be >= 1");
    if (!(initial_temp > 0.0)) throw std::invalid_argument("anneal: temp must be > 0");
    if (!(cooling > 0.0 && cooling <= 1.0))
        throw std::invalid_argument("anneal: cooling must lie in (0,1]");
    double s = 0.0;
    for (double p : move_mix) {
        if (p < 0.0) throw std::invalid_argument("anneal: negative move probability");
        s += p;
    }
    if (std::abs(s - 1.0) > 1e-9)
        throw std::invalid_argument("anneal: move probabilities must sum to 1");
    if (!(jitter_scale > 0.0)) throw std::invalid_argument("anneal: jitter must be > 0");
    if (m_max < c_inf_minimum(model))
        throw std::invalid_argument("anneal: m_max below the insertion floor");
    if (!(anneal_rel_tol > 0.0) || !(final_rel_tol > 0.0))
        throw std::invalid_argument("anneal: tolerances must be > 0");
    if (anneal_mc_samples < 1 || final_mc_samples < 1)
        throw std::invalid_argument("anneal: sample counts must be >= 1");
    if (workers < 1) throw std::invalid_argument("anneal: workers must be >= 1");
    if (!(top1_limit > 0.0 && top1_limit <= 1.0))
        throw std::invalid_argument("anneal: top1_limit must lie in (0,1]");
}

double phi_score_sum(const ConfigPair& pair) {
    pair.validate();
    const DirectedAdjacency adj = build_adjacency(pair.psi, pair.model);
    double s = 0.0;
    for (long long i : pair.phi_indices()) s += score_node(adj, i, pair.variant);
    return s;
}

double phi_top1_fraction(const ConfigPair& pair) {
    pair.validate();
    const DirectedAdjacency adj = build_adjacency(pair.psi, pair.model);
    double sum = 0.0;
    double top = 0.0;
    for (long long i : pair.phi_indices()) {
        const double s = score_node(adj, i, pair.variant);
        sum += s;
        top = std::max(top, s);
    }
    if (!(sum > 0.0))
        throw std::invalid_argument("phi_top1_fraction: phi has zero score sum");
    return top / sum;
}

Candidate normalize_pair(const ConfigPair& pair) {
    const double s = phi_score_sum(pair);
    if (!(s > 0.0))
        throw std::invalid_argument("normalize_pair: phi has zero score sum");
    const double t = std::pow(s, -1.0 / pair.variant.alpha);
    Candidate cand;
    cand.pair = pair.scaled(t);
    cand.score_sum = phi_score_sum(cand.pair);
    cand.normalized_volume = kNaN;
    return cand;
}

bool admissible(const ConfigPair& pair, double jitter_scale, long long trials, Seed seed) {
    try {
        pair.validate();
    } catch (const std::invalid_argument&) {
        return false;
    }
    double s;
    try {
        s = phi_score_sum(pair);
    } catch (const std::invalid_argument&) {
        return false;
    }
    if (!(s >= 1.0 - 1e-9)) return false;
    const ContinuityProbe probe =
        continuity_probe(pair.psi, pair.model, jitter_scale, trials, seed);
    return !probe.sensitive;
}

double evaluate_candidate(Candidate& cand, RateObjective objective, double rel_tol,
                          long long mc_samples, Seed seed) {
    InfluenceParams p;
    p.method = objective == RateObjective::nng_reduced ? InfluenceMethod::nng_balls
                                                       : InfluenceMethod::automatic;
    p.quad_rel_tol = rel_tol;
    p.mc_samples = mc_samples;
    p.seed = seed;
    const InfluenceEstimate est = objective == RateObjective::nng_reduced
                                      ? nng_ball_volume(cand.pair, p)
                                      : influence_volume(cand.pair, p);
    cand.normalized_volume = est.volume.value;
    return cand.normalized_volume;
}

OptResult optimize_rate(const GraphModel& model, const ScoreVariant& variant,
                        RateObjective objective, const AnnealParams& params) {
    model.validate();
    variant.validate();
    params.validate(model);
    if (!(variant.alpha > model.dim))
        throw std::invalid_argument("optimize_rate: requires alpha > dim");
    if (objective == RateObjective::nng_reduced &&
        (model.kind != GraphKind::knn || model.k != 1))
        throw std::invalid_argument("optimize_rate: reduced objective needs knn k = 1");

    std::vector<RestartOutcome> outcomes(params.restarts);
    parallel_for(params.restarts, params.workers, [&](long long restart) {
        const Seed rs = params.seed.substream(static_cast<std::uint64_t>(restart));
        Rng rng(rs);
        const Seed eval_seed = rs.substream(0xC0FFEE);
        // a single-phi restart cannot satisfy a top1 cap below one
        int mode = restart_mode(restart);
        if (params.top1_limit < 1.0 && mode == 1) mode = 2;

        const auto spread_ok = [&](const ConfigPair& p) {
            return params.top1_limit >= 1.0 || phi_top1_fraction(p) < params.top1_limit;
        };

        RestartOutcome& out = outcomes[restart];
        Candidate cur;
        bool ok = false;
        for (int attempt = 0; attempt < 1000 && !ok; ++attempt) {
            try {
                cur = normalize_pair(
                    random_pair(model, variant, rng, mode, params.m_max));
                if (!spread_ok(cur.pair)) continue;
                evaluate_candidate(cur, objective, params.anneal_rel_tol,
                                   params.anneal_mc_samples, eval_seed);
                out.min_seen = std::min(out.min_seen, cur.normalized_volume);
                ok = true;
            } catch (const std::invalid_argument&) {
            }
        }
        if (!ok)
            throw std::runtime_error(
                "optimize_rate: no feasible initialization in 1000 attempts");

        out.best = cur;
        out.found = true;
        out.trace.push_back({0, cur.normalized_volume});

        for (long long step = 1; step <= params.steps_per_restart; ++step) {
            ConfigPair moved;
            if (!propose(cur.pair, params, mode, rng, moved)) continue;
            Candidate cand;
            try {
                cand = normalize_pair(moved);
                if (!spread_ok(cand.pair)) continue;
                evaluate_candidate(cand, objective, params.anneal_rel_tol,
                                   params.anneal_mc_samples, eval_seed);
            } catch (const std::invalid_argument&) {
                continue;
            }
            out.min_seen = std::min(out.min_seen, cand.normalized_volume);
            const double dv = cand.normalized_volume - cur.normalized_volume;
            const double temp =
                params.initial_temp * std::pow(params.cooling, static_cast<double>(step));
            if (dv <= 0.0 || rng.u01() < std::exp(-dv / temp)) cur = cand;
            if (improves_best(cur.normalized_volume, cur.pair.psi.size(),
                              out.best.normalized_volume, out.best.pair.psi.size())) {
                const bool strict = cur.normalized_volume < out.best.normalized_volume;
                out.best = cur;
                if (strict) out.trace.push_back({step, cur.normalized_volume});
            }
        }
    });

    // re-evaluate every restart best at the final precision, reject
    // degenerate candidates, then keep the global minimum
    OptResult result;
    result.objective = objective;
    result.params = params;
    bool have_best = false;
    long long step_base = 0;
    double best_so_far = std::numeric_limits<double>::infinity();
    for (long long restart = 0; restart < params.restarts; ++restart) {
        RestartOutcome& out = outcomes[restart];
        for (const TracePoint& tp : out.trace) {
            if (tp.volume < best_so_far) {
                best_so_far = tp.volume;
                result.trace.push_back({step_base + tp.step, tp.volume});
            }
        }
        step_base += params.steps_per_restart + 1;
        result.min_evaluated = std::min(result.min_evaluated, out.min_seen);
        if (!out.found || !admissible(out.best.pair)) continue;
        evaluate_candidate(out.best, objective, params.final_rel_tol,
                           params.final_mc_samples,
                           params.seed.substream(0xF1 + static_cast<std::uint64_t>(restart)));
        result.min_evaluated = std::min(result.min_evaluated, out.best.normalized_volume);
        if (!have_best ||
            improves_best(out.best.normalized_volume, out.best.pair.psi.size(),
                          result.best.normalized_volume, result.best.pair.psi.size())) {
            result.best = out.best;
            have_best = true;
        }
    }
    if (!have_best)
        throw std::runtime_error("optimize_rate: every restart produced a degenerate best");
    return result;
}

double rate_function(double inf_a, double r, int dim, double alpha) {
    if (!(inf_a >= 0.0)) throw std::invalid_argument("rate_function: inf_A must be >= 0");
    if (!(r > 0.0)) throw std::invalid_argument("rate_function: r must be > 0");
    if (dim < 1 || !(alpha > 0.0))
        throw std::invalid_argument("rate_function: bad dimension or alpha");
    return inf_a * std::pow(r, static_cast<double>(dim) / alpha);
}

std::string OptResult::to_json() const {
    ordered_json j;
    j["objective"] = objective_name(objective);
    j["best_volume"] = best.normalized_volume;
    j["min_evaluated_volume"] = min_evaluated;
    j["best_points"] = points_to_json(best.pair.psi);
    ordered_json mask = ordered_json::array();
    for (char m : best.pair.in_phi) mask.push_back(m ? 1 : 0);
    j["phi_mask"] = mask;

    ordered_json trace_arr = ordered_json::array();
    const std::size_t stride = std::max<std::size_t>(1, trace.size() / 512);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (i % stride != 0 && i + 1 != trace.size()) continue;
        trace_arr.push_back({trace[i].step, trace[i].volume});
    }
    j["trace_downsampled"] = trace_arr;

    ordered_json p;
    p["model"] = model_to_json(best.pair.model);
    p["variant"] = variant_to_json(best.pair.variant);
    p["restarts"] = params.restarts;
    p["steps_per_restart"] = params.steps_per_restart;
    p["initial_temp"] = params.initial_temp;
    p["cooling"] = params.cooling;
    p["move_mix"] = params.move_mix;
    p["jitter_scale"] = params.jitter_scale;
    p["m_max"] = params.m_max;
    p["anneal_rel_tol"] = params.anneal_rel_tol;
    p["final_rel_tol"] = params.final_rel_tol;
    p["anneal_mc_samples"] = params.anneal_mc_samples;
    p["final_mc_samples"] = params.final_mc_samples;
    p["top1_limit"] = params.top1_limit;
    p["score_sum"] = best.score_sum;
    j["params"] = p;
    j["seed"] = seed_to_json(params.seed);
    return j.dump(2);
}

}  // namespace rarenet
