#include "conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "parallel.hpp"
#include "point_process.hpp"

namespace rarenet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCheckBoxSide = 8.0;

using ordered_json = nlohmann::ordered_json;

long long cone_count(int dim) {
    return static_cast<long long>(cone_cover(dim).size());
}

PointConfig sample_check_config(int dim, Seed seed) {
    return sample_poisson(Box::cube(dim, kCheckBoxSide), 1.0, seed);
}

// smallest config the model's graph accepts; sparse draws below it are skipped
long long min_check_size(const GraphModel& model) {
    return model.kind == GraphKind::knn ? model.k + 1 : 2;
}

ordered_json model_params(const GraphModel& model) {
    ordered_json p;
    p["model"] = model.name();
    p["dim"] = model.dim;
    if (model.kind == GraphKind::knn)
        p["k"] = model.k;
    else
        p["beta"] = model.beta;
    return p;
}

}  // namespace

long long c_fin2_bound(const GraphModel& model) {
    if (model.kind != GraphKind::knn)
        throw std::invalid_argument("c_fin2_bound: only claimed for knn models");
    long long pow4 = 1;
    for (int j = 0; j < model.dim; ++j) pow4 *= 4;
    return model.k * pow4;
}

int c_sta_default(const GraphModel& model) {
    return model.kind == GraphKind::knn ? model.k + 1 : 2;
}

int c_inf_minimum(const GraphModel& model) {
    return model.kind == GraphKind::knn ? model.k + 1 : 1;
}

long long c_degree_bound(const GraphModel& model) {
    return cone_count(model.dim) * c_sta_default(model);
}

double beta_gamma(double beta) {
    if (!(beta >= 1.0)) throw std::invalid_argument("beta_gamma: beta must be >= 1");
    return std::asin(1.0 / beta);
}

double beta_tau(double beta) {
    if (!(beta >= 1.0)) throw std::invalid_argument("beta_tau: beta must be >= 1");
    return std::acos(1.0 / beta);
}

double certified_disjoint_radius(double beta) {
    if (!(beta > 1.0))
        throw std::invalid_argument("certified_disjoint_radius: beta must be > 1");
    // The rhombus of an edge e has vertices e1, e2 and the two disk centers.
    // Minimize the distance from on-edge centers (at least a/2 from each
    // endpoint) to the rhombus boundary, over edge lengths |e| in [a, 64a].
    const double a = 1.0;
    double min_ratio = kInf;
    for (double len : {1.0, 1.5, 2.0, 4.0, 8.0, 16.0, 64.0}) {
        const double half = 0.5 * len;
        const double height = half * std::sqrt(beta * beta - 1.0);
        const double v0[2] = {-half, 0.0};
        const double v1[2] = {half, 0.0};
        const double t0[2] = {0.0, height};
        const double t1[2] = {0.0, -height};
        const double corners[4][2] = {{v0[0], v0[1]}, {t0[0], t0[1]}, {v1[0], v1[1]}, {t1[0], t1[1]}};
        const int grid = 4096;
        for (int g = 0; g <= grid; ++g) {
            const double m = a / 2.0 + (len - a) * g / grid;
            const double p[2] = {-half + m, 0.0};
            double d = kInf;
            for (int s = 0; s < 4; ++s) {
                const double* q0 = corners[s];
                const double* q1 = corners[(s + 1) % 4];
                const double ex = q1[0] - q0[0];
                const double ey = q1[1] - q0[1];
                const double wx = p[0] - q0[0];
                const double wy = p[1] - q0[1];
                double t = (wx * ex + wy * ey) / (ex * ex + ey * ey);
                t = std::clamp(t, 0.0, 1.0);
                const double dx = wx - t * ex;
                const double dy = wy - t * ey;
                d = std::min(d, std::hypot(dx, dy));
            }
            // the disk of radius c*a must clear the boundary by another c*a
            min_ratio = std::min(min_ratio, d / (2.0 * a));
        }
    }
    return 0.999 * std::min(min_ratio, 0.4999);
}

double recorded_edges_bound(double beta) {
    const double tau = beta_tau(beta);
    const double c = certified_disjoint_radius(beta);
    const double t = std::tan(tau);
    return 1.0 + 2.0 * ball_volume(2, 2.0 * t + beta / 2.0) / (kPi * c * c * t * t);
}

double fin_bound(const GraphModel& model) {
    if (model.kind == GraphKind::knn) {
        if (model.dim > 2) return kInf;  // no cone layout recorded beyond d=2
        return static_cast<double>(c_degree_bound(model));
    }
    return recorded_edges_bound(model.beta) * 2.0 * kPi / beta_gamma(model.beta);
}

long long c_max_constant(const GraphModel& model) {
    if (model.kind == GraphKind::knn) {
        long long c = std::max<long long>(c_degree_bound(model), c_fin2_bound(model));
        return std::max<long long>(c, c_inf_minimum(model));
    }
    const double c_disj = certified_disjoint_radius(model.beta);
    const double fin2_edges = std::pow(2.0 / c_disj, 2.0);
    double c = std::max<double>(static_cast<double>(c_degree_bound(model)), fin_bound(model));
    c = std::max(c, fin2_edges);
    return static_cast<long long>(std::ceil(c));
}

double positivity_floor(const GraphModel& model) {
    const double c = static_cast<double>(c_max_constant(model));
    return unit_ball_volume(model.dim) /
           (std::pow(2.0, model.dim) * (c + 1.0) * (c + 1.0));
}

std::string ConditionReport::to_json() const {
    ordered_json j;
    j["condition"] = condition;
    j["trials"] = trials;
    if (std::isfinite(worst_observed))
        j["worst_observed"] = worst_observed;
    else
        j["worst_observed"] = nullptr;
    if (std::isfinite(bound_claimed))
        j["bound_claimed"] = bound_claimed;
    else
        j["bound_claimed"] = nullptr;
    j["violations"] = violations;
    j["params"] = ordered_json::parse(params_json);
    return j.dump();
}

long long affected_nodes_on_insert(const PointConfig& config, const GraphModel& model,
                                   std::span<const double> y) {
    if (config.contains_point(y))
        throw std::invalid_argument("affected_nodes_on_insert: point already present");
    const DirectedAdjacency before = build_adjacency(config, model);
    const DirectedAdjacency after = build_adjacency(config.with(y), model);
    long long affected = 0;
    const long long n = config.size();
    for (long long i = 0; i < n; ++i) {
        auto a = before.out(i);
        auto b = after.out(i);
        if (a.size() != b.size() || !std::equal(a.begin(), a.end(), b.begin())) ++affected;
    }
    return affected;
}

long long long_edge_count(const PointConfig& config, const GraphModel& model, double M) {
    if (!(M > 0.0)) throw std::invalid_argument("long_edge_count: M must be > 0");
    const DirectedAdjacency adj = build_adjacency(config, model);
    const double m2 = M * M;
    long long count = 0;
    const long long n = config.size();
    for (long long i = 0; i < n; ++i) {
        if (norm2(config.point(i)) > m2) continue;
        for (long long t : adj.out(i)) {
            if (dist2(config.point(i), config.point(t)) > m2) {
                ++count;
                break;
            }
        }
    }
    return count;
}

StabilizationRadii stabilization_radii(const PointConfig& config, long long x,
                                       const std::vector<Cone>& cones, int c_sta) {
    if (x < 0 || x >= config.size())
        throw std::invalid_argument("stabilization_radii: unknown node");
    if (c_sta < 1) throw std::invalid_argument("stabilization_radii: c_sta must be >= 1");
    if (cones.empty()) throw std::invalid_argument("stabilization_radii: no cones");
    const int dim = config.dim();
    auto px = config.point(x);
    StabilizationRadii out;
    out.c_sta = c_sta;
    out.per_cone.assign(cones.size(), kInf);
    std::vector<double> rel(dim);
    std::vector<std::vector<double>> dists(cones.size());
    const long long n = config.size();
    for (long long i = 0; i < n; ++i) {
        if (i == x) continue;
        auto p = config.point(i);
        for (int j = 0; j < dim; ++j) rel[j] = p[j] - px[j];
        const double d = std::sqrt(norm2(rel));
        for (std::size_t c = 0; c < cones.size(); ++c)
            if (cones[c].contains(rel)) dists[c].push_back(d);
    }
    for (std::size_t c = 0; c < cones.size(); ++c) {
        auto& v = dists[c];
        if (static_cast<long long>(v.size()) >= c_sta) {
            std::nth_element(v.begin(), v.begin() + (c_sta - 1), v.end());
            out.per_cone[c] = c_sta * v[c_sta - 1];
        }
    }
    out.overall = *std::max_element(out.per_cone.begin(), out.per_cone.end());
    return out;
}

bool sta_layout_supported(const GraphModel& model, const std::vector<Cone>& cones,
                          std::string* reason) {
    auto fail = [&](const std::string& why) {
        if (reason) *reason = why;
        return false;
    };
    if (model.kind == GraphKind::knn) {
        for (const auto& c : cones)
            if (c.half_angle > kPi / 6.0 + 1e-12)
                return fail("cone half-angle above pi/6; nearer same-cone points may not "
                            "shield the apex for knn");
        return true;
    }
    if (model.beta > 2.0 + 1e-12)
        return fail("beta above 2 not covered by the cone shielding argument");
    for (const auto& c : cones)
        if (c.half_angle > kPi / 8.0 + 1e-12)
            return fail("cone half-angle above pi/8; lens blocking not guaranteed");
    return true;
}

ContinuityProbe continuity_probe(const PointConfig& config, const GraphModel& model,
                                 double delta, long long trials, Seed seed) {
    if (delta < 0.0) throw std::invalid_argument("continuity_probe: delta must be >= 0");
    if (trials < 1) throw std::invalid_argument("continuity_probe: trials must be >= 1");
    const DirectedAdjacency base = build_adjacency(config, model);
    const int dim = config.dim();
    const long long n = config.size();

    auto preserved_at = [&](double scale, Seed s) {
        if (scale == 0.0) return true;
        Rng rng(s);
        std::vector<double> coords = config.coords();
        std::vector<double> shift(dim);
        for (long long i = 0; i < n; ++i) {
            rng.point_in_ball(scale, shift);
            for (int j = 0; j < dim; ++j) coords[i * dim + j] += shift[j];
        }
        try {
            const DirectedAdjacency moved =
                build_adjacency(PointConfig(dim, std::move(coords)), model);
            return moved.offsets == base.offsets && moved.targets == base.targets;
        } catch (const std::invalid_argument&) {
            return false;  // jitter collided two points: degenerate by definition
        }
    };

    ContinuityProbe probe;
    probe.report.condition = "CON";
    probe.report.trials = trials;
    probe.report.bound_claimed = 0.0;
    for (long long t = 0; t < trials; ++t)
        if (!preserved_at(delta, seed.substream(t))) probe.report.violations++;
    probe.sensitive = probe.report.violations > 0;
    probe.report.worst_observed = static_cast<double>(probe.report.violations);

    probe.preserved_delta = 0.0;
    double scale = delta;
    for (int level = 0; level < 4 && scale > 0.0; ++level, scale /= 16.0) {
        bool ok = true;
        for (long long t = 0; t < trials && ok; ++t)
            ok = preserved_at(scale, seed.substream((level + 1) * 100000 + t));
        if (ok) {
            probe.preserved_delta = scale;
            break;
        }
    }

    ordered_json p = model_params(model);
    p["delta"] = delta;
    p["preserved_delta"] = probe.preserved_delta;
    probe.report.params_json = p.dump();
    return probe;
}

bool inf_condition_probe(const PointConfig& psi, const PointConfig& theta,
                         const GraphModel& model) {
    if (psi.size() < c_inf_minimum(model))
        throw std::invalid_argument("inf_condition_probe: base configuration too small");
    if (psi.dim() != theta.dim())
        throw std::invalid_argument("inf_condition_probe: dimension mismatch");

    const DirectedAdjacency base = build_adjacency(psi, model);
    const long long n = psi.size();

    // edges of psi survive in the enlarged configuration (psi indices are
    // preserved because additions are appended)
    auto edges_survive = [&](const PointConfig& enlarged) {
        const DirectedAdjacency big = build_adjacency(enlarged, model);
        for (long long i = 0; i < n; ++i)
            for (long long t : base.out(i))
                if (!big.has_arc(i, t)) return false;
        return true;
    };

    PointConfig whole = psi;
    for (long long j = 0; j < theta.size(); ++j) whole.append(theta.point(j));
    const bool all_at_once = edges_survive(whole);

    bool one_at_a_time = true;
    for (long long j = 0; j < theta.size() && one_at_a_time; ++j)
        one_at_a_time = edges_survive(psi.with(theta.point(j)));

    return all_at_once == one_at_a_time;
}

ConditionReport check_edge_triangle_separation(double beta, long long trials, Seed seed) {
    if (!(beta > 1.0))
        throw std::invalid_argument("check_edge_triangle_separation: beta must be > 1");
    const GraphModel model = GraphModel::beta_model(beta);
    ConditionReport rep;
    rep.condition = "FIN";
    rep.trials = trials;
    rep.bound_claimed = 0.0;

    std::uint64_t attempt = 0;
    for (long long t = 0; t < trials; ++t) {
        PointConfig pts;
        DirectedAdjacency adj;
        for (;;) {
            pts = sample_binomial(Box::cube(2, 4.0), 4, seed.substream(attempt++));
            adj = build_adjacency(pts, model);
            if (adj.has_arc(0, 1) && adj.has_arc(2, 3)) break;
        }
        auto triangle_hit = [&](long long e1, long long e2, long long f1, long long f2) {
            auto a = pts.point(e1);
            auto b = pts.point(e2);
            // disk centers sit at distance (|e|/2)*sqrt(beta^2-1) from the
            // midpoint along the edge normal; (hx,hy) has length |e| already
            const double mx = 0.5 * (a[0] + b[0]);
            const double my = 0.5 * (a[1] + b[1]);
            const double hx = -(b[1] - a[1]);
            const double hy = b[0] - a[0];
            const double h = 0.5 * std::sqrt(beta * beta - 1.0);
            for (double side : {1.0, -1.0}) {
                const double c[2] = {mx + side * h * hx, my + side * h * hy};
                if (segment_intersects_triangle(pts.point(f1), pts.point(f2), a, b, c))
                    return true;
            }
            return false;
        };
        if (triangle_hit(0, 1, 2, 3) || triangle_hit(2, 3, 0, 1)) {
            rep.violations++;
            rep.worst_observed = 1.0;
        }
    }
    ordered_json p;
    p["beta"] = beta;
    rep.params_json = p.dump();
    return rep;
}

double tangent_crossing_ratio(double beta) {
    if (!(beta > 1.0))
        throw std::invalid_argument("tangent_crossing_ratio: beta must be > 1");
    // Edge e of unit length; disk center below the edge. A second horizontal
    // chord f with endpoints on the disk boundary is slid along the arc until
    // the segments from its own disk center to its endpoints become tangent to
    // the boundary circle; the tangency angle is solved by bisection.
    const double R = beta / 2.0;
    const double c = std::sqrt(R * R - 0.25);

    auto residual = [&](double phi) {
        const double f1x = -R * std::sin(phi);
        const double f1y = -c + R * std::cos(phi);
        // radial direction at f1 and its tangent
        const double rx = f1x;
        const double ry = f1y + c;
        const double tx = -ry;
        const double ty = rx;
        // slide along the tangent line to the symmetry axis x = 0
        const double step = -f1x / tx;
        const double mfy = f1y + step * ty;
        const double reach = std::hypot(f1x, mfy - f1y);
        const double half_f = -f1x;  // f1 sits at negative x
        return reach - beta * half_f;
    };

    double lo = 1e-6, hi = kPi / 2.0 - 1e-6;
    if (residual(lo) * residual(hi) > 0.0)
        throw std::runtime_error("tangent_crossing_ratio: bracketing failed");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (residual(lo) * residual(mid) <= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    const double phi = 0.5 * (lo + hi);
    return 2.0 * R * std::sin(phi);  // |f| for |e| = 1
}

ConditionReport check_scale_invariance(const GraphModel& model, long long trials, Seed seed,
                                       int workers) {
    ConditionReport rep;
    rep.condition = "SCALE";
    rep.trials = trials;
    rep.bound_claimed = 0.0;
    std::vector<int> mismatched(trials, 0);
    parallel_for(trials, workers, [&](long long t) {
        const PointConfig pts = sample_check_config(model.dim, seed.substream(t));
        if (pts.size() < min_check_size(model)) return;
        const DirectedAdjacency base = build_adjacency(pts, model);
        for (double tau : {0.5, 2.0, 10.0}) {
            const DirectedAdjacency scaled = build_adjacency(pts.scaled(tau), model);
            if (scaled.offsets != base.offsets || scaled.targets != base.targets)
                mismatched[t] = 1;
        }
    });
    for (long long t = 0; t < trials; ++t)
        if (mismatched[t]) rep.violations++;
    rep.worst_observed = static_cast<double>(rep.violations);
    rep.params_json = model_params(model).dump();
    return rep;
}

ConditionReport check_insertion_impact(const GraphModel& model, long long trials, Seed seed,
                                       int workers) {
    ConditionReport rep;
    rep.condition = "FIN";
    rep.trials = trials;
    rep.bound_claimed = fin_bound(model);
    std::vector<double> counts(trials, 0.0);
    parallel_for(trials, workers, [&](long long t) {
        const Seed s = seed.substream(t);
        const PointConfig pts = sample_check_config(model.dim, s);
        if (pts.size() < min_check_size(model)) return;
        Rng rng(s.substream(1));
        const Box inner = Box::cube(model.dim, kCheckBoxSide / 2);
        std::vector<double> y(model.dim);
        rng.point_in_box(inner.lower, inner.upper, y);
        if (pts.contains_point(y)) return;
        counts[t] = static_cast<double>(affected_nodes_on_insert(pts, model, y));
    });
    for (long long t = 0; t < trials; ++t) {
        rep.worst_observed = std::max(rep.worst_observed, counts[t]);
        if (counts[t] > rep.bound_claimed) rep.violations++;
    }
    rep.params_json = model_params(model).dump();
    return rep;
}

ConditionReport check_long_edges(const GraphModel& model, long long trials, Seed seed,
                                 int workers) {
    if (model.kind != GraphKind::knn)
        throw std::invalid_argument(
            "check_long_edges: node-count cap is only claimed for knn models");
    ConditionReport rep;
    rep.condition = "FIN2";
    rep.trials = trials;
    rep.bound_claimed = static_cast<double>(c_fin2_bound(model));
    std::vector<double> counts(trials, 0.0);
    parallel_for(trials, workers, [&](long long t) {
        const PointConfig pts = sample_check_config(model.dim, seed.substream(t));
        if (pts.size() < min_check_size(model)) return;
        double worst = 0.0;
        for (double M : {0.5, 1.0, 2.0})
            worst = std::max(worst, static_cast<double>(long_edge_count(pts, model, M)));
        counts[t] = worst;
    });
    for (long long t = 0; t < trials; ++t) {
        rep.worst_observed = std::max(rep.worst_observed, counts[t]);
        if (counts[t] > rep.bound_claimed) rep.violations++;
    }
    ordered_json p = model_params(model);
    p["radii"] = {0.5, 1.0, 2.0};
    rep.params_json = p.dump();
    return rep;
}

ConditionReport check_stabilization(const GraphModel& model, long long trials, Seed seed,
                                    int workers) {
    const auto cones = cone_cover(model.dim);
    std::string reason;
    if (!sta_layout_supported(model, cones, &reason))
        throw std::invalid_argument("check_stabilization: " + reason);
    const int c_sta = c_sta_default(model);
    constexpr int kAdversarial = 20;

    ConditionReport rep;
    rep.condition = "STA";
    rep.trials = trials;
    rep.bound_claimed = 0.0;
    std::vector<double> radii(trials, 0.0);
    std::vector<int> outcome(trials, 0);  // 0 ok, 1 violation, 2 unbounded radius
    parallel_for(trials, workers, [&](long long t) {
        const Seed s = seed.substream(t);
        const PointConfig pts = sample_check_config(model.dim, s);
        if (pts.size() < min_check_size(model)) {
            outcome[t] = 2;
            return;
        }
        // probe the node closest to the window center
        long long x = 0;
        double best = kInf;
        for (long long i = 0; i < pts.size(); ++i) {
            const double d = norm2(pts.point(i));
            if (d < best) {
                best = d;
                x = i;
            }
        }
        const StabilizationRadii sr = stabilization_radii(pts, x, cones, c_sta);
        if (!std::isfinite(sr.overall)) {
            outcome[t] = 2;
            return;
        }
        radii[t] = sr.overall;

        const DirectedAdjacency adj = build_adjacency(pts, model);
        auto as_coords = [&](const PointConfig& cfg, const std::vector<long long>& idx) {
            std::vector<std::vector<double>> out;
            for (long long i : idx)
                out.emplace_back(cfg.point(i).begin(), cfg.point(i).end());
            std::sort(out.begin(), out.end());
            return out;
        };
        const auto expected = as_coords(pts, adj.in_out(x));

        auto px = pts.point(x);
        PointConfig kept = PointConfig::empty(model.dim);
        for (long long i = 0; i < pts.size(); ++i)
            if (dist(pts.point(i), px) <= sr.overall) kept.append(pts.point(i));

        Rng rng(s.substream(1));
        std::vector<double> dir(model.dim), q(model.dim);
        PointConfig modified = kept;
        for (int a = 0; a < kAdversarial; ++a) {
            rng.unit_vector(dir);
            const double radius = sr.overall * (1.0 + 1e-9) + rng.u01() * kCheckBoxSide;
            for (int j = 0; j < model.dim; ++j) q[j] = px[j] + radius * dir[j];
            if (!modified.contains_point(q)) modified.append(q);
        }
        const DirectedAdjacency adj2 = build_adjacency(modified, model);
        const long long x2 = modified.index_of(px);
        const auto got = as_coords(modified, adj2.in_out(x2));
        if (got != expected) outcome[t] = 1;
    });
    long long unbounded = 0;
    for (long long t = 0; t < trials; ++t) {
        if (outcome[t] == 1) rep.violations++;
        if (outcome[t] == 2) unbounded++;
        rep.worst_observed = std::max(rep.worst_observed, radii[t]);
    }
    ordered_json p = model_params(model);
    p["c_sta"] = c_sta;
    p["cones"] = static_cast<long long>(cones.size());
    p["adversarial_points"] = kAdversarial;
    p["unbounded_radius_trials"] = unbounded;
    rep.params_json = p.dump();
    return rep;
}

ConditionReport check_continuity(const GraphModel& model, long long trials, Seed seed,
                                 int workers) {
    constexpr double kDelta = 1e-9;
    ConditionReport rep;
    rep.condition = "CON";
    rep.trials = trials;
    rep.bound_claimed = 0.0;
    std::vector<int> changed(trials, 0);
    parallel_for(trials, workers, [&](long long t) {
        const Seed s = seed.substream(t);
        const PointConfig pts = sample_check_config(model.dim, s);
        if (pts.size() < min_check_size(model)) return;
        const ContinuityProbe probe = continuity_probe(pts, model, kDelta, 3, s.substream(1));
        changed[t] = probe.sensitive ? 1 : 0;
    });
    for (long long t = 0; t < trials; ++t)
        if (changed[t]) rep.violations++;
    rep.worst_observed = static_cast<double>(rep.violations);
    ordered_json p = model_params(model);
    p["delta"] = kDelta;
    rep.params_json = p.dump();
    return rep;
}

ConditionReport check_insertion_monotonicity(const GraphModel& model, long long trials,
                                             Seed seed, int workers) {
    ConditionReport rep;
    rep.condition = "INF";
    rep.trials = trials;
    rep.bound_claimed = 0.0;
    const int needed = c_inf_minimum(model);
    std::vector<int> failed(trials, 0);
    parallel_for(trials, workers, [&](long long t) {
        const Seed s = seed.substream(t);
        const PointConfig psi = sample_check_config(model.dim, s);
        if (psi.size() < std::max(needed, 2)) return;
        const PointConfig theta =
            sample_binomial(Box::cube(model.dim, kCheckBoxSide + 2.0), 3, s.substream(1));
        bool clean = true;
        for (long long j = 0; j < theta.size(); ++j)
            if (psi.contains_point(theta.point(j))) clean = false;
        if (!clean) return;
        if (!inf_condition_probe(psi, theta, model)) failed[t] = 1;
    });
    for (long long t = 0; t < trials; ++t)
        if (failed[t]) rep.violations++;
    rep.worst_observed = static_cast<double>(rep.violations);
    rep.params_json = model_params(model).dump();
    return rep;
}

std::vector<ConditionReport> run_condition_checks(const GraphModel& model, Seed seed,
                                                  int workers, long long trials) {
    model.validate();
    auto n = [&](long long def) { return trials > 0 ? trials : def; };
    std::vector<ConditionReport> reports;
    reports.push_back(check_scale_invariance(model, n(100), seed.substream(1), workers));
    reports.push_back(check_insertion_impact(model, n(500), seed.substream(2), workers));
    if (model.kind == GraphKind::knn)
        reports.push_back(check_long_edges(model, n(500), seed.substream(3), workers));
    if (model.dim <= 2)
        reports.push_back(check_stabilization(model, n(200), seed.substream(4), workers));
    reports.push_back(check_continuity(model, n(100), seed.substream(5), workers));
    reports.push_back(check_insertion_monotonicity(model, n(500), seed.substream(6), workers));
    return reports;
}

}  // namespace rarenet
