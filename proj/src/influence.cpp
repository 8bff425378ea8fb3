#include "influence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "conditions.hpp"
#include "serialization.hpp"

namespace rarenet {

namespace {

// everything the membership predicate needs, built once per pair
struct ZoneEvaluator {
    const ConfigPair& pair;
    DirectedAdjacency adj;
    std::vector<long long> guarded;
    // knn: radius of the farthest out-neighbor per guarded node, plus its
    // coordinates for tie ordering
    std::vector<double> worst_d2;
    std::vector<std::vector<double>> worst_point;
    // beta: open lenses of the guarded nodes' out-edges
    std::vector<Lens> lenses;

    explicit ZoneEvaluator(const ConfigPair& p)
        : pair(p), adj(build_adjacency(p.psi, p.model)) {
        guarded = protected_nodes(pair, adj);
        if (pair.model.kind == GraphKind::knn) {
            worst_d2.reserve(guarded.size());
            worst_point.reserve(guarded.size());
            for (long long x : guarded) {
                auto px = pair.psi.point(x);
                long long worst = -1;
                for (long long t : adj.out(x)) {
                    if (worst < 0 ||
                        neighbor_closer(px, pair.psi.point(worst), pair.psi.point(t)))
                        worst = t;
                }
                if (worst < 0 || adj.out(x).size() < static_cast<std::size_t>(pair.model.k)) {
                    // out-degree below k: an insertion only adds edges
                    worst_d2.push_back(-1.0);
                    worst_point.emplace_back();
                    continue;
                }
                auto pw = pair.psi.point(worst);
                worst_d2.push_back(dist2(px, pw));
                worst_point.emplace_back(pw.begin(), pw.end());
            }
        } else {
            for (long long x : guarded) {
                auto px = pair.psi.point(x);
                for (long long t : adj.out(x))
                    lenses.push_back(make_lens(px, pair.psi.point(t), pair.model.beta));
            }
        }
    }

    bool empty_zone() const {
        if (pair.model.kind == GraphKind::knn) {
            for (double w : worst_d2)
                if (w >= 0.0) return false;
            return true;
        }
        return lenses.empty();
    }

    bool contains(std::span<const double> y) const {
        if (pair.model.kind == GraphKind::knn) {
            for (std::size_t g = 0; g < guarded.size(); ++g) {
                if (worst_d2[g] < 0.0) continue;
                auto px = pair.psi.point(guarded[g]);
                if (neighbor_closer(px, y, worst_point[g])) return true;
            }
            return false;
        }
        for (const Lens& l : lenses)
            if (l.interior_contains(y)) return true;
        return false;
    }

    Box bounding() const {
        const int d = pair.psi.dim();
        Box b;
        b.lower.assign(d, std::numeric_limits<double>::infinity());
        b.upper.assign(d, -std::numeric_limits<double>::infinity());
        auto grow = [&](std::span<const double> lo, std::span<const double> hi) {
            for (int j = 0; j < d; ++j) {
                b.lower[j] = std::min(b.lower[j], lo[j]);
                b.upper[j] = std::max(b.upper[j], hi[j]);
            }
        };
        if (pair.model.kind == GraphKind::knn) {
            std::vector<double> lo(d), hi(d);
            for (std::size_t g = 0; g < guarded.size(); ++g) {
                if (worst_d2[g] < 0.0) continue;
                auto px = pair.psi.point(guarded[g]);
                const double r = std::sqrt(worst_d2[g]);
                for (int j = 0; j < d; ++j) {
                    lo[j] = px[j] - r;
                    hi[j] = px[j] + r;
                }
                grow(lo, hi);
            }
        } else {
            for (const Lens& l : lenses) {
                const Box lb = l.bounding();
                grow(lb.lower, lb.upper);
            }
        }
        if (!(b.lower[0] <= b.upper[0]))
            throw std::invalid_argument("influence zone is empty: no removable edges");
        return b.inflated_relative(0.01);
    }
};

}  // namespace

void ConfigPair::validate() const {
    model.validate();
    variant.validate();
    if (psi.dim() != model.dim)
        throw std::invalid_argument("config pair: psi/model dimension mismatch");
    if (in_phi.size() != static_cast<std::size_t>(psi.size()))
        throw std::invalid_argument("config pair: phi mask size mismatch");
    if (psi.size() < c_inf_minimum(model))
        throw std::invalid_argument("config pair: psi smaller than the insertion floor");
    if (phi_count() < 1) throw std::invalid_argument("config pair: phi is empty");
}

long long ConfigPair::phi_count() const {
    long long c = 0;
    for (char m : in_phi)
        if (m) ++c;
    return c;
}

std::vector<long long> ConfigPair::phi_indices() const {
    std::vector<long long> idx;
    for (std::size_t i = 0; i < in_phi.size(); ++i)
        if (in_phi[i]) idx.push_back(static_cast<long long>(i));
    return idx;
}

PointConfig ConfigPair::phi() const {
    PointConfig out = PointConfig::empty(psi.dim());
    for (long long i : phi_indices()) out.append(psi.point(i));
    return out;
}

ConfigPair ConfigPair::scaled(double factor) const {
    ConfigPair out = *this;
    out.psi = psi.scaled(factor);
    return out;
}

std::string ConfigPair::to_json() const {
    ordered_json j;
    j["model"] = model_to_json(model);
    j["variant"] = variant_to_json(variant);
    j["psi"] = points_to_json(psi);
    j["phi_indices"] = phi_indices();
    return j.dump();
}

ConfigPair ConfigPair::from_json(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    ConfigPair pair;
    pair.model = model_from_json(j.at("model"));
    pair.variant = variant_from_json(j.at("variant"));
    pair.psi = points_from_json(j.at("psi"), pair.model.dim);
    pair.in_phi.assign(static_cast<std::size_t>(pair.psi.size()), 0);
    for (const auto& v : j.at("phi_indices")) {
        const long long i = v.get<long long>();
        if (i < 0 || i >= pair.psi.size())
            throw std::invalid_argument("config pair: phi index out of range");
        pair.in_phi[static_cast<std::size_t>(i)] = 1;
    }
    pair.validate();
    return pair;
}

std::vector<long long> protected_nodes(const ConfigPair& pair,
                                       const DirectedAdjacency& adj) {
    std::vector<long long> nodes = pair.phi_indices();
    const std::size_t phi_end = nodes.size();
    for (std::size_t g = 0; g < phi_end; ++g)
        for (long long t : adj.out(nodes[g])) nodes.push_back(t);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return nodes;
}

bool in_influence_zone(const ConfigPair& pair, std::span<const double> y) {
    pair.validate();
    if (pair.psi.contains_point(y))
        throw std::invalid_argument("in_influence_zone: point already present");
    return ZoneEvaluator(pair).contains(y);
}

bool in_influence_zone_brute(const ConfigPair& pair, std::span<const double> y) {
    pair.validate();
    if (pair.psi.contains_point(y))
        throw std::invalid_argument("in_influence_zone: point already present");
    const DirectedAdjacency before = build_adjacency(pair.psi, pair.model);
    const DirectedAdjacency after = build_adjacency(pair.psi.with(y), pair.model);
    for (long long x : protected_nodes(pair, before)) {
        auto now = after.out(x);
        for (long long t : before.out(x))
            if (std::find(now.begin(), now.end(), t) == now.end()) return true;
    }
    return false;
}

Box influence_bounding(const ConfigPair& pair) {
    pair.validate();
    return ZoneEvaluator(pair).bounding();
}

InfluenceEstimate influence_volume(const ConfigPair& pair, const InfluenceParams& params) {
    pair.validate();
    if (params.method == InfluenceMethod::nng_balls) return nng_ball_volume(pair, params);

    const ZoneEvaluator zone(pair);
    InfluenceEstimate est;
    est.protected_nodes = zone.guarded;
    if (zone.empty_zone()) {
        est.bounding.lower.assign(pair.psi.dim(), 0.0);
        est.bounding.upper.assign(pair.psi.dim(), 0.0);
        est.volume.method = VolumeMethod::closed_form;
        return est;
    }
    est.bounding = zone.bounding();

    Region region;
    region.dim = pair.psi.dim();
    region.bounding = est.bounding;
    region.contains = [&zone](std::span<const double> p) { return zone.contains(p); };
    if (pair.model.kind == GraphKind::knn) {
        // the zone is exactly a union of open balls, so hand the quadrature
        // an exact signed distance
        std::vector<std::vector<double>> centers;
        std::vector<double> radii;
        for (std::size_t g = 0; g < zone.guarded.size(); ++g) {
            if (zone.worst_d2[g] < 0.0) continue;
            auto px = pair.psi.point(zone.guarded[g]);
            centers.emplace_back(px.begin(), px.end());
            radii.push_back(std::sqrt(zone.worst_d2[g]));
        }
        const Region balls = ball_union_region(std::move(centers), std::move(radii));
        region.signed_distance = balls.signed_distance;
    }

    InfluenceMethod method = params.method;
    if (method == InfluenceMethod::automatic)
        method = pair.psi.dim() == 2 ? InfluenceMethod::quadrature
                                     : InfluenceMethod::monte_carlo;
    if (method == InfluenceMethod::quadrature)
        est.volume = region_volume_quadrature(region, params.quad_rel_tol,
                                              params.quad_max_depth);
    else
        est.volume = region_volume_mc(region, params.mc_samples, params.seed,
                                      params.workers);
    return est;
}

InfluenceEstimate nng_ball_volume(const ConfigPair& pair, const InfluenceParams& params) {
    pair.validate();
    if (pair.model.kind != GraphKind::knn || pair.model.k != 1)
        throw std::invalid_argument("nng_ball_volume: reduced objective needs knn k = 1");

    std::vector<std::vector<double>> centers;
    std::vector<double> radii;
    for (long long i : pair.phi_indices()) {
        auto p = pair.psi.point(i);
        centers.emplace_back(p.begin(), p.end());
        radii.push_back(knn_distance(pair.psi, i, 1));
    }
    Region region = ball_union_region(std::move(centers), std::move(radii));
    region.bounding = region.bounding.inflated_relative(0.01);

    InfluenceEstimate est;
    est.protected_nodes = pair.phi_indices();
    est.bounding = region.bounding;
    InfluenceMethod method = params.method;
    if (method == InfluenceMethod::nng_balls || method == InfluenceMethod::automatic)
        method = pair.psi.dim() == 2 ? InfluenceMethod::quadrature
                                     : InfluenceMethod::monte_carlo;
    if (method == InfluenceMethod::quadrature)
        est.volume = region_volume_quadrature(region, params.quad_rel_tol,
                                              params.quad_max_depth);
    else
        est.volume = region_volume_mc(region, params.mc_samples, params.seed,
                                      params.workers);
    return est;
}

}  // namespace rarenet
