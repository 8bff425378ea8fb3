#include "scores.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "conditions.hpp"
#include "parallel.hpp"
#include "textio.hpp"

namespace rarenet {

void ScoreVariant::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("score variant: alpha must be positive and finite");
}

std::string ScoreVariant::name() const {
    switch (tag) {
        case ScoreTag::dir: return "dir";
        case ScoreTag::undir: return "undir";
        case ScoreTag::bidir: return "bidir";
    }
    throw std::logic_error("score variant: unknown tag");
}

ScoreVariant ScoreVariant::parse(const std::string& tag_name, double alpha) {
    ScoreVariant v;
    v.alpha = alpha;
    if (tag_name == "dir")
        v.tag = ScoreTag::dir;
    else if (tag_name == "undir")
        v.tag = ScoreTag::undir;
    else if (tag_name == "bidir")
        v.tag = ScoreTag::bidir;
    else
        throw std::invalid_argument("score variant: unknown tag '" + tag_name + "'");
    v.validate();
    return v;
}

double score_node(const DirectedAdjacency& adj, long long x, const ScoreVariant& variant) {
    variant.validate();
    if (x < 0 || x >= adj.node_count())
        throw std::invalid_argument("score_node: unknown node");
    auto px = adj.config.point(x);
    double s = 0.0;
    for (long long y : adj.out(x)) {
        const double len = dist(px, adj.config.point(y));
        const double contrib = std::pow(len, variant.alpha);
        switch (variant.tag) {
            case ScoreTag::dir: s += contrib; break;
            case ScoreTag::undir:
                s += (adj.has_arc(y, x) ? 0.5 : 1.0) * contrib;
                break;
            case ScoreTag::bidir:
                s += (adj.has_arc(y, x) ? 0.5 : 0.0) * contrib;
                break;
        }
    }
    return s;
}

ScoreTable build_score_table(const DirectedAdjacency& adj, const Box& window,
                             const ScoreVariant& variant) {
    variant.validate();
    if (window.dim() != adj.config.dim())
        throw std::invalid_argument("score table: window dimension mismatch");
    ScoreTable t;
    t.config = adj.config;
    t.window = window;
    t.variant = variant;
    const long long n = adj.node_count();
    for (long long i = 0; i < n; ++i) {
        if (!window.contains(adj.config.point(i))) continue;
        t.node_index.push_back(i);
        t.per_node_score.push_back(score_node(adj, i, variant));
    }
    return t;
}

double functional_hn(const DirectedAdjacency& adj, const Box& window, double n_norm,
                     const ScoreVariant& variant) {
    if (!(n_norm > 0.0)) throw std::invalid_argument("functional_hn: n_norm must be > 0");
    const ScoreTable t = build_score_table(adj, window, variant);
    double s = 0.0;
    for (double v : t.per_node_score) s += v;
    return s / std::pow(n_norm, adj.config.dim());
}

std::vector<double> order_statistics(const ScoreTable& table, long long m) {
    if (m < 1) throw std::invalid_argument("order_statistics: m must be >= 1");
    std::vector<double> top(table.per_node_score);
    std::sort(top.begin(), top.end(), std::greater<>());
    top.resize(static_cast<std::size_t>(m), 0.0);
    return top;
}

MuEstimate estimate_mu(const GraphModel& model, const ScoreVariant& variant,
                       double calib_box_side, double margin, long long replicas, Seed seed,
                       int workers) {
    model.validate();
    variant.validate();
    if (replicas < 2) throw std::invalid_argument("estimate_mu: replicas must be >= 2");
    if (!(calib_box_side > 0.0))
        throw std::invalid_argument("estimate_mu: calibration box side must be > 0");
    if (!(margin > 0.0) || margin > calib_box_side / 2.0)
        throw std::invalid_argument(
            "estimate_mu: margin must lie in (0, calib_box_side/2]");

    const Box box = Box::cube(model.dim, calib_box_side);
    const bool track_radius = model.dim <= 2;
    const std::vector<Cone> cones = track_radius ? cone_cover(model.dim) : std::vector<Cone>{};
    const int c_sta = c_sta_default(model);
    const std::vector<double> origin(model.dim, 0.0);

    std::vector<double> scores(replicas, 0.0);
    std::vector<double> radii(replicas, 0.0);
    parallel_for(replicas, workers, [&](long long r) {
        PointConfig pts = sample_poisson(box, 1.0, seed.substream(r));
        if (pts.contains_point(origin)) pts = pts.without(pts.index_of(origin));
        pts.append(origin);
        const long long origin_idx = pts.size() - 1;
        const DirectedAdjacency adj = build_adjacency(pts, model);
        scores[r] = score_node(adj, origin_idx, variant);
        if (track_radius)
            radii[r] = stabilization_radii(pts, origin_idx, cones, c_sta).overall;
    });

    MuEstimate est;
    est.replicas = replicas;
    double sum = 0.0;
    for (double s : scores) sum += s;
    est.mean = sum / static_cast<double>(replicas);
    double ss = 0.0;
    for (double s : scores) ss += (s - est.mean) * (s - est.mean);
    est.std_error = std::sqrt(ss / (static_cast<double>(replicas) *
                                    static_cast<double>(replicas - 1)));

    if (track_radius) {
        std::sort(radii.begin(), radii.end());
        const auto idx = static_cast<std::size_t>(
            std::min<double>(static_cast<double>(replicas - 1),
                             std::ceil(0.999 * static_cast<double>(replicas)) - 1.0));
        est.radius_p999 = radii[idx];
        est.margin_warning = !(est.radius_p999 <= margin);
    } else {
        est.radius_p999 = std::numeric_limits<double>::quiet_NaN();
        est.margin_warning = false;
    }
    return est;
}

double mu_closed_form_nng_dir(int dim, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("mu closed form: alpha must be > 0");
    const double kappa = unit_ball_volume(dim);
    return std::pow(kappa, -alpha / dim) * std::tgamma(alpha / dim + 1.0);
}

void write_scores_csv(const ScoreTable& table, const std::string& path,
                      const std::string& audit_json) {
    const int d = table.config.dim();
    std::string out;
    if (!audit_json.empty()) out += audit_comment_block(audit_json);
    out += "node_index";
    for (int j = 1; j <= d; ++j) out += ",x_" + std::to_string(j);
    out += ",score\n";
    for (std::size_t row = 0; row < table.node_index.size(); ++row) {
        const long long i = table.node_index[row];
        out += std::to_string(i);
        auto p = table.config.point(i);
        for (int j = 0; j < d; ++j) {
            out += ',';
            out += format_g17(p[j]);
        }
        out += ',';
        out += format_g17(table.per_node_score[row]);
        out += '\n';
    }
    write_text_file(path, out);
}

}  // namespace rarenet
