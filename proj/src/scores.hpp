#pragma once

#include <string>
#include <vector>

#include "graphs.hpp"

namespace rarenet {

enum class ScoreTag { dir, undir, bidir };

struct ScoreVariant {
    ScoreTag tag = ScoreTag::dir;
    double alpha = 15.0;

    void validate() const;
    std::string name() const;
    static ScoreVariant parse(const std::string& tag_name, double alpha);
};

// Per-node scores for the nodes lying inside a window; scores are computed
// against the full configuration, so off-window points still act as
// neighbors.
struct ScoreTable {
    PointConfig config;
    Box window;
    ScoreVariant variant;
    std::vector<long long> node_index;   // ascending indices of window nodes
    std::vector<double> per_node_score;  // aligned with node_index
};

double score_node(const DirectedAdjacency& adj, long long x, const ScoreVariant& variant);

ScoreTable build_score_table(const DirectedAdjacency& adj, const Box& window,
                             const ScoreVariant& variant);

// (1/n_norm^d) times the sum of window-node scores
double functional_hn(const DirectedAdjacency& adj, const Box& window, double n_norm,
                     const ScoreVariant& variant);

// m largest window scores, descending, zero padded
std::vector<double> order_statistics(const ScoreTable& table, long long m);

struct MuEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long long replicas = 0;
    // 99.9th percentile of the origin's stabilization radius across replicas;
    // NaN when no cone layout exists for the dimension
    double radius_p999 = 0.0;
    bool margin_warning = false;
};

MuEstimate estimate_mu(const GraphModel& model, const ScoreVariant& variant,
                       double calib_box_side, double margin, long long replicas, Seed seed,
                       int workers = 1);

// mean nearest-neighbor score of the origin under a unit Poisson process:
// integral of P(|D_1|^alpha > t) = kappa_d^{-alpha/d} Gamma(alpha/d + 1)
double mu_closed_form_nng_dir(int dim, double alpha);

void write_scores_csv(const ScoreTable& table, const std::string& path,
                      const std::string& audit_json = "");

}  // namespace rarenet
