#pragma once

#include <span>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "graphs.hpp"

namespace rarenet {

// Model constants used by the checkers and the optimizer floor.
long long c_fin2_bound(const GraphModel& model);  // knn only: k * 4^d
int c_sta_default(const GraphModel& model);       // knn: k+1, beta_skeleton: 2
int c_inf_minimum(const GraphModel& model);       // knn: k+1, beta_skeleton: 1
long long c_degree_bound(const GraphModel& model);
long long c_max_constant(const GraphModel& model);
double positivity_floor(const GraphModel& model);

// beta-skeleton angle constants
double beta_gamma(double beta);  // arcsin(1/beta)
double beta_tau(double beta);    // arccos(1/beta)
// Largest certified radius factor c such that a disk of radius c*a centered
// anywhere on an edge at least a/2 from both endpoints keeps distance > c*a
// to the boundary of the edge's two-triangle rhombus. Obtained by numerical
// minimization over center positions and edge lengths, scaled by 0.999.
double certified_disjoint_radius(double beta);
double recorded_edges_bound(double beta);      // per-class removed-edge cap
double fin_bound(const GraphModel& model);     // claimed insertion-impact cap

struct StabilizationRadii {
    std::vector<double> per_cone;  // +inf when a cone never collects c_sta points
    double overall = 0.0;
    int c_sta = 1;
};

struct ConditionReport {
    std::string condition;  // SCALE, FIN, FIN2, STA, CON, INF
    long long trials = 0;
    double worst_observed = 0.0;
    double bound_claimed = 0.0;
    long long violations = 0;
    std::string params_json = "{}";
    std::string to_json() const;
};

long long affected_nodes_on_insert(const PointConfig& config, const GraphModel& model,
                                   std::span<const double> y);
long long long_edge_count(const PointConfig& config, const GraphModel& model, double M);
StabilizationRadii stabilization_radii(const PointConfig& config, long long x,
                                       const std::vector<Cone>& cones, int c_sta);
// whether the cone layout is narrow enough for the model's shielding argument
bool sta_layout_supported(const GraphModel& model, const std::vector<Cone>& cones,
                          std::string* reason = nullptr);

struct ContinuityProbe {
    ConditionReport report;
    double preserved_delta = 0.0;  // largest tested jitter scale with no edge change
    bool sensitive = false;
};
ContinuityProbe continuity_probe(const PointConfig& config, const GraphModel& model,
                                 double delta, long long trials, Seed seed);

bool inf_condition_probe(const PointConfig& psi, const PointConfig& theta,
                         const GraphModel& model);

// beta-skeleton structural gates
ConditionReport check_edge_triangle_separation(double beta, long long trials, Seed seed);
// |f|/|e| of the numerically solved tangent two-edge configuration
double tangent_crossing_ratio(double beta);

// Condition batteries over random Poisson inputs.
ConditionReport check_scale_invariance(const GraphModel& model, long long trials, Seed seed,
                                       int workers = 1);
ConditionReport check_insertion_impact(const GraphModel& model, long long trials, Seed seed,
                                       int workers = 1);
ConditionReport check_long_edges(const GraphModel& model, long long trials, Seed seed,
                                 int workers = 1);
ConditionReport check_stabilization(const GraphModel& model, long long trials, Seed seed,
                                    int workers = 1);
ConditionReport check_continuity(const GraphModel& model, long long trials, Seed seed,
                                 int workers = 1);
ConditionReport check_insertion_monotonicity(const GraphModel& model, long long trials,
                                             Seed seed, int workers = 1);
std::vector<ConditionReport> run_condition_checks(const GraphModel& model, Seed seed,
                                                  int workers = 1, long long trials = 0);

}  // namespace rarenet
