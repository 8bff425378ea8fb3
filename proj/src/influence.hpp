#pragma once

#include <string>
#include <vector>

#include "scores.hpp"

namespace rarenet {

// A candidate (phi, psi) for the admissible set: psi carries the points, phi
// is the subset marked in in_phi.
struct ConfigPair {
    PointConfig psi;
    std::vector<char> in_phi;  // size #psi, nonzero marks phi membership
    GraphModel model;
    ScoreVariant variant;

    void validate() const;
    long long phi_count() const;
    std::vector<long long> phi_indices() const;
    PointConfig phi() const;
    ConfigPair scaled(double factor) const;

    std::string to_json() const;
    static ConfigPair from_json(const std::string& text);
};

enum class InfluenceMethod { automatic, monte_carlo, quadrature, nng_balls };

struct InfluenceParams {
    InfluenceMethod method = InfluenceMethod::automatic;
    long long mc_samples = 200000;
    double quad_rel_tol = 1e-3;
    int quad_max_depth = 16;
    Seed seed{0, 0};
    int workers = 1;
};

struct InfluenceEstimate {
    VolumeEstimate volume;
    Box bounding;
    std::vector<long long> protected_nodes;
};

// phi plus the out-neighbors of phi, ascending
std::vector<long long> protected_nodes(const ConfigPair& pair, const DirectedAdjacency& adj);

// inserting y removes an out-edge of some protected node
bool in_influence_zone(const ConfigPair& pair, std::span<const double> y);
bool in_influence_zone_brute(const ConfigPair& pair, std::span<const double> y);

// box certified to contain the influence zone, inflated by 1%
Box influence_bounding(const ConfigPair& pair);

InfluenceEstimate influence_volume(const ConfigPair& pair, const InfluenceParams& params);

// the reduced objective for k = 1: volume of the union over phi of the open
// nearest-neighbor balls
InfluenceEstimate nng_ball_volume(const ConfigPair& pair, const InfluenceParams& params);

}  // namespace rarenet
