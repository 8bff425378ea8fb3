#pragma once

#include <span>
#include <string>
#include <vector>

#include "point_process.hpp"

namespace rarenet {

enum class GraphKind { knn, beta_skeleton };

struct GraphModel {
    GraphKind kind = GraphKind::knn;
    int dim = 2;
    int k = 1;         // knn only
    double beta = 2.0;  // beta_skeleton only

    static GraphModel knn_model(int dim, int k);
    static GraphModel beta_model(double beta);

    void validate() const;
    std::string name() const;
};

// Out-neighbor lists in CSR form; targets ascending per node. The transpose
// (in-neighbor lists) is materialized at build time.
struct DirectedAdjacency {
    PointConfig config;
    GraphModel model;
    std::vector<long long> offsets;     // size n+1
    std::vector<long long> targets;
    std::vector<long long> in_offsets;  // size n+1
    std::vector<long long> in_targets;

    long long node_count() const { return config.size(); }
    long long arc_count() const { return static_cast<long long>(targets.size()); }
    std::span<const long long> out(long long i) const {
        return {targets.data() + offsets[i],
                static_cast<std::size_t>(offsets[i + 1] - offsets[i])};
    }
    std::span<const long long> in(long long i) const {
        return {in_targets.data() + in_offsets[i],
                static_cast<std::size_t>(in_offsets[i + 1] - in_offsets[i])};
    }
    bool has_arc(long long i, long long j) const;
    // sorted union of out(i) and in(i)
    std::vector<long long> in_out(long long i) const;
};

double knn_distance(const PointConfig& config, long long x, int j);

// total order used to rank neighbor candidates of a query point: squared
// distance, ties broken by the candidate's coordinates ascending
bool neighbor_closer(std::span<const double> query, std::span<const double> a,
                     std::span<const double> b);

DirectedAdjacency build_adjacency(const PointConfig& config, const GraphModel& model);
DirectedAdjacency build_adjacency_brute(const PointConfig& config, const GraphModel& model);

// Uniform-grid point locator sized so cells hold O(1) points on average.
class GridIndex {
  public:
    explicit GridIndex(const PointConfig& config);

    // indices of points within Chebyshev ring `ring` of the cell holding p
    void collect_ring(std::span<const double> p, long long ring,
                      std::vector<long long>& out) const;
    // indices of points whose cells overlap the box
    void collect_box(const Box& box, std::vector<long long>& out) const;
    // smallest R such that rings 0..R from p's cell cover the whole grid
    long long max_ring(std::span<const double> p) const;
    double cell_side() const { return cell_; }

  private:
    long long cell_of(std::span<const double> p, std::vector<long long>& tmp) const;
    long long flatten(const std::vector<long long>& cell) const;

    const PointConfig* config_;
    int dim_;
    double cell_;
    std::vector<double> origin_;
    std::vector<long long> extents_;
    std::vector<long long> cell_offsets_;
    std::vector<long long> cell_points_;
};

void write_edges_csv(const DirectedAdjacency& adj, const std::string& path,
                     const std::string& audit_json = "");

}  // namespace rarenet
