#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <cstdio>
#include <vector>

#include "graphs.hpp"
#include "textio.hpp"

using namespace rarenet;

namespace {

bool same_adjacency(const DirectedAdjacency& a, const DirectedAdjacency& b) {
    return a.offsets == b.offsets && a.targets == b.targets;
}

}  // namespace

TEST_CASE("knn on three collinear points") {
    // points at 0, 1, 3: nearest neighbors are 1->0 is wrong only if distance
    // comparison fails; 0 picks 1, 1 picks 0, 2 picks 1
    const PointConfig pts(1, {0.0, 1.0, 3.0});
    const DirectedAdjacency adj = build_adjacency(pts, GraphModel::knn_model(1, 1));
    REQUIRE(adj.arc_count() == 3);
    CHECK(adj.out(0)[0] == 1);
    CHECK(adj.out(1)[0] == 0);
    CHECK(adj.out(2)[0] == 1);
}

TEST_CASE("knn tie falls to the lexicographically smaller candidate") {
    // 0 sits exactly between 1 and 2; the tie goes to the smaller coordinate
    const PointConfig pts(1, {0.0, 2.0, -2.0});
    const DirectedAdjacency adj = build_adjacency(pts, GraphModel::knn_model(1, 1));
    CHECK(adj.out(0)[0] == 2);  // point at -2 wins the tie against +2
}

TEST_CASE("knn k exceeding n-1 throws") {
    const PointConfig pts(2, {0.0, 0.0, 1.0, 0.0});
    CHECK_THROWS_AS(build_adjacency(pts, GraphModel::knn_model(2, 2)),
                    std::invalid_argument);
}

TEST_CASE("gabriel graph on the unit square keeps boundary ties open") {
    // beta = 1: each diagonal's disk has the other two corners exactly on its
    // boundary; open interiors do not block, so all six edges exist
    const PointConfig pts(2, {0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0});
    const DirectedAdjacency adj = build_adjacency(pts, GraphModel::beta_model(1.0));
    CHECK(adj.arc_count() == 12);
    for (long long i = 0; i < 4; ++i) CHECK(adj.out(i).size() == 3);
}

TEST_CASE("beta skeleton drops blocked edges") {
    // midpoint of the long pair sits strictly inside its lens for any beta >= 1
    const PointConfig pts(2, {0.0, 0.0, 4.0, 0.0, 2.0, 0.0});
    for (double beta : {1.0, 1.5, 2.0}) {
        const DirectedAdjacency adj = build_adjacency(pts, GraphModel::beta_model(beta));
        CHECK_FALSE(adj.has_arc(0, 1));
        CHECK(adj.has_arc(0, 2));
        CHECK(adj.has_arc(1, 2));
    }
}

TEST_CASE("larger beta prunes more edges") {
    Rng rng(Seed{21, 0});
    const Box box = Box::cube(2, 6.0);
    const PointConfig pts = sample_binomial(box, 40, Seed{21, 5});
    long long prev = -1;
    for (double beta : {1.0, 1.3, 2.0, 3.0}) {
        const long long arcs =
            build_adjacency(pts, GraphModel::beta_model(beta)).arc_count();
        if (prev >= 0) CHECK(arcs <= prev);
        prev = arcs;
    }
}

TEST_CASE("indexed builder matches brute force on random configs") {
    long long checked = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const Seed s{500 + static_cast<std::uint64_t>(trial), 0};
        for (int dim : {1, 2, 3}) {
            const Box box = Box::cube(dim, 6.0);
            const PointConfig pts =
                sample_binomial(box, 5 + 7 * trial % 120, s.substream(dim));
            for (int k : {1, 2, 3}) {
                if (pts.size() <= k) continue;
                const GraphModel m = GraphModel::knn_model(dim, k);
                CHECK(same_adjacency(build_adjacency(pts, m),
                                     build_adjacency_brute(pts, m)));
                ++checked;
            }
            if (dim == 2) {
                for (double beta : {1.2, 2.0}) {
                    const GraphModel m = GraphModel::beta_model(beta);
                    CHECK(same_adjacency(build_adjacency(pts, m),
                                         build_adjacency_brute(pts, m)));
                    ++checked;
                }
            }
        }
    }
    CHECK(checked > 200);
}

TEST_CASE("duplicate points are rejected") {
    CHECK_THROWS_AS(PointConfig(2, {0.0, 0.0, 1.0, 1.0, 0.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("neighbor_closer is a strict total order on distinct candidates") {
    const std::vector<double> q{0.0, 0.0};
    const std::vector<double> a{1.0, 0.0}, b{0.0, 1.0}, c{-1.0, 0.0};
    // equal distances: ascending lexicographic comparison of coordinates
    CHECK(neighbor_closer(q, c, a));
    CHECK(neighbor_closer(q, b, a));
    CHECK(neighbor_closer(q, c, b));
    CHECK_FALSE(neighbor_closer(q, a, c));
    CHECK_FALSE(neighbor_closer(q, a, a));
    const std::vector<double> near{0.5, 0.0};
    CHECK(neighbor_closer(q, near, c));
}

TEST_CASE("knn_distance returns the jth neighbor distance") {
    const PointConfig pts(2, {0.0, 0.0, 1.0, 0.0, 0.0, 3.0, -5.0, 0.0});
    CHECK(knn_distance(pts, 0, 1) == doctest::Approx(1.0));
    CHECK(knn_distance(pts, 0, 2) == doctest::Approx(3.0));
    CHECK(knn_distance(pts, 0, 3) == doctest::Approx(5.0));
    CHECK_THROWS_AS(knn_distance(pts, 0, 4), std::invalid_argument);
}

TEST_CASE("in_out merges both directions sorted") {
    const PointConfig pts(1, {0.0, 1.0, 3.0});
    const DirectedAdjacency adj = build_adjacency(pts, GraphModel::knn_model(1, 1));
    const std::vector<long long> expected{0, 2};
    CHECK(adj.in_out(1) == expected);
}

TEST_CASE("transpose is consistent with out lists") {
    const PointConfig pts = sample_binomial(Box::cube(2, 8.0), 60, Seed{33, 0});
    const DirectedAdjacency adj = build_adjacency(pts, GraphModel::knn_model(2, 2));
    for (long long i = 0; i < adj.node_count(); ++i)
        for (long long j : adj.out(i)) {
            const auto ins = adj.in(j);
            CHECK(std::find(ins.begin(), ins.end(), i) != ins.end());
        }
}

TEST_CASE("edges csv lists every arc with its length") {
    const PointConfig pts(1, {0.0, 1.0, 3.0});
    const DirectedAdjacency adj = build_adjacency(pts, GraphModel::knn_model(1, 1));
    const std::string path = "/tmp/rarenet_test_edges.csv";
    write_edges_csv(adj, path, "{}");
    const std::string text = read_text_file(path);
    CHECK(text.find("src_index,dst_index,length") != std::string::npos);
    CHECK(text.find("2,1,2") != std::string::npos);
    std::remove(path.c_str());
}
