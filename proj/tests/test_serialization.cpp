#include <doctest.h>

#include <stdexcept>

#include "serialization.hpp"

using namespace rarenet;

TEST_CASE("model json round trip") {
    const GraphModel knn = GraphModel::knn_model(3, 2);
    const GraphModel back = model_from_json(model_to_json(knn));
    CHECK(back.kind == GraphKind::knn);
    CHECK(back.dim == 3);
    CHECK(back.k == 2);
    const GraphModel beta = GraphModel::beta_model(1.7);
    const GraphModel back2 = model_from_json(model_to_json(beta));
    CHECK(back2.kind == GraphKind::beta_skeleton);
    CHECK(back2.dim == 2);
    CHECK(back2.beta == doctest::Approx(1.7));
}

TEST_CASE("model json rejects bad input") {
    CHECK_THROWS_AS(model_from_json(ordered_json{{"kind", "voronoi"}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        model_from_json(ordered_json{{"kind", "beta_skeleton"}, {"beta", 1.5}, {"dim", 3}}),
        std::invalid_argument);
    CHECK_THROWS(model_from_json(ordered_json{{"kind", "knn"}}));  // missing dim, k
}

TEST_CASE("variant json round trip") {
    const ScoreVariant v = ScoreVariant::parse("bidir", 7.0);
    const ScoreVariant back = variant_from_json(variant_to_json(v));
    CHECK(back.tag == ScoreTag::bidir);
    CHECK(back.alpha == doctest::Approx(7.0));
}

TEST_CASE("seed json round trip and stream default") {
    const Seed s{123456789, 42};
    const Seed back = seed_from_json(seed_to_json(s));
    CHECK(back == s);
    const Seed defaulted = seed_from_json(ordered_json{{"root", 7}});
    CHECK(defaulted.root == 7);
    CHECK(defaulted.stream == 0);
}

TEST_CASE("box json round trip and validation") {
    const Box b = Box::cube(2, 3.0);
    CHECK(box_from_json(box_to_json(b)) == b);
    ordered_json bad;
    bad["lower"] = {0.0, 0.0};
    bad["upper"] = {1.0, -1.0};
    CHECK_THROWS_AS(box_from_json(bad), std::invalid_argument);
}

TEST_CASE("points json round trip with and without expected dim") {
    const PointConfig pts(2, {0.5, -1.5, 2.0, 3.0});
    const ordered_json j = points_to_json(pts);
    CHECK(points_from_json(j) == pts);
    CHECK(points_from_json(j, 2) == pts);
    CHECK_THROWS_AS(points_from_json(j, 3), std::invalid_argument);
}

TEST_CASE("volume json carries the method and uncertainty") {
    VolumeEstimate est;
    est.value = 3.5;
    est.std_error = 0.01;
    est.method = VolumeMethod::monte_carlo;
    est.samples_or_depth = 1000;
    const ordered_json j = volume_to_json(est);
    CHECK(j.at("value").get<double>() == doctest::Approx(3.5));
    CHECK(j.at("method").get<std::string>() == "monte_carlo");
    CHECK(j.at("samples_or_depth").get<long long>() == 1000);
}
