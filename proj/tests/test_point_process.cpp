#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "point_process.hpp"
#include "textio.hpp"

using namespace rarenet;

namespace {

std::string temp_path(const std::string& name) {
    return std::string("/tmp/rarenet_test_") + name;
}

}  // namespace

TEST_CASE("binomial sampling has exact count inside the box") {
    const Box box = Box::cube(2, 5.0);
    const PointConfig pts = sample_binomial(box, 137, Seed{1, 0});
    CHECK(pts.size() == 137);
    CHECK(pts.dim() == 2);
    for (long long i = 0; i < pts.size(); ++i) CHECK(box.contains(pts.point(i)));
}

TEST_CASE("poisson sampling matches mean count and stays inside") {
    const Box box = Box::cube(2, 10.0);  // volume 100
    double total = 0.0;
    const int reps = 400;
    for (int rep = 0; rep < reps; ++rep) {
        const PointConfig pts = sample_poisson(box, 1.0, Seed{2, static_cast<std::uint64_t>(rep)});
        total += static_cast<double>(pts.size());
        if (rep == 0)
            for (long long i = 0; i < pts.size(); ++i) CHECK(box.contains(pts.point(i)));
    }
    const double mean = total / reps;  // SE = sqrt(100/400) = 0.5
    CHECK(std::abs(mean - 100.0) < 3.0);
}

TEST_CASE("poisson sampling respects intensity") {
    const Box box = Box::cube(1, 50.0);
    double total = 0.0;
    for (int rep = 0; rep < 200; ++rep)
        total += static_cast<double>(
            sample_poisson(box, 2.5, Seed{3, static_cast<std::uint64_t>(rep)}).size());
    CHECK(std::abs(total / 200 - 125.0) < 5.0);
}

TEST_CASE("sampling is deterministic in the seed") {
    const Box box = Box::cube(3, 4.0);
    const PointConfig a = sample_poisson(box, 1.0, Seed{9, 7});
    const PointConfig b = sample_poisson(box, 1.0, Seed{9, 7});
    CHECK(a == b);
    const PointConfig c = sample_poisson(box, 1.0, Seed{9, 8});
    CHECK_FALSE(a == c);
}

TEST_CASE("translated and scaled transforms") {
    PointConfig pts(2, {1.0, 2.0, -3.0, 4.0});
    const std::vector<double> shift{10.0, -1.0};
    const PointConfig moved = pts.translated(shift);
    CHECK(moved.point(0)[0] == doctest::Approx(11.0));
    CHECK(moved.point(1)[1] == doctest::Approx(3.0));
    const PointConfig scaled = pts.scaled(0.5);
    CHECK(scaled.point(0)[0] == doctest::Approx(0.5));
    CHECK(scaled.point(1)[0] == doctest::Approx(-1.5));
}

TEST_CASE("without, with, index_of, contains_point") {
    PointConfig pts(2, {0.0, 0.0, 1.0, 1.0, 2.0, 2.0});
    const std::vector<double> q{1.0, 1.0};
    CHECK(pts.index_of(q) == 1);
    CHECK(pts.contains_point(q));
    const PointConfig fewer = pts.without(1);
    CHECK(fewer.size() == 2);
    CHECK_FALSE(fewer.contains_point(q));
    const PointConfig more = fewer.with(q);
    CHECK(more.size() == 3);
    CHECK(more.contains_point(q));
}

TEST_CASE("points csv round trip is exact") {
    const Box box = Box::cube(2, 7.0);
    const PointConfig pts = sample_poisson(box, 1.5, Seed{11, 0});
    const std::string path = temp_path("pts_roundtrip.csv");
    write_points_csv(pts, path, "{\"note\":\"roundtrip\"}");
    const PointConfig back = read_points_csv(path);
    CHECK(back == pts);
    std::remove(path.c_str());
}

TEST_CASE("csv writer emits an audit comment that the reader skips") {
    PointConfig pts(1, {0.25, -1.75});
    const std::string path = temp_path("pts_audit.csv");
    write_points_csv(pts, path, "{\"seed\":5}");
    const std::string text = read_text_file(path);
    CHECK(text.find("# config") != std::string::npos);
    CHECK(read_points_csv(path) == pts);
    std::remove(path.c_str());
}

TEST_CASE("empty point set round trips") {
    const PointConfig pts = PointConfig::empty(3);
    CHECK(pts.size() == 0);
    const std::string path = temp_path("pts_empty.csv");
    write_points_csv(pts, path);
    CHECK(read_points_csv(path) == pts);
    std::remove(path.c_str());
}

TEST_CASE("format_g17 round trips doubles exactly") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 3.141592653589793}) {
        CHECK(parse_double(format_g17(v)) == v);
    }
}
