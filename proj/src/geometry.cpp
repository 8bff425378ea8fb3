#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "parallel.hpp"

namespace rarenet {

double dist2(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double dist(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(dist2(a, b));
}

double norm2(std::span<const double> a) {
    double s = 0.0;
    for (double c : a) s += c * c;
    return s;
}

double Box::volume() const {
    double v = 1.0;
    for (int i = 0; i < dim(); ++i) v *= upper[i] - lower[i];
    return v;
}

double Box::half_diagonal() const {
    double s = 0.0;
    for (int i = 0; i < dim(); ++i) {
        double h = 0.5 * (upper[i] - lower[i]);
        s += h * h;
    }
    return std::sqrt(s);
}

bool Box::contains(std::span<const double> p) const {
    for (int i = 0; i < dim(); ++i)
        if (p[i] < lower[i] || p[i] > upper[i]) return false;
    return true;
}

Box Box::inflated(double margin) const {
    Box b = *this;
    for (int i = 0; i < dim(); ++i) {
        b.lower[i] -= margin;
        b.upper[i] += margin;
    }
    return b;
}

Box Box::inflated_relative(double factor) const {
    Box b = *this;
    for (int i = 0; i < dim(); ++i) {
        double pad = factor * (upper[i] - lower[i]);
        b.lower[i] -= pad;
        b.upper[i] += pad;
    }
    return b;
}

Box Box::cube(int dim, double side) {
    if (dim < 1) throw std::invalid_argument("box dimension must be >= 1");
    if (!(side > 0.0)) throw std::invalid_argument("box side must be positive");
    Box b;
    b.lower.assign(dim, -side / 2.0);
    b.upper.assign(dim, side / 2.0);
    return b;
}

double unit_ball_volume(int dim) {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    return std::pow(kPi, dim / 2.0) / std::tgamma(dim / 2.0 + 1.0);
}

double ball_volume(int dim, double radius) {
    if (radius < 0.0) throw std::invalid_argument("radius must be >= 0");
    return unit_ball_volume(dim) * std::pow(radius, dim);
}

double angle_at(std::span<const double> v, std::span<const double> a,
                std::span<const double> b) {
    double num = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        double da = a[i] - v[i];
        double db = b[i] - v[i];
        num += da * db;
        na += da * da;
        nb += db * db;
    }
    if (na == 0.0 || nb == 0.0)
        throw std::invalid_argument("angle_at: coincident points");
    double c = num / std::sqrt(na * nb);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

Lens make_lens(std::span<const double> e1, std::span<const double> e2, double beta) {
    if (e1.size() != 2 || e2.size() != 2)
        throw std::invalid_argument("lens is 2-D only");
    if (!(beta >= 1.0)) throw std::invalid_argument("lens requires beta >= 1");
    double ex = e2[0] - e1[0], ey = e2[1] - e1[1];
    double len2 = ex * ex + ey * ey;
    if (len2 == 0.0) throw std::invalid_argument("lens endpoints coincide");
    double len = std::sqrt(len2);
    double mx = 0.5 * (e1[0] + e2[0]), my = 0.5 * (e1[1] + e2[1]);
    Lens l;
    l.radius2 = 0.25 * beta * beta * len2;
    l.radius = std::sqrt(l.radius2);
    // center offset along the unit normal: sqrt(R^2 - (len/2)^2)
    double h2 = l.radius2 - 0.25 * len2;
    double h = h2 > 0.0 ? std::sqrt(h2) : 0.0;
    double nx = -ey / len, ny = ex / len;
    l.c1[0] = mx + h * nx;
    l.c1[1] = my + h * ny;
    l.c2[0] = mx - h * nx;
    l.c2[1] = my - h * ny;
    return l;
}

bool Lens::interior_contains(std::span<const double> p) const {
    double dx = p[0] - c1[0], dy = p[1] - c1[1];
    if (dx * dx + dy * dy < radius2) return true;
    dx = p[0] - c2[0];
    dy = p[1] - c2[1];
    return dx * dx + dy * dy < radius2;
}

bool Lens::contains(std::span<const double> p) const {
    double dx = p[0] - c1[0], dy = p[1] - c1[1];
    if (dx * dx + dy * dy <= radius2) return true;
    dx = p[0] - c2[0];
    dy = p[1] - c2[1];
    return dx * dx + dy * dy <= radius2;
}

Box Lens::bounding() const {
    Box b;
    b.lower = {std::min(c1[0], c2[0]) - radius, std::min(c1[1], c2[1]) - radius};
    b.upper = {std::max(c1[0], c2[0]) + radius, std::max(c1[1], c2[1]) + radius};
    return b;
}

bool Cone::contains(std::span<const double> p) const {
    double num = 0.0, np = 0.0;
    for (std::size_t i = 0; i < apex.size(); ++i) {
        double d = p[i] - apex[i];
        num += d * axis[i];
        np += d * d;
    }
    if (np == 0.0) return true;  // the apex belongs to every cone
    double c = num / std::sqrt(np);
    return std::acos(std::clamp(c, -1.0, 1.0)) <= half_angle;
}

std::vector<Cone> cone_cover(int dim, double half_angle, double offset) {
    if (!(half_angle > 0.0 && half_angle < kPi / 2.0))
        throw std::invalid_argument("cone half-angle must lie in (0, pi/2)");
    if (dim == 1) {
        Cone plus{{0.0}, {1.0}, half_angle};
        Cone minus{{0.0}, {-1.0}, half_angle};
        return {plus, minus};
    }
    if (dim != 2)
        throw std::invalid_argument("cone_cover supports d in {1,2} only");
    double sector = 2.0 * half_angle;
    int count = static_cast<int>(std::ceil(2.0 * kPi / sector - 1e-9));
    std::vector<Cone> cones;
    cones.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        double lo = offset + i * sector;
        // reject boundaries parallel to the axes
        for (double boundary : {lo, lo + sector}) {
            double m = std::fmod(std::fmod(boundary, kPi / 2.0) + kPi / 2.0, kPi / 2.0);
            if (std::min(m, kPi / 2.0 - m) < 1e-9)
                throw std::invalid_argument("cone boundary parallel to an axis; adjust offset");
        }
        double mid = lo + half_angle;
        cones.push_back(Cone{{0.0, 0.0}, {std::cos(mid), std::sin(mid)}, half_angle});
    }
    return cones;
}

std::vector<Cone> cone_cover(int dim) {
    return cone_cover(dim, kDefaultConeHalfAngle, kDefaultConeOffset);
}

Region ball_union_region(std::vector<std::vector<double>> centers,
                         std::vector<double> radii) {
    if (centers.size() != radii.size())
        throw std::invalid_argument("ball_union_region: size mismatch");
    if (centers.empty()) throw std::invalid_argument("ball_union_region: empty");
    int dim = static_cast<int>(centers[0].size());
    Box b;
    b.lower.assign(dim, std::numeric_limits<double>::infinity());
    b.upper.assign(dim, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < centers.size(); ++i) {
        if (static_cast<int>(centers[i].size()) != dim)
            throw std::invalid_argument("ball_union_region: mixed dimensions");
        if (radii[i] < 0.0) throw std::invalid_argument("negative radius");
        for (int c = 0; c < dim; ++c) {
            b.lower[c] = std::min(b.lower[c], centers[i][c] - radii[i]);
            b.upper[c] = std::max(b.upper[c], centers[i][c] + radii[i]);
        }
    }
    auto sdf = [centers = std::move(centers), radii = std::move(radii)](
                   std::span<const double> p) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < centers.size(); ++i)
            best = std::min(best, dist(centers[i], p) - radii[i]);
        return best;
    };
    Region r;
    r.dim = dim;
    r.bounding = std::move(b);
    r.contains = [sdf](std::span<const double> p) { return sdf(p) < 0.0; };
    r.signed_distance = sdf;
    return r;
}

VolumeEstimate region_volume_mc(const Region& region, long long samples, Seed seed,
                                int workers) {
    if (samples <= 0) throw std::invalid_argument("mc volume needs samples > 0");
    int dim = region.dim;
    double boxvol = region.bounding.volume();
    constexpr long long kBlock = 65536;
    long long blocks = (samples + kBlock - 1) / kBlock;
    std::vector<long long> hits(static_cast<std::size_t>(blocks), 0);
    parallel_for(blocks, workers, [&](long long b) {
        Rng rng(seed.substream(static_cast<std::uint64_t>(b)));
        long long lo = b * kBlock;
        long long hi = std::min(samples, lo + kBlock);
        std::vector<double> p(static_cast<std::size_t>(dim));
        long long h = 0;
        for (long long i = lo; i < hi; ++i) {
            rng.point_in_box(region.bounding.lower, region.bounding.upper, p);
            if (region.contains(p)) ++h;
        }
        hits[static_cast<std::size_t>(b)] = h;
    });
    long long total = 0;
    for (long long h : hits) total += h;
    double p = double(total) / double(samples);
    VolumeEstimate est;
    est.value = boxvol * p;
    est.std_error = boxvol * std::sqrt(std::max(0.0, p * (1.0 - p) / double(samples)));
    est.method = VolumeMethod::monte_carlo;
    est.samples_or_depth = samples;
    return est;
}

namespace {

struct QuadCell {
    double x, y, w, h;
};

// -1 outside, +1 inside, 0 undecided
int classify_cell(const Region& region, const QuadCell& c, int level, int min_uniform_depth) {
    if (region.signed_distance) {
        double mid[2] = {c.x + 0.5 * c.w, c.y + 0.5 * c.h};
        double s = region.signed_distance(std::span<const double>(mid, 2));
        double rad = 0.5 * std::hypot(c.w, c.h);
        if (s <= -rad) return 1;
        if (s >= rad) return -1;
        return 0;
    }
    double xs[3] = {c.x, c.x + 0.5 * c.w, c.x + c.w};
    double ys[3] = {c.y, c.y + 0.5 * c.h, c.y + c.h};
    double probes[5][2] = {{xs[0], ys[0]}, {xs[2], ys[0]}, {xs[0], ys[2]},
                           {xs[2], ys[2]}, {xs[1], ys[1]}};
    int in_count = 0;
    for (auto& p : probes)
        if (region.contains(std::span<const double>(p, 2))) ++in_count;
    if (in_count == 5) return level >= min_uniform_depth ? 1 : 0;
    if (in_count == 0) return level >= min_uniform_depth ? -1 : 0;
    return 0;
}

}  // namespace

VolumeEstimate region_volume_quadrature(const Region& region, double rel_tol,
                                        int max_depth) {
    if (region.dim != 2)
        throw std::invalid_argument("quadrature volume is 2-D only");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");
    if (max_depth < 1 || max_depth > 24)
        throw std::invalid_argument("max_depth out of range");
    const int min_uniform_depth = 3;
    std::vector<QuadCell> frontier{QuadCell{region.bounding.lower[0],
                                            region.bounding.lower[1],
                                            region.bounding.upper[0] - region.bounding.lower[0],
                                            region.bounding.upper[1] - region.bounding.lower[1]}};
    double inside = 0.0;
    double pending = 0.0;
    int level = 0;
    for (;; ++level) {
        std::vector<QuadCell> undecided;
        pending = 0.0;
        for (const auto& c : frontier) {
            int cls = classify_cell(region, c, level, min_uniform_depth);
            if (cls > 0) {
                inside += c.w * c.h;
            } else if (cls == 0) {
                undecided.push_back(c);
                pending += c.w * c.h;
            }
        }
        bool converged = pending <= rel_tol * std::max(inside + 0.5 * pending, 1e-300);
        if (undecided.empty() || level >= max_depth || converged) break;
        frontier.clear();
        frontier.reserve(undecided.size() * 4);
        for (const auto& c : undecided) {
            double w = 0.5 * c.w, h = 0.5 * c.h;
            frontier.push_back({c.x, c.y, w, h});
            frontier.push_back({c.x + w, c.y, w, h});
            frontier.push_back({c.x, c.y + h, w, h});
            frontier.push_back({c.x + w, c.y + h, w, h});
        }
    }
    VolumeEstimate est;
    est.value = inside + 0.5 * pending;
    est.bracket = pending;
    est.method = VolumeMethod::quadrature;
    est.samples_or_depth = level;
    return est;
}

namespace {

double orient(std::span<const double> a, std::span<const double> b,
              std::span<const double> c) {
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

bool on_segment(std::span<const double> a, std::span<const double> b,
                std::span<const double> p) {
    return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) &&
           std::min(a[1], b[1]) <= p[1] && p[1] <= std::max(a[1], b[1]);
}

}  // namespace

bool segments_intersect(std::span<const double> a0, std::span<const double> a1,
                        std::span<const double> b0, std::span<const double> b1) {
    double d1 = orient(a0, a1, b0);
    double d2 = orient(a0, a1, b1);
    double d3 = orient(b0, b1, a0);
    double d4 = orient(b0, b1, a1);
    if (((d1 > 0) != (d2 > 0)) && d1 != 0 && d2 != 0 &&
        ((d3 > 0) != (d4 > 0)) && d3 != 0 && d4 != 0)
        return true;
    if (d1 == 0 && on_segment(a0, a1, b0)) return true;
    if (d2 == 0 && on_segment(a0, a1, b1)) return true;
    if (d3 == 0 && on_segment(b0, b1, a0)) return true;
    if (d4 == 0 && on_segment(b0, b1, a1)) return true;
    return false;
}

bool point_in_triangle(std::span<const double> p, std::span<const double> t0,
                       std::span<const double> t1, std::span<const double> t2) {
    double d0 = orient(t0, t1, p);
    double d1 = orient(t1, t2, p);
    double d2 = orient(t2, t0, p);
    bool has_neg = d0 < 0 || d1 < 0 || d2 < 0;
    bool has_pos = d0 > 0 || d1 > 0 || d2 > 0;
    return !(has_neg && has_pos);
}

bool segment_intersects_triangle(std::span<const double> s0, std::span<const double> s1,
                                 std::span<const double> t0, std::span<const double> t1,
                                 std::span<const double> t2) {
    if (point_in_triangle(s0, t0, t1, t2) || point_in_triangle(s1, t0, t1, t2))
        return true;
    return segments_intersect(s0, s1, t0, t1) || segments_intersect(s0, s1, t1, t2) ||
           segments_intersect(s0, s1, t2, t0);
}

}  // namespace rarenet
