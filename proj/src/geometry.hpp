#pragma once

#include <functional>
#include <span>
#include <vector>

#include "rng.hpp"

namespace rarenet {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

double dist2(std::span<const double> a, std::span<const double> b);
double dist(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

struct Box {
    std::vector<double> lower, upper;

    int dim() const { return static_cast<int>(lower.size()); }
    double volume() const;
    double half_diagonal() const;
    bool contains(std::span<const double> p) const;
    Box inflated(double margin) const;           // additive margin per side
    Box inflated_relative(double factor) const;  // grow each side by factor
    static Box cube(int dim, double side);       // centered at the origin

    bool operator==(const Box&) const = default;
};

// Volume of the d-dimensional ball; unit_ball_volume(d) = pi^{d/2}/Gamma(d/2+1).
double unit_ball_volume(int dim);
double ball_volume(int dim, double radius);

// Angle at vertex v between rays v->a and v->b, in [0, pi].
double angle_at(std::span<const double> v, std::span<const double> a,
                std::span<const double> b);

// 2-D lens between e1 and e2: union of the two disks of radius beta*|e1-e2|/2
// that have both endpoints on their boundary, centers on opposite sides of the
// segment. interior_contains() is the open set (endpoints excluded); boundary
// points do not block an edge.
struct Lens {
    double c1[2], c2[2];
    double radius = 0.0;
    // squared radius computed from the squared edge length, so boundary ties
    // classify exactly even when the radius itself rounds
    double radius2 = 0.0;

    bool interior_contains(std::span<const double> p) const;
    bool contains(std::span<const double> p) const;
    Box bounding() const;
};
Lens make_lens(std::span<const double> e1, std::span<const double> e2, double beta);

struct Cone {
    std::vector<double> apex;
    std::vector<double> axis;  // unit vector
    double half_angle = 0.0;

    bool contains(std::span<const double> p) const;
};

// Cones with apex at the origin covering R^d. d=1: the two half-lines.
// d=2: equal sectors of the given half-angle, rotated by `offset` radians so
// no sector boundary is parallel to a coordinate axis. d >= 3 is unsupported.
std::vector<Cone> cone_cover(int dim, double half_angle, double offset);
std::vector<Cone> cone_cover(int dim);

inline constexpr double kDefaultConeHalfAngle = kPi / 8.0;
inline constexpr double kDefaultConeOffset = 0.1;

enum class VolumeMethod { closed_form, monte_carlo, quadrature };

struct VolumeEstimate {
    double value = 0.0;
    double std_error = 0.0;  // 0 for deterministic methods
    double bracket = 0.0;    // unresolved boundary area of the quadrature, else 0
    VolumeMethod method = VolumeMethod::closed_form;
    long long samples_or_depth = 0;
};

// A measurable set given by a membership test on a bounded support. The
// signed-distance hint, when present, must be 1-Lipschitz with the same sign
// as membership; it lets the quadrature classify cells exactly.
struct Region {
    int dim = 0;
    Box bounding;
    std::function<bool(std::span<const double>)> contains;
    std::function<double(std::span<const double>)> signed_distance;
};

// Union of open balls, with exact signed distance min_i(|p-c_i| - r_i).
Region ball_union_region(std::vector<std::vector<double>> centers,
                         std::vector<double> radii);

VolumeEstimate region_volume_mc(const Region& region, long long samples, Seed seed,
                                int workers = 1);

// Deterministic adaptive quadtree quadrature, d=2 only. Cells are classified
// by the signed-distance hint when available (sign-stable inradius test) and
// by corner+center probing otherwise. Refinement stops once the unresolved
// boundary area falls below rel_tol times the running estimate or the depth
// cap is reached; the leftover area is reported as `bracket` and split evenly.
VolumeEstimate region_volume_quadrature(const Region& region, double rel_tol = 1e-3,
                                        int max_depth = 12);

// Planar segment and triangle predicates (closed sets; shared endpoints count
// as intersections).
bool segments_intersect(std::span<const double> a0, std::span<const double> a1,
                        std::span<const double> b0, std::span<const double> b1);
bool point_in_triangle(std::span<const double> p, std::span<const double> t0,
                       std::span<const double> t1, std::span<const double> t2);
bool segment_intersects_triangle(std::span<const double> s0, std::span<const double> s1,
                                 std::span<const double> t0, std::span<const double> t1,
                                 std::span<const double> t2);

}  // namespace rarenet
