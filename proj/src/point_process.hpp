#pragma once

#include <span>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "rng.hpp"

namespace rarenet {

// Finite labeled point configuration with flat coordinate storage. Points are
// pairwise distinct and finite; both are enforced on construction.
class PointConfig {
  public:
    PointConfig() = default;
    PointConfig(int dim, std::vector<double> coords);

    static PointConfig empty(int dim);

    int dim() const { return dim_; }
    long long size() const {
        return dim_ == 0 ? 0 : static_cast<long long>(coords_.size()) / dim_;
    }
    std::span<const double> point(long long i) const {
        return {coords_.data() + i * dim_, static_cast<std::size_t>(dim_)};
    }
    const std::vector<double>& coords() const { return coords_; }

    void append(std::span<const double> p);

    PointConfig translated(std::span<const double> shift) const;
    PointConfig scaled(double factor) const;
    PointConfig without(long long index) const;
    PointConfig with(std::span<const double> p) const;
    // exact coordinate match; -1 if absent
    long long index_of(std::span<const double> p) const;
    bool contains_point(std::span<const double> p) const { return index_of(p) >= 0; }

    bool operator==(const PointConfig&) const = default;

  private:
    void validate() const;

    int dim_ = 0;
    std::vector<double> coords_;
};

PointConfig sample_poisson(const Box& box, double intensity, Seed seed);
PointConfig sample_binomial(const Box& box, long long count, Seed seed);

// CSV layout: first non-comment line `dim=<d>`, then one point per line with
// full 17-significant-digit coordinates. '#' lines are ignored; an optional
// audit trailer carries the generating config.
void write_points_csv(const PointConfig& pts, const std::string& path,
                      const std::string& audit_json = "");
PointConfig read_points_csv(const std::string& path);

}  // namespace rarenet
