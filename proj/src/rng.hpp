#pragma once

#include <cstdint>
#include <span>

namespace rarenet {

// Hierarchical seed: (root, stream) pair. Streams derived via substream() are
// statistically independent, so replica i can draw from substream(i) without
// coordination and results do not depend on scheduling.
struct Seed {
    std::uint64_t root = 0;
    std::uint64_t stream = 0;

    Seed substream(std::uint64_t i) const;
    bool operator==(const Seed&) const = default;
};

// Counter-based generator (splitmix64 over an incrementing counter). Every
// output is a pure function of (seed, draw index), which keeps runs replayable
// and worker-count invariant.
class Rng {
  public:
    explicit Rng(Seed s);

    std::uint64_t next_u64();
    double u01();  // uniform on (0,1]
    double uniform(double lo, double hi);
    long long poisson(double mean);
    std::uint64_t below(std::uint64_t n);  // uniform on {0,...,n-1}
    void point_in_box(std::span<const double> lo, std::span<const double> hi,
                      std::span<double> out);
    void point_in_ball(double radius, std::span<double> out);
    void unit_vector(std::span<double> out);

  private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

}  // namespace rarenet
