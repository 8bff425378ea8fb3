#include "rng.hpp"

#include <cmath>
#include <stdexcept>

namespace rarenet {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

Seed Seed::substream(std::uint64_t i) const {
    return Seed{root, mix64(stream + kGamma * (i + 1))};
}

Rng::Rng(Seed s) : key_(mix64(mix64(s.root + kGamma) ^ mix64(s.stream + 2 * kGamma))) {}

std::uint64_t Rng::next_u64() { return mix64(key_ + (++ctr_) * kGamma); }

double Rng::u01() { return double((next_u64() >> 11) + 1) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

long long Rng::poisson(double mean) {
    if (!(mean >= 0.0)) throw std::invalid_argument("poisson mean must be >= 0");
    long long n = -1;
    double acc = 0.0;
    do {
        acc += -std::log(u01());
        ++n;
    } while (acc <= mean);
    return n;
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("below(0)");
    // rejection keeps the draw unbiased
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % n;
}

void Rng::point_in_box(std::span<const double> lo, std::span<const double> hi,
                       std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = uniform(lo[i], hi[i]);
}

void Rng::point_in_ball(double radius, std::span<double> out) {
    while (true) {
        double n2 = 0.0;
        for (auto& c : out) {
            c = uniform(-1.0, 1.0);
            n2 += c * c;
        }
        if (n2 <= 1.0) break;
    }
    for (auto& c : out) c *= radius;
}

void Rng::unit_vector(std::span<double> out) {
    while (true) {
        double n2 = 0.0;
        for (auto& c : out) {
            c = uniform(-1.0, 1.0);
            n2 += c * c;
        }
        if (n2 > 1e-12 && n2 <= 1.0) {
            double inv = 1.0 / std::sqrt(n2);
            for (auto& c : out) c *= inv;
            return;
        }
    }
}

}  // namespace rarenet
