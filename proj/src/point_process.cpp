#include "point_process.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "textio.hpp"

namespace rarenet {

PointConfig::PointConfig(int dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
    validate();
}

PointConfig PointConfig::empty(int dim) {
    if (dim < 1) throw std::invalid_argument("PointConfig: dim must be >= 1");
    PointConfig pc;
    pc.dim_ = dim;
    return pc;
}

void PointConfig::validate() const {
    if (dim_ < 1) throw std::invalid_argument("PointConfig: dim must be >= 1");
    if (coords_.size() % dim_ != 0)
        throw std::invalid_argument("PointConfig: coord count not divisible by dim");
    for (double c : coords_)
        if (!std::isfinite(c)) throw std::invalid_argument("PointConfig: non-finite coordinate");
    std::map<std::vector<double>, long long> seen;
    const long long n = size();
    for (long long i = 0; i < n; ++i) {
        std::vector<double> key(point(i).begin(), point(i).end());
        auto [it, fresh] = seen.emplace(std::move(key), i);
        if (!fresh) throw std::invalid_argument("PointConfig: duplicate point");
    }
}

void PointConfig::append(std::span<const double> p) {
    if (static_cast<int>(p.size()) != dim_)
        throw std::invalid_argument("PointConfig::append: dimension mismatch");
    for (double c : p)
        if (!std::isfinite(c)) throw std::invalid_argument("PointConfig::append: non-finite coordinate");
    if (contains_point(p)) throw std::invalid_argument("PointConfig::append: duplicate point");
    coords_.insert(coords_.end(), p.begin(), p.end());
}

PointConfig PointConfig::translated(std::span<const double> shift) const {
    if (static_cast<int>(shift.size()) != dim_)
        throw std::invalid_argument("PointConfig::translated: dimension mismatch");
    PointConfig out;
    out.dim_ = dim_;
    out.coords_ = coords_;
    const long long n = size();
    for (long long i = 0; i < n; ++i)
        for (int j = 0; j < dim_; ++j) out.coords_[i * dim_ + j] += shift[j];
    return out;
}

PointConfig PointConfig::scaled(double factor) const {
    if (!std::isfinite(factor) || factor <= 0.0)
        throw std::invalid_argument("PointConfig::scaled: factor must be positive and finite");
    PointConfig out;
    out.dim_ = dim_;
    out.coords_ = coords_;
    for (double& c : out.coords_) c *= factor;
    return out;
}

PointConfig PointConfig::without(long long index) const {
    if (index < 0 || index >= size())
        throw std::out_of_range("PointConfig::without: index out of range");
    PointConfig out;
    out.dim_ = dim_;
    out.coords_.reserve(coords_.size() - dim_);
    out.coords_.insert(out.coords_.end(), coords_.begin(), coords_.begin() + index * dim_);
    out.coords_.insert(out.coords_.end(), coords_.begin() + (index + 1) * dim_, coords_.end());
    return out;
}

PointConfig PointConfig::with(std::span<const double> p) const {
    PointConfig out = *this;
    out.append(p);
    return out;
}

long long PointConfig::index_of(std::span<const double> p) const {
    if (static_cast<int>(p.size()) != dim_) return -1;
    const long long n = size();
    for (long long i = 0; i < n; ++i) {
        bool same = true;
        for (int j = 0; j < dim_; ++j)
            if (coords_[i * dim_ + j] != p[j]) {
                same = false;
                break;
            }
        if (same) return i;
    }
    return -1;
}

PointConfig sample_poisson(const Box& box, double intensity, Seed seed) {
    if (!(intensity > 0.0) || !std::isfinite(intensity))
        throw std::invalid_argument("sample_poisson: intensity must be positive and finite");
    Rng rng(seed);
    const double mean = intensity * box.volume();
    const long long count = rng.poisson(mean);
    const int dim = static_cast<int>(box.lower.size());
    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(count) * dim);
    std::vector<double> p(dim);
    for (long long i = 0; i < count; ++i) {
        rng.point_in_box(box.lower, box.upper, p);
        coords.insert(coords.end(), p.begin(), p.end());
    }
    return PointConfig(dim, std::move(coords));
}

PointConfig sample_binomial(const Box& box, long long count, Seed seed) {
    if (count < 0) throw std::invalid_argument("sample_binomial: count must be >= 0");
    Rng rng(seed);
    const int dim = static_cast<int>(box.lower.size());
    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(count) * dim);
    std::vector<double> p(dim);
    for (long long i = 0; i < count; ++i) {
        rng.point_in_box(box.lower, box.upper, p);
        coords.insert(coords.end(), p.begin(), p.end());
    }
    return PointConfig(dim, std::move(coords));
}

void write_points_csv(const PointConfig& pts, const std::string& path,
                      const std::string& audit_json) {
    std::string out;
    out += "dim=" + std::to_string(pts.dim()) + "\n";
    const long long n = pts.size();
    for (long long i = 0; i < n; ++i) {
        auto p = pts.point(i);
        for (int j = 0; j < pts.dim(); ++j) {
            if (j) out += ',';
            out += format_g17(p[j]);
        }
        out += '\n';
    }
    if (!audit_json.empty()) out += audit_comment_block(audit_json);
    write_text_file(path, out);
}

PointConfig read_points_csv(const std::string& path) {
    const std::string text = read_text_file(path);
    std::istringstream in(text);
    std::string line;
    int dim = -1;
    std::vector<double> coords;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (dim < 0) {
            if (line.rfind("dim=", 0) != 0)
                throw std::runtime_error("read_points_csv: missing dim= header in " + path);
            dim = static_cast<int>(parse_int(line.substr(4)));
            if (dim < 1) throw std::runtime_error("read_points_csv: bad dim in " + path);
            continue;
        }
        auto fields = split_csv_line(line);
        if (static_cast<int>(fields.size()) != dim)
            throw std::runtime_error("read_points_csv: wrong field count in " + path);
        for (const auto& f : fields) coords.push_back(parse_double(f));
    }
    if (dim < 0) throw std::runtime_error("read_points_csv: empty file " + path);
    return PointConfig(dim, std::move(coords));
}

}  // namespace rarenet
