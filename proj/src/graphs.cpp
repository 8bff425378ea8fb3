#include "graphs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "textio.hpp"

namespace rarenet {

GraphModel GraphModel::knn_model(int dim, int k) {
    GraphModel m;
    m.kind = GraphKind::knn;
    m.dim = dim;
    m.k = k;
    m.validate();
    return m;
}

GraphModel GraphModel::beta_model(double beta) {
    GraphModel m;
    m.kind = GraphKind::beta_skeleton;
    m.dim = 2;
    m.beta = beta;
    m.validate();
    return m;
}

void GraphModel::validate() const {
    if (dim < 1) throw std::invalid_argument("GraphModel: dim must be >= 1");
    if (kind == GraphKind::knn) {
        if (k < 1) throw std::invalid_argument("GraphModel: knn requires k >= 1");
    } else {
        if (dim != 2) throw std::invalid_argument("GraphModel: beta_skeleton requires dim = 2");
        if (!std::isfinite(beta) || beta < 1.0)
            throw std::invalid_argument("GraphModel: beta_skeleton requires beta >= 1");
    }
}

std::string GraphModel::name() const {
    return kind == GraphKind::knn ? "knn" : "beta_skeleton";
}

namespace {

// Total order on candidate neighbors of a fixed query: squared distance first,
// then ascending lexicographic comparison of the candidate's coordinates.
struct NeighborKey {
    double d2;
    long long index;
};

bool key_less(const PointConfig& pc, const NeighborKey& a, const NeighborKey& b) {
    if (a.d2 != b.d2) return a.d2 < b.d2;
    auto pa = pc.point(a.index);
    auto pb = pc.point(b.index);
    for (int j = 0; j < pc.dim(); ++j) {
        if (pa[j] != pb[j]) return pa[j] < pb[j];
    }
    return false;
}

std::vector<long long> knn_select(const PointConfig& pc, long long i,
                                  std::vector<NeighborKey>& cand, long long needed) {
    auto less = [&pc](const NeighborKey& a, const NeighborKey& b) {
        return key_less(pc, a, b);
    };
    if (static_cast<long long>(cand.size()) > needed) {
        std::nth_element(cand.begin(), cand.begin() + needed - 1, cand.end(), less);
        cand.resize(needed);
    }
    std::vector<long long> out;
    out.reserve(cand.size());
    for (const auto& c : cand) out.push_back(c.index);
    std::sort(out.begin(), out.end());
    (void)i;
    return out;
}

DirectedAdjacency finish_adjacency(const PointConfig& config, const GraphModel& model,
                                   std::vector<std::vector<long long>> out_lists) {
    const long long n = config.size();
    DirectedAdjacency adj;
    adj.config = config;
    adj.model = model;
    adj.offsets.assign(n + 1, 0);
    for (long long i = 0; i < n; ++i)
        adj.offsets[i + 1] = adj.offsets[i] + static_cast<long long>(out_lists[i].size());
    adj.targets.reserve(adj.offsets[n]);
    for (long long i = 0; i < n; ++i)
        adj.targets.insert(adj.targets.end(), out_lists[i].begin(), out_lists[i].end());

    adj.in_offsets.assign(n + 1, 0);
    for (long long t : adj.targets) adj.in_offsets[t + 1]++;
    for (long long i = 0; i < n; ++i) adj.in_offsets[i + 1] += adj.in_offsets[i];
    adj.in_targets.assign(adj.targets.size(), 0);
    std::vector<long long> cursor(adj.in_offsets.begin(), adj.in_offsets.end() - 1);
    for (long long i = 0; i < n; ++i)
        for (long long t : adj.out(i)) adj.in_targets[cursor[t]++] = i;
    // sources are visited in ascending order, so in-lists are already sorted
    return adj;
}

std::vector<std::vector<long long>> knn_brute_lists(const PointConfig& config, int k) {
    const long long n = config.size();
    std::vector<std::vector<long long>> lists(n);
    std::vector<NeighborKey> cand;
    for (long long i = 0; i < n; ++i) {
        const long long needed = std::min<long long>(k, n - 1);
        cand.clear();
        for (long long j = 0; j < n; ++j) {
            if (j == i) continue;
            cand.push_back({dist2(config.point(i), config.point(j)), j});
        }
        lists[i] = knn_select(config, i, cand, needed);
    }
    return lists;
}

std::vector<std::vector<long long>> knn_indexed_lists(const PointConfig& config, int k) {
    const long long n = config.size();
    const GridIndex grid(config);
    const double h = grid.cell_side();
    std::vector<std::vector<long long>> lists(n);
    std::vector<long long> buf;
    std::vector<NeighborKey> heap;
    auto less = [&config](const NeighborKey& a, const NeighborKey& b) {
        return key_less(config, a, b);
    };
    for (long long i = 0; i < n; ++i) {
        const long long needed = std::min<long long>(k, n - 1);
        auto pi = config.point(i);
        heap.clear();
        const long long last_ring = grid.max_ring(pi);
        for (long long ring = 0; ring <= last_ring; ++ring) {
            buf.clear();
            grid.collect_ring(pi, ring, buf);
            for (long long j : buf) {
                if (j == i) continue;
                NeighborKey key{dist2(pi, config.point(j)), j};
                if (static_cast<long long>(heap.size()) < needed) {
                    heap.push_back(key);
                    std::push_heap(heap.begin(), heap.end(), less);
                } else if (less(key, heap.front())) {
                    std::pop_heap(heap.begin(), heap.end(), less);
                    heap.back() = key;
                    std::push_heap(heap.begin(), heap.end(), less);
                }
            }
            if (static_cast<long long>(heap.size()) == needed) {
                // every unvisited point sits at distance >= ring * h; ties at
                // the cutoff must still be inspected, so the prune is strict
                const double lb = static_cast<double>(ring) * h;
                if (lb * lb > heap.front().d2) break;
            }
        }
        std::vector<long long> sel;
        sel.reserve(heap.size());
        for (const auto& c : heap) sel.push_back(c.index);
        std::sort(sel.begin(), sel.end());
        lists[i] = std::move(sel);
    }
    return lists;
}

bool lens_blocked(const PointConfig& config, const Lens& lens, long long i, long long j,
                  std::span<const long long> candidates) {
    for (long long m : candidates) {
        if (m == i || m == j) continue;
        if (lens.interior_contains(config.point(m))) return true;
    }
    return false;
}

std::vector<std::vector<long long>> beta_brute_lists(const PointConfig& config, double beta) {
    const long long n = config.size();
    std::vector<std::vector<long long>> lists(n);
    std::vector<long long> all(n);
    for (long long m = 0; m < n; ++m) all[m] = m;
    for (long long i = 0; i < n; ++i) {
        for (long long j = i + 1; j < n; ++j) {
            Lens lens = make_lens(config.point(i), config.point(j), beta);
            if (!lens_blocked(config, lens, i, j, all)) {
                lists[i].push_back(j);
                lists[j].push_back(i);
            }
        }
    }
    return lists;
}

std::vector<std::vector<long long>> beta_indexed_lists(const PointConfig& config, double beta) {
    const long long n = config.size();
    const GridIndex grid(config);
    std::vector<std::vector<long long>> lists(n);
    std::vector<long long> buf;
    for (long long i = 0; i < n; ++i) {
        auto pi = config.point(i);
        for (long long j = i + 1; j < n; ++j) {
            auto pj = config.point(j);
            const double e = dist(pi, pj);
            // quick rejection: any third point within 0.499|e| of the midpoint
            // lies strictly inside the diametral disk, hence inside the lens
            const double mid[2] = {0.5 * (pi[0] + pj[0]), 0.5 * (pi[1] + pj[1])};
            const double hw = 0.35 * e;
            Box near{{mid[0] - hw, mid[1] - hw}, {mid[0] + hw, mid[1] + hw}};
            buf.clear();
            grid.collect_box(near, buf);
            bool blocked = false;
            const double quick2 = (0.499 * e) * (0.499 * e);
            for (long long m : buf) {
                if (m == i || m == j) continue;
                auto pm = config.point(m);
                const double dx = pm[0] - mid[0];
                const double dy = pm[1] - mid[1];
                if (dx * dx + dy * dy <= quick2) {
                    blocked = true;
                    break;
                }
            }
            if (blocked) continue;
            Lens lens = make_lens(pi, pj, beta);
            buf.clear();
            grid.collect_box(lens.bounding(), buf);
            if (!lens_blocked(config, lens, i, j, buf)) {
                lists[i].push_back(j);
                lists[j].push_back(i);
            }
        }
    }
    return lists;
}

}  // namespace

bool DirectedAdjacency::has_arc(long long i, long long j) const {
    auto o = out(i);
    return std::binary_search(o.begin(), o.end(), j);
}

std::vector<long long> DirectedAdjacency::in_out(long long i) const {
    if (i < 0 || i >= node_count())
        throw std::invalid_argument("DirectedAdjacency::in_out: unknown node");
    auto o = out(i);
    auto v = in(i);
    std::vector<long long> u;
    u.reserve(o.size() + v.size());
    std::set_union(o.begin(), o.end(), v.begin(), v.end(), std::back_inserter(u));
    return u;
}

double knn_distance(const PointConfig& config, long long x, int j) {
    const long long n = config.size();
    if (x < 0 || x >= n) throw std::invalid_argument("knn_distance: unknown node");
    if (j < 1 || j > n - 1) throw std::invalid_argument("knn_distance: rank out of range");
    std::vector<double> d2;
    d2.reserve(n - 1);
    auto px = config.point(x);
    for (long long m = 0; m < n; ++m) {
        if (m == x) continue;
        d2.push_back(dist2(px, config.point(m)));
    }
    std::nth_element(d2.begin(), d2.begin() + (j - 1), d2.end());
    return std::sqrt(d2[j - 1]);
}

bool neighbor_closer(std::span<const double> query, std::span<const double> a,
                     std::span<const double> b) {
    const double da = dist2(query, a);
    const double db = dist2(query, b);
    if (da != db) return da < db;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] != b[j]) return a[j] < b[j];
    return false;
}

DirectedAdjacency build_adjacency(const PointConfig& config, const GraphModel& model) {
    model.validate();
    if (config.dim() != model.dim)
        throw std::invalid_argument("build_adjacency: config/model dimension mismatch");
    if (config.size() < 1) throw std::invalid_argument("build_adjacency: empty config");
    if (model.kind == GraphKind::knn && model.k > config.size() - 1)
        throw std::invalid_argument("build_adjacency: knn needs at least k+1 points");
    if (config.size() < 32) return build_adjacency_brute(config, model);
    if (model.kind == GraphKind::knn)
        return finish_adjacency(config, model, knn_indexed_lists(config, model.k));
    return finish_adjacency(config, model, beta_indexed_lists(config, model.beta));
}

DirectedAdjacency build_adjacency_brute(const PointConfig& config, const GraphModel& model) {
    model.validate();
    if (config.dim() != model.dim)
        throw std::invalid_argument("build_adjacency: config/model dimension mismatch");
    if (config.size() < 1) throw std::invalid_argument("build_adjacency: empty config");
    if (model.kind == GraphKind::knn && model.k > config.size() - 1)
        throw std::invalid_argument("build_adjacency: knn needs at least k+1 points");
    if (model.kind == GraphKind::knn)
        return finish_adjacency(config, model, knn_brute_lists(config, model.k));
    return finish_adjacency(config, model, beta_brute_lists(config, model.beta));
}

GridIndex::GridIndex(const PointConfig& config)
    : config_(&config), dim_(config.dim()) {
    const long long n = config.size();
    origin_.assign(dim_, 0.0);
    std::vector<double> top(dim_, 0.0);
    for (int j = 0; j < dim_; ++j) {
        origin_[j] = std::numeric_limits<double>::infinity();
        top[j] = -std::numeric_limits<double>::infinity();
    }
    for (long long i = 0; i < n; ++i) {
        auto p = config.point(i);
        for (int j = 0; j < dim_; ++j) {
            origin_[j] = std::min(origin_[j], p[j]);
            top[j] = std::max(top[j], p[j]);
        }
    }
    double vol = 1.0;
    for (int j = 0; j < dim_; ++j) vol *= std::max(top[j] - origin_[j], 0.0);
    cell_ = vol > 0.0 && n > 0 ? std::pow(vol / static_cast<double>(n), 1.0 / dim_) : 1.0;
    if (!(cell_ > 0.0) || !std::isfinite(cell_)) cell_ = 1.0;
    const long long cap = 4 * std::max<long long>(n, 1) + 1024;
    for (;;) {
        extents_.assign(dim_, 1);
        long long total = 1;
        for (int j = 0; j < dim_; ++j) {
            double span = top[j] - origin_[j];
            extents_[j] = std::max<long long>(1, static_cast<long long>(std::ceil(span / cell_)));
            total *= extents_[j];
            if (total > cap) break;
        }
        if (total <= cap) break;
        cell_ *= 1.5;
    }
    long long total = 1;
    for (int j = 0; j < dim_; ++j) total *= extents_[j];
    cell_offsets_.assign(total + 1, 0);
    std::vector<long long> tmp(dim_);
    std::vector<long long> home(n);
    for (long long i = 0; i < n; ++i) {
        home[i] = cell_of(config.point(i), tmp);
        cell_offsets_[home[i] + 1]++;
    }
    for (long long c = 0; c < total; ++c) cell_offsets_[c + 1] += cell_offsets_[c];
    cell_points_.assign(n, 0);
    std::vector<long long> cursor(cell_offsets_.begin(), cell_offsets_.end() - 1);
    for (long long i = 0; i < n; ++i) cell_points_[cursor[home[i]]++] = i;
}

long long GridIndex::cell_of(std::span<const double> p, std::vector<long long>& tmp) const {
    for (int j = 0; j < dim_; ++j) {
        long long c = static_cast<long long>(std::floor((p[j] - origin_[j]) / cell_));
        tmp[j] = std::clamp<long long>(c, 0, extents_[j] - 1);
    }
    return flatten(tmp);
}

long long GridIndex::flatten(const std::vector<long long>& cell) const {
    long long idx = 0;
    for (int j = 0; j < dim_; ++j) idx = idx * extents_[j] + cell[j];
    return idx;
}

void GridIndex::collect_ring(std::span<const double> p, long long ring,
                             std::vector<long long>& out) const {
    std::vector<long long> home(dim_);
    for (int j = 0; j < dim_; ++j) {
        long long c = static_cast<long long>(std::floor((p[j] - origin_[j]) / cell_));
        home[j] = std::clamp<long long>(c, 0, extents_[j] - 1);
    }
    std::vector<long long> cell(dim_);
    // enumerate cells at Chebyshev distance exactly `ring` from the home cell
    std::vector<long long> off(dim_, -ring);
    for (;;) {
        long long cheb = 0;
        bool valid = true;
        for (int j = 0; j < dim_; ++j) {
            cheb = std::max(cheb, std::llabs(off[j]));
            cell[j] = home[j] + off[j];
            if (cell[j] < 0 || cell[j] >= extents_[j]) valid = false;
        }
        if (valid && cheb == ring) {
            long long c = flatten(cell);
            for (long long t = cell_offsets_[c]; t < cell_offsets_[c + 1]; ++t)
                out.push_back(cell_points_[t]);
        }
        int j = dim_ - 1;
        while (j >= 0) {
            if (++off[j] <= ring) break;
            off[j] = -ring;
            --j;
        }
        if (j < 0) break;
    }
}

long long GridIndex::max_ring(std::span<const double> p) const {
    long long r = 0;
    for (int j = 0; j < dim_; ++j) {
        long long c = static_cast<long long>(std::floor((p[j] - origin_[j]) / cell_));
        c = std::clamp<long long>(c, 0, extents_[j] - 1);
        r = std::max(r, std::max(c, extents_[j] - 1 - c));
    }
    return r;
}

void GridIndex::collect_box(const Box& box, std::vector<long long>& out) const {
    std::vector<long long> lo(dim_), hi(dim_), cell(dim_);
    for (int j = 0; j < dim_; ++j) {
        long long a = static_cast<long long>(std::floor((box.lower[j] - origin_[j]) / cell_));
        long long b = static_cast<long long>(std::floor((box.upper[j] - origin_[j]) / cell_));
        lo[j] = std::clamp<long long>(a, 0, extents_[j] - 1);
        hi[j] = std::clamp<long long>(b, 0, extents_[j] - 1);
        if (box.upper[j] < origin_[j] || box.lower[j] > origin_[j] + extents_[j] * cell_) return;
    }
    cell = lo;
    for (;;) {
        long long c = flatten(cell);
        for (long long t = cell_offsets_[c]; t < cell_offsets_[c + 1]; ++t)
            out.push_back(cell_points_[t]);
        int j = dim_ - 1;
        while (j >= 0) {
            if (++cell[j] <= hi[j]) break;
            cell[j] = lo[j];
            --j;
        }
        if (j < 0) break;
    }
}

void write_edges_csv(const DirectedAdjacency& adj, const std::string& path,
                     const std::string& audit_json) {
    std::string out = "src_index,dst_index,length\n";
    const long long n = adj.node_count();
    for (long long i = 0; i < n; ++i) {
        for (long long t : adj.out(i)) {
            out += std::to_string(i);
            out += ',';
            out += std::to_string(t);
            out += ',';
            out += format_g17(dist(adj.config.point(i), adj.config.point(t)));
            out += '\n';
        }
    }
    if (!audit_json.empty()) out += audit_comment_block(audit_json);
    write_text_file(path, out);
}

}  // namespace rarenet
