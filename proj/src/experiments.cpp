#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parallel.hpp"
#include "serialization.hpp"
#include "textio.hpp"

namespace rarenet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double beta_cont_frac(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

double quantile_nearest(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return kNaN;
    const auto idx = static_cast<std::size_t>(
        std::min<double>(static_cast<double>(sorted.size() - 1),
                         std::floor(q * static_cast<double>(sorted.size()))));
    return sorted[idx];
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("incomplete beta: a, b must be > 0");
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("incomplete beta: x in [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cont_frac(a, b, x) / a;
    return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(b) - std::lgamma(a) +
                          b * std::log1p(-x) + a * std::log(x)) *
                     beta_cont_frac(b, a, 1.0 - x) / b;
}

namespace {

double beta_quantile(double a, double b, double q) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (regularized_incomplete_beta(a, b, mid) < q)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::pair<double, double> clopper_pearson(long long hits, long long samples) {
    if (samples < 1) throw std::invalid_argument("clopper_pearson: samples must be >= 1");
    if (hits < 0 || hits > samples)
        throw std::invalid_argument("clopper_pearson: hits out of range");
    const double s = static_cast<double>(samples);
    // boundary counts get the one-sided 95% bound
    if (hits == 0) return {0.0, 1.0 - std::pow(0.05, 1.0 / s)};
    if (hits == samples) return {std::pow(0.05, 1.0 / s), 1.0};
    const double h = static_cast<double>(hits);
    return {beta_quantile(h, s - h + 1.0, 0.025), beta_quantile(h + 1.0, s - h, 0.975)};
}

void TailParams::validate() const {
    model.validate();
    variant.validate();
    if (!(variant.alpha > model.dim))
        throw std::invalid_argument("tail run: requires alpha > dim");
    if (!(n > 0.0)) throw std::invalid_argument("tail run: window side must be > 0");
    if (!(margin > 0.0)) throw std::invalid_argument("tail run: margin must be > 0");
    if (!std::isfinite(r)) throw std::invalid_argument("tail run: r must be finite");
    if (samples < 1) throw std::invalid_argument("tail run: samples must be >= 1");
    if (pilot_samples < 2 && !std::isfinite(mu_override))
        throw std::invalid_argument("tail run: pilot needs at least 2 samples");
    if (hit_cap < 1) throw std::invalid_argument("tail run: hit cap must be >= 1");
    if (workers < 1) throw std::invalid_argument("tail run: workers must be >= 1");
}

TailRunRecord tail_probability(const TailParams& params) {
    params.validate();
    const Box window = Box::cube(params.model.dim, params.n);
    const Box sample_box = window.inflated(params.margin);
    const Seed pilot_seed = params.seed.substream(1);
    const Seed palm_seed = params.seed.substream(2);
    const Seed main_seed = params.seed.substream(3);

    TailRunRecord rec;
    rec.model = params.model;
    rec.variant = params.variant;
    rec.n = params.n;
    rec.margin = params.margin;
    rec.r = params.r;
    rec.samples = params.samples;
    rec.seed = params.seed;

    auto replica_hn = [&](Seed s) {
        const PointConfig pts = sample_poisson(sample_box, 1.0, s);
        if (pts.size() == 0) return 0.0;
        const DirectedAdjacency adj = build_adjacency(pts, params.model);
        return functional_hn(adj, window, params.n, params.variant);
    };

    if (std::isfinite(params.mu_override)) {
        rec.mu_used = params.mu_override;
        rec.mu_source = "supplied";
    } else {
        std::vector<double> pilot(params.pilot_samples, 0.0);
        parallel_for(params.pilot_samples, params.workers,
                     [&](long long i) { pilot[i] = replica_hn(pilot_seed.substream(i)); });
        double mean = 0.0;
        for (double v : pilot) mean += v;
        mean /= static_cast<double>(params.pilot_samples);
        double ss = 0.0;
        for (double v : pilot) ss += (v - mean) * (v - mean);
        rec.mu_pilot = mean;
        rec.mu_pilot_se = std::sqrt(ss / (static_cast<double>(params.pilot_samples) *
                                          static_cast<double>(params.pilot_samples - 1)));
        rec.mu_used = mean;
        rec.mu_source = "pilot_windowed";

        const MuEstimate palm =
            estimate_mu(params.model, params.variant, 2.0 * params.margin + 2.0,
                        params.margin, params.pilot_samples, palm_seed, params.workers);
        rec.mu_palm = palm.mean;
        rec.mu_palm_se = palm.std_error;
    }

    std::vector<double> hn(params.samples, 0.0);
    parallel_for(params.samples, params.workers,
                 [&](long long i) { hn[i] = replica_hn(main_seed.substream(i)); });

    const double threshold = rec.mu_used + params.r;
    std::vector<long long> hit_replicas;
    for (long long i = 0; i < params.samples; ++i)
        if (hn[i] > threshold) hit_replicas.push_back(i);
    rec.hits = static_cast<long long>(hit_replicas.size());
    rec.p_hat = static_cast<double>(rec.hits) / static_cast<double>(rec.samples);
    const auto ci = clopper_pearson(rec.hits, rec.samples);
    rec.ci_lo = ci.first;
    rec.ci_hi = ci.second;

    if (rec.hits > params.hit_cap) {
        rec.hits_truncated = true;
        hit_replicas.resize(static_cast<std::size_t>(params.hit_cap));
    }
    const double census_threshold = std::pow(params.n, 0.3);
    rec.hit_stats.assign(hit_replicas.size(), HitStat{});
    parallel_for(static_cast<long long>(hit_replicas.size()), params.workers,
                 [&](long long h) {
                     const long long replica = hit_replicas[h];
                     const PointConfig pts =
                         sample_poisson(sample_box, 1.0, main_seed.substream(replica));
                     const DirectedAdjacency adj = build_adjacency(pts, params.model);
                     const ScoreTable table =
                         build_score_table(adj, window, params.variant);
                     HitStat& stat = rec.hit_stats[h];
                     stat.replica = replica;
                     stat.hn = hn[replica];
                     const auto top = order_statistics(table, 8);
                     std::copy(top.begin(), top.end(), stat.z.begin());
                     stat.census_a03 = large_score_census(table, census_threshold);
                 });
    return rec;
}

std::vector<CondensationSummary> condensation_stats(const TailRunRecord& record,
                                                    const std::vector<long long>& m_list) {
    if (!(record.r > 0.0))
        throw std::invalid_argument("condensation: requires a record with r > 0");
    const double denom =
        record.r * std::pow(record.n, static_cast<double>(record.model.dim));
    std::vector<CondensationSummary> out;
    for (long long m : m_list) {
        if (m < 1 || m > 8)
            throw std::invalid_argument(
                "condensation: m must lie in [1,8] (eight order statistics retained)");
        CondensationSummary s;
        s.m = m;
        for (const HitStat& hit : record.hit_stats) {
            double top = 0.0;
            for (long long i = 0; i < m; ++i) top += hit.z[static_cast<std::size_t>(i)];
            s.fractions.push_back(top / denom);
        }
        std::vector<double> sorted = s.fractions;
        std::sort(sorted.begin(), sorted.end());
        s.q10 = quantile_nearest(sorted, 0.10);
        s.q50 = quantile_nearest(sorted, 0.50);
        s.q90 = quantile_nearest(sorted, 0.90);
        out.push_back(std::move(s));
    }
    return out;
}

long long large_score_census(const ScoreTable& table, double threshold) {
    if (!(threshold > 0.0))
        throw std::invalid_argument("census: threshold must be > 0");
    long long c = 0;
    for (double s : table.per_node_score)
        if (s >= threshold) ++c;
    return c;
}

std::vector<RateCurveRow> rate_curve(const std::vector<TailRunRecord>& records,
                                     double inf_a) {
    if (records.empty()) throw std::invalid_argument("rate_curve: no records");
    if (!(inf_a >= 0.0)) throw std::invalid_argument("rate_curve: inf_A must be >= 0");
    const TailRunRecord& head = records.front();
    std::vector<RateCurveRow> rows;
    for (const TailRunRecord& rec : records) {
        if (rec.model.name() != head.model.name() || rec.model.dim != head.model.dim ||
            rec.model.k != head.model.k || rec.model.beta != head.model.beta ||
            rec.variant.name() != head.variant.name() ||
            rec.variant.alpha != head.variant.alpha || rec.n != head.n)
            throw std::invalid_argument("rate_curve: records disagree on model/variant/n");
        if (!(rec.r > 0.0))
            throw std::invalid_argument("rate_curve: records must have r > 0");
        RateCurveRow row;
        row.r = rec.r;
        row.n = rec.n;
        row.hits = rec.hits;
        row.usable = rec.hits >= 10;
        const int d = rec.model.dim;
        const double speed = std::pow(rec.n, static_cast<double>(d) * d / rec.variant.alpha);
        if (row.usable && rec.p_hat > 0.0)
            row.empirical = -std::log(rec.p_hat) / speed;
        row.theoretical = rate_function(inf_a, rec.r, d, rec.variant.alpha);
        rows.push_back(row);
    }
    std::sort(rows.begin(), rows.end(),
              [](const RateCurveRow& a, const RateCurveRow& b) { return a.r < b.r; });
    return rows;
}

std::string TailRunRecord::to_json(const std::string& run_config_json) const {
    ordered_json j;
    j["schema_version"] = schema_version;
    j["model"] = model_to_json(model);
    j["variant"] = variant_to_json(variant);
    j["d"] = model.dim;
    j["alpha"] = variant.alpha;
    j["n"] = n;
    j["margin"] = margin;
    j["r"] = r;
    j["mu_used"] = mu_used;
    j["mu_source"] = mu_source;
    auto put_opt = [&](const char* key, double v) {
        if (std::isfinite(v))
            j[key] = v;
        else
            j[key] = nullptr;
    };
    put_opt("mu_pilot", mu_pilot);
    put_opt("mu_pilot_se", mu_pilot_se);
    put_opt("mu_palm", mu_palm);
    put_opt("mu_palm_se", mu_palm_se);
    j["samples"] = samples;
    j["hits"] = hits;
    j["p_hat"] = p_hat;
    j["ci95"] = {ci_lo, ci_hi};
    j["seed"] = seed_to_json(seed);
    j["hits_truncated"] = hits_truncated;
    ordered_json stats = ordered_json::array();
    for (const HitStat& h : hit_stats) {
        ordered_json row;
        row["replica"] = h.replica;
        row["hn"] = h.hn;
        row["z"] = h.z;
        row["census_a03"] = h.census_a03;
        stats.push_back(std::move(row));
    }
    j["hit_stats"] = stats;
    if (!run_config_json.empty())
        j["run_config"] = ordered_json::parse(run_config_json);
    return j.dump(2);
}

TailRunRecord TailRunRecord::from_json(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    TailRunRecord rec;
    rec.schema_version = j.at("schema_version").get<int>();
    if (rec.schema_version != 1)
        throw std::invalid_argument("tail record: unsupported schema version");
    rec.model = model_from_json(j.at("model"));
    rec.variant = variant_from_json(j.at("variant"));
    rec.n = j.at("n").get<double>();
    rec.margin = j.at("margin").get<double>();
    rec.r = j.at("r").get<double>();
    rec.mu_used = j.at("mu_used").get<double>();
    rec.mu_source = j.at("mu_source").get<std::string>();
    auto get_opt = [&](const char* key) {
        return j.at(key).is_null() ? kNaN : j.at(key).get<double>();
    };
    rec.mu_pilot = get_opt("mu_pilot");
    rec.mu_pilot_se = get_opt("mu_pilot_se");
    rec.mu_palm = get_opt("mu_palm");
    rec.mu_palm_se = get_opt("mu_palm_se");
    rec.samples = j.at("samples").get<long long>();
    rec.hits = j.at("hits").get<long long>();
    rec.p_hat = j.at("p_hat").get<double>();
    rec.ci_lo = j.at("ci95").at(0).get<double>();
    rec.ci_hi = j.at("ci95").at(1).get<double>();
    rec.seed = seed_from_json(j.at("seed"));
    rec.hits_truncated = j.at("hits_truncated").get<bool>();
    for (const auto& row : j.at("hit_stats")) {
        HitStat h;
        h.replica = row.at("replica").get<long long>();
        h.hn = row.at("hn").get<double>();
        const auto z = row.at("z").get<std::vector<double>>();
        if (z.size() != 8)
            throw std::invalid_argument("tail record: hit stats need 8 order statistics");
        std::copy(z.begin(), z.end(), h.z.begin());
        h.census_a03 = row.at("census_a03").get<long long>();
        rec.hit_stats.push_back(h);
    }
    return rec;
}

void write_hits_csv(const TailRunRecord& record, const std::string& path,
                    const std::string& audit_json) {
    std::string out;
    if (!audit_json.empty()) out += audit_comment_block(audit_json);
    out += "replica,H_n";
    for (int i = 1; i <= 8; ++i) out += ",Z" + std::to_string(i);
    out += '\n';
    for (const HitStat& h : record.hit_stats) {
        out += std::to_string(h.replica);
        out += ',';
        out += format_g17(h.hn);
        for (double z : h.z) {
            out += ',';
            out += format_g17(z);
        }
        out += '\n';
    }
    write_text_file(path, out);
}

void write_rate_curve_csv(const std::vector<RateCurveRow>& rows, const std::string& path,
                          const std::string& audit_json) {
    std::string out;
    if (!audit_json.empty()) out += audit_comment_block(audit_json);
    out += "r,empirical,theoretical,hits\n";
    for (const RateCurveRow& row : rows) {
        out += format_g17(row.r);
        out += ',';
        out += row.usable ? format_g17(row.empirical) : std::string("nan");
        out += ',';
        out += format_g17(row.theoretical);
        out += ',';
        out += std::to_string(row.hits);
        out += '\n';
    }
    write_text_file(path, out);
}

std::string rate_curve_plot_script(const std::string& csv_path) {
    std::string s;
    s += "set datafile separator \",\"\n";
    s += "set key left top\n";
    s += "set xlabel \"r\"\n";
    s += "set ylabel \"-log p / n^{d^2/alpha}\"\n";
    s += "plot \"" + csv_path + "\" using 1:2 with points pt 7 title \"empirical\", \\\n";
    s += "     \"" + csv_path + "\" using 1:3 with lines title \"inf_A r^{d/alpha}\"\n";
    return s;
}

}  // namespace rarenet
