#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "optimizer.hpp"

namespace rarenet {

// exact binomial (Clopper-Pearson) 95% interval; one-sided at the extremes
std::pair<double, double> clopper_pearson(long long hits, long long samples);
double regularized_incomplete_beta(double a, double b, double x);

struct HitStat {
    long long replica = 0;
    double hn = 0.0;
    std::array<double, 8> z{};  // eight largest window scores, descending
    long long census_a03 = 0;   // window nodes with score >= n^0.3
};

struct TailParams {
    GraphModel model;
    ScoreVariant variant;
    double n = 8.0;
    double margin = 3.0;
    double r = 1.0;
    long long samples = 100000;
    // threshold center: finite value overrides the windowed pilot estimate
    double mu_override = std::numeric_limits<double>::quiet_NaN();
    long long pilot_samples = 4000;
    long long hit_cap = 100000;
    Seed seed{0, 0};
    int workers = 1;

    void validate() const;
};

struct TailRunRecord {
    GraphModel model;
    ScoreVariant variant;
    double n = 0.0;
    double margin = 0.0;
    double r = 0.0;
    double mu_used = 0.0;
    std::string mu_source;  // "pilot_windowed" or "supplied"
    double mu_pilot = std::numeric_limits<double>::quiet_NaN();
    double mu_pilot_se = std::numeric_limits<double>::quiet_NaN();
    double mu_palm = std::numeric_limits<double>::quiet_NaN();
    double mu_palm_se = std::numeric_limits<double>::quiet_NaN();
    long long samples = 0;
    long long hits = 0;
    double p_hat = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    Seed seed{0, 0};
    int schema_version = 1;
    bool hits_truncated = false;
    std::vector<HitStat> hit_stats;

    std::string to_json(const std::string& run_config_json = "") const;
    static TailRunRecord from_json(const std::string& text);
};

TailRunRecord tail_probability(const TailParams& params);

struct CondensationSummary {
    long long m = 0;
    std::vector<double> fractions;  // per hit: (Z1+..+Zm) / (r n^d)
    double q10 = 0.0, q50 = 0.0, q90 = 0.0;
};

std::vector<CondensationSummary> condensation_stats(const TailRunRecord& record,
                                                    const std::vector<long long>& m_list);

long long large_score_census(const ScoreTable& table, double threshold);

struct RateCurveRow {
    double r = 0.0;
    double empirical = std::numeric_limits<double>::quiet_NaN();
    double theoretical = 0.0;
    double n = 0.0;
    long long hits = 0;
    bool usable = false;
};

std::vector<RateCurveRow> rate_curve(const std::vector<TailRunRecord>& records,
                                     double inf_a);

void write_hits_csv(const TailRunRecord& record, const std::string& path,
                    const std::string& audit_json = "");
void write_rate_curve_csv(const std::vector<RateCurveRow>& rows, const std::string& path,
                          const std::string& audit_json = "");
// gnuplot commands for the rate-curve CSV
std::string rate_curve_plot_script(const std::string& csv_path);

}  // namespace rarenet
