#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "influence.hpp"

namespace rarenet {

enum class RateObjective { literal, nng_reduced };

std::string objective_name(RateObjective o);
RateObjective objective_parse(const std::string& name);

struct Candidate {
    ConfigPair pair;
    // volume of the influence zone after normalization; NaN until evaluated
    double normalized_volume = std::numeric_limits<double>::quiet_NaN();
    double score_sum = 0.0;
};

struct AnnealParams {
    long long restarts = 8;
    long long steps_per_restart = 20000;
    double initial_temp = 0.5;
    double cooling = 0.9995;
    // move probabilities: jitter, add_satellite, remove_point, toggle_phi
    std::array<double, 4> move_mix{0.55, 0.2, 0.1, 0.15};
    double jitter_scale = 0.05;
    long long m_max = 8;
    Seed seed{0, 0};
    int workers = 1;
    // objective precision: during annealing and for the final re-evaluation
    double anneal_rel_tol = 1e-2;
    double final_rel_tol = 1e-3;
    long long anneal_mc_samples = 20000;
    long long final_mc_samples = 2000000;
    // cap on the largest single phi score after normalization; 1 disables,
    // values below 1 restrict the search to spread-out score profiles
    double top1_limit = 1.0;

    void validate(const GraphModel& model) const;
};

struct TracePoint {
    long long step = 0;
    double volume = 0.0;
};

struct OptResult {
    Candidate best;
    std::vector<TracePoint> trace;  // best-so-far, non-increasing
    RateObjective objective = RateObjective::literal;
    AnnealParams params;
    // smallest volume seen over every evaluated candidate, all restarts
    double min_evaluated = std::numeric_limits<double>::infinity();

    std::string to_json() const;
};

// scales the pair so the phi score sum binds at one
Candidate normalize_pair(const ConfigPair& pair);

double phi_score_sum(const ConfigPair& pair);

// largest single phi score divided by the phi score sum
double phi_top1_fraction(const ConfigPair& pair);

// cardinality, score-sum at least one, and jitter robustness
bool admissible(const ConfigPair& pair, double jitter_scale = 1e-9, long long trials = 3,
                Seed seed = Seed{20260817, 0});

// evaluates the influence volume of a normalized candidate
double evaluate_candidate(Candidate& cand, RateObjective objective, double rel_tol,
                          long long mc_samples, Seed seed);

OptResult optimize_rate(const GraphModel& model, const ScoreVariant& variant,
                        RateObjective objective, const AnnealParams& params);

// inf_A * r^{d/alpha}
double rate_function(double inf_a, double r, int dim, double alpha);

}  // namespace rarenet
