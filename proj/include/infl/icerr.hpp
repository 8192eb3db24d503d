#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "infl/centrality.hpp"
#include "infl/rr.hpp"

namespace infl {

struct EstimatorConfig {
    double eps = 0.1;   // relative-error target, > 0
    double ell = 1.0;   // confidence exponent, > 0
    int k = 1;          // rank index in [1, n]
    Mode mode = Mode::Individual;
    NodeWiseFunction g;
    std::vector<std::vector<int>> groups;  // queries for group mode
    std::uint64_t seed = 0;
    int workers = 1;
    std::uint64_t max_rr_sets = 100'000'000;  // overall budget cap
};

struct PhaseIteration {
    int i = 0;
    double x = 0.0;  // n / 2^i
    std::uint64_t theta_i = 0;
    double est_k = 0.0;  // k-th largest accumulator at theta_i samples
    bool stopped = false;
};

struct EstimationTrace {
    std::vector<PhaseIteration> iterations;
    double lb = 1.0;
    std::uint64_t theta = 0;
    std::uint64_t phase1_sets = 0;
    std::uint64_t phase2_sets = 0;
    double phase1_seconds = 0.0;
    double phase2_seconds = 0.0;
    // the error guarantee presumes psi^(k) >= 1; that hypothesis is not
    // checkable here, so it is flagged for post-hoc verification
    bool psi_k_assumed = true;
};

struct ResourceCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Phase-1 sample schedule at iteration i (x = n/2^i); eps_prime = sqrt(2)*eps
std::uint64_t theta_schedule(int n, double eps_prime, double ell, int i);

// Phase-2 sample count from the Phase-1 lower bound
std::uint64_t final_theta(int n, double eps, double ell, double lb);

// multiset order statistic, k in [1, size], duplicates counted
double kth_largest(const std::vector<double>& values, int k);

// two-phase RR-set estimator; closeness is excluded by construction
// (only additive node-wise g enters the config)
CentralityReport estimate(const TriggeringModel& model, const EstimatorConfig& cfg,
                          EstimationTrace* trace = nullptr);

std::string trace_to_json(const EstimationTrace& trace);

} // namespace infl
