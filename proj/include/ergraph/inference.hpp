#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ergraph/model.hpp"

namespace ergraph {

// Sufficient statistics of a graph state: homomorphism densities
// (t(S_1)..t(S_K), t(triangle)), exact rationals converted to float.
std::vector<double> stat_vector(const Graph& g, const EdgeSubset& s, int star_order);

struct ChainConfig {
    long long sweeps = 10000;    // recorded sweeps, one sweep = m proposals
    long long burnin = 1000;     // discarded sweeps before recording
    long long thin = 1;          // record every `thin` sweeps
    std::uint64_t seed = 1;

    void validate() const;
};

// One Glauber update: a uniform edge slot is set present with probability
// sigma(delta), delta being the log weight ratio between the on and off
// states; detailed balance with respect to the model distribution.
EdgeSubset glauber_step(const EdgeSubset& state, const Graph& g, const MarkovParams& params,
                        std::mt19937_64& rng);

struct SampleResult {
    std::vector<double> mean;
    std::vector<double> stderr_batch;   // batch-means standard errors
    long long samples = 0;
    double boundary_fraction = 0.0;     // samples at the empty or full graph
};

SampleResult sample_suffstats(const Graph& g, const MarkovParams& params, const ChainConfig& cfg);

// Enumeration oracle: sum_S P(S) stats(S).
std::vector<double> exact_expected_stats(const Graph& g, const MarkovParams& params,
                                         int max_edges = kDefaultEnumerationCap);

struct GainSchedule {
    double a0 = 0.1;
    double k0 = 10.0;
    double at(int iteration) const { return a0 / (iteration + k0); }
};

struct FitOptions {
    GainSchedule gain;
    int max_iterations = 60;
    double tolerance = 0.02;              // stop when ||observed - sampled||_2 <= tolerance
    double degeneracy_threshold = 0.9;    // boundary occupancy fraction
};

struct FitTrace {
    int iteration = 0;
    std::vector<double> theta;   // beta_1..beta_K then beta_triangle when fitted
    double gap_norm = 0.0;
};

struct FitResult {
    MarkovParams params;
    std::vector<double> observed_stats;
    std::vector<FitTrace> trajectory;
    bool converged = false;
    double final_gap = 0.0;
    bool degeneracy_warning = false;
    std::string degeneracy_note;
};

// Robbins-Monro moment matching against the observed statistics. The model
// host is the complete graph on the observed vertex set; the temperature is
// fixed to 1 (only beta/T is identifiable) and reported coefficients are
// beta/T.
FitResult fit_stochastic_approximation(const Graph& observed, int star_order, bool include_triangle,
                                       const MarkovParams& init, const FitOptions& options,
                                       const ChainConfig& cfg);

// Same iteration against an explicit target vector (t(S_1)..t(S_K),
// t(triangle)) on a given host, for synthetic moment-matching targets that
// no single graph realizes.
FitResult fit_to_stats(const Graph& host, const std::vector<double>& observed_stats, int star_order,
                       bool include_triangle, const MarkovParams& init, const FitOptions& options,
                       const ChainConfig& cfg);

} // namespace ergraph
