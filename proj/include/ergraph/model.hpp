#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ergraph/graph.hpp"

namespace ergraph {

inline constexpr int kDefaultEnumerationCap = 24;

// The Gibbs exponent sums k-star terms to min(K, maxdeg(G_S)) by default;
// FullOrder always sums to K regardless of the subgraph's maximum degree.
enum class StarTruncation { SubgraphMaxDegree, FullOrder };

struct MarkovParams {
    double temperature = 1.0;                 // T > 0
    double beta_triangle = 0.0;               // triangle coefficient
    std::vector<double> beta_stars;           // beta_1..beta_K
    StarTruncation truncation = StarTruncation::SubgraphMaxDegree;

    int star_order() const { return static_cast<int>(beta_stars.size()); }
    void validate(const Graph& host) const;
};

// Distinguishes the two K_3 models the closed-form results treat separately:
// the edge-triangle model carries only beta_1 and the triangle term, the
// cubic model carries beta_1, beta_2 and the triangle term.
enum class CubicModelKind { EdgeTriangle, Cubic };

CubicModelKind cubic_kind_for(const MarkovParams& params);

struct BernoulliParams {
    std::vector<double> p;   // per-edge inclusion probability, each in [0,1]
    void validate(const Graph& host) const;
};

// Unnormalized distribution over all edge subsets of a host graph, stored as
// log-weights (subset-mask indexed) with logZ from log-sum-exp.
class Distribution {
  public:
    Graph host;
    std::vector<double> log_weights;   // size 2^m
    double log_z = 0.0;
    bool positive = true;              // all weights strictly > 0
    bool product_form = false;         // built as an independent product measure

    int edge_count() const { return host.m(); }
    std::size_t subset_count() const { return log_weights.size(); }

    double log_weight(std::uint64_t mask) const { return log_weights[mask]; }
    double weight(std::uint64_t mask) const;
    double prob(std::uint64_t mask) const;
};

struct EnumerationCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_enumerable(int m, int max_edges, const char* what);

// (1/T) * (beta * t(triangle, G_S) + sum_k beta_k * t(S_k, G_S)), densities
// evaluated exactly then converted to float.
double energy_exponent(const Graph& g, const EdgeSubset& s, const MarkovParams& params);
double energy_exponent(const Graph& g, std::uint64_t mask, const MarkovParams& params);

Distribution markov_distribution(const Graph& g, const MarkovParams& params,
                                 int max_edges = kDefaultEnumerationCap);

Distribution bernoulli_distribution(const Graph& g, const BernoulliParams& params);

} // namespace ergraph
