#include "ergraph/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ergraph {

void MarkovParams::validate(const Graph& host) const {
    if (!(temperature > 0.0)) throw std::invalid_argument("MarkovParams: temperature must be > 0");
    if (beta_stars.empty()) throw std::invalid_argument("MarkovParams: at least one star coefficient required");
    if (star_order() > host.max_degree())
        throw std::invalid_argument("MarkovParams: star order cap " + std::to_string(star_order()) +
                                    " exceeds host max degree " + std::to_string(host.max_degree()));
}

CubicModelKind cubic_kind_for(const MarkovParams& params) {
    return params.star_order() <= 1 ? CubicModelKind::EdgeTriangle : CubicModelKind::Cubic;
}

void BernoulliParams::validate(const Graph& host) const {
    if (static_cast<int>(p.size()) != host.m())
        throw std::invalid_argument("BernoulliParams: need one probability per edge");
    for (double v : p)
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("BernoulliParams: probabilities must lie in [0,1]");
}

double Distribution::weight(std::uint64_t mask) const { return std::exp(log_weights[mask]); }

double Distribution::prob(std::uint64_t mask) const { return std::exp(log_weights[mask] - log_z); }

void require_enumerable(int m, int max_edges, const char* what) {
    if (m > max_edges)
        throw EnumerationCapError(std::string(what) + ": enumeration infeasible, m=" + std::to_string(m) +
                                  " exceeds the cap of " + std::to_string(max_edges) + " edges");
}

namespace {

double energy_from_stats(const Graph& g, const SubgraphStats& st, const MarkovParams& params) {
    int limit = params.star_order();
    if (params.truncation == StarTruncation::SubgraphMaxDegree)
        limit = std::min(limit, st.max_degree());
    double acc = 0.0;
    for (int k = 1; k <= limit; ++k)
        acc += params.beta_stars[static_cast<std::size_t>(k - 1)] *
               hom_density(g, st, Motif::kstar(k)).to_double();
    acc += params.beta_triangle * hom_density(g, st, Motif::triangle()).to_double();
    return acc / params.temperature;
}

} // namespace

double energy_exponent(const Graph& g, std::uint64_t mask, const MarkovParams& params) {
    return energy_from_stats(g, spanning_stats(g, mask), params);
}

double energy_exponent(const Graph& g, const EdgeSubset& s, const MarkovParams& params) {
    if (s.size() != g.m()) throw std::invalid_argument("energy_exponent: subset width does not match edge count");
    return energy_from_stats(g, spanning_stats(g, s), params);
}

namespace {

double log_sum_exp(const std::vector<double>& v) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double x : v) mx = std::max(mx, x);
    if (!std::isfinite(mx)) return mx;
    double s = 0.0;
    for (double x : v) s += std::exp(x - mx);
    return mx + std::log(s);
}

} // namespace

Distribution markov_distribution(const Graph& g, const MarkovParams& params, int max_edges) {
    params.validate(g);
    require_enumerable(g.m(), max_edges, "markov_distribution");
    Distribution dist;
    dist.host = g;
    std::uint64_t total = std::uint64_t(1) << g.m();
    dist.log_weights.resize(total);
    for (std::uint64_t mask = 0; mask < total; ++mask)
        dist.log_weights[mask] = energy_exponent(g, mask, params);
    dist.log_z = log_sum_exp(dist.log_weights);
    dist.positive = true;
    return dist;
}

Distribution bernoulli_distribution(const Graph& g, const BernoulliParams& params) {
    params.validate(g);
    require_enumerable(g.m(), kDefaultEnumerationCap, "bernoulli_distribution");
    Distribution dist;
    dist.host = g;
    int m = g.m();
    std::uint64_t total = std::uint64_t(1) << m;
    dist.log_weights.resize(total);
    dist.positive = true;
    for (double v : params.p)
        if (v == 0.0 || v == 1.0) dist.positive = false;
    std::vector<double> log_on(params.p.size()), log_off(params.p.size());
    for (std::size_t e = 0; e < params.p.size(); ++e) {
        log_on[e] = std::log(params.p[e]);
        log_off[e] = std::log1p(-params.p[e]);
    }
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        double lw = 0.0;
        for (int e = 0; e < m; ++e) lw += ((mask >> e) & 1u) ? log_on[static_cast<std::size_t>(e)] : log_off[static_cast<std::size_t>(e)];
        dist.log_weights[mask] = lw;
    }
    dist.log_z = 0.0;   // product-form weights are already normalized
    dist.product_form = true;
    return dist;
}

} // namespace ergraph
