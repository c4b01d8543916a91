#include "ergraph/inference.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ergraph {

std::vector<double> stat_vector(const Graph& g, const EdgeSubset& s, int star_order) {
    if (star_order < 1) throw std::invalid_argument("stat_vector: star order must be >= 1");
    SubgraphStats st = spanning_stats(g, s);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(star_order) + 1);
    for (int k = 1; k <= star_order; ++k)
        out.push_back(hom_density(g, st, Motif::kstar(k)).to_double());
    out.push_back(hom_density(g, st, Motif::triangle()).to_double());
    return out;
}

void ChainConfig::validate() const {
    if (sweeps < 1) throw std::invalid_argument("ChainConfig: sweeps must be positive");
    if (burnin < 0) throw std::invalid_argument("ChainConfig: burnin must be nonnegative");
    if (thin < 1) throw std::invalid_argument("ChainConfig: thin must be positive");
    if (thin > sweeps) throw std::invalid_argument("ChainConfig: thin must not exceed sweeps");
}

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Incremental chain state: per-vertex degrees, adjacency bitsets, exact
// integer power sums S_k = sum_v deg(v)^k and triangle count, so the Gibbs
// exponent of the current state costs O(K) per evaluation.
class GlauberChain {
  public:
    GlauberChain(const Graph& g, const MarkovParams& params)
        : g_(g), params_(params), n_(g.n()), words_(static_cast<std::size_t>((g.n() + 63) / 64)),
          present_(static_cast<std::size_t>(g.m()), 0),
          degree_(static_cast<std::size_t>(g.n()), 0),
          adj_(static_cast<std::size_t>(g.n()) * words_, 0),
          degree_hist_(static_cast<std::size_t>(g.n()), 0),
          power_sums_(static_cast<std::size_t>(params.star_order()) + 1, 0) {
        degree_hist_[0] = n_;
        inv_star_den_.resize(static_cast<std::size_t>(params.star_order()) + 1, 0.0);
        for (int k = 1; k <= params.star_order(); ++k)
            inv_star_den_[static_cast<std::size_t>(k)] = 1.0 / std::pow(static_cast<double>(n_), k + 1);
        inv_tri_den_ = 1.0 / std::pow(static_cast<double>(n_), 3);
    }

    void apply_state(const EdgeSubset& s) {
        for (int e = 0; e < g_.m(); ++e)
            if (s.test(e) != static_cast<bool>(present_[static_cast<std::size_t>(e)])) toggle(e);
    }

    bool present(int e) const { return present_[static_cast<std::size_t>(e)]; }
    int edges_on() const { return edges_on_; }

    // Log weight ratio between slot e on and off, other slots as-is.
    double toggle_log_ratio(int e) {
        bool was_on = present_[static_cast<std::size_t>(e)];
        if (was_on) toggle(e);
        double off_energy = state_energy();
        toggle(e);
        double on_energy = state_energy();
        toggle(e);   // leave in the off position; caller decides
        if (was_on) toggle(e);
        return on_energy - off_energy;
    }

    void set_slot(int e, bool value) {
        if (static_cast<bool>(present_[static_cast<std::size_t>(e)]) != value) toggle(e);
    }

    std::vector<double> densities() const {
        std::vector<double> out;
        out.reserve(power_sums_.size());
        for (int k = 1; k <= params_.star_order(); ++k)
            out.push_back(static_cast<double>(power_sums_[static_cast<std::size_t>(k)]) *
                          inv_star_den_[static_cast<std::size_t>(k)]);
        out.push_back(6.0 * static_cast<double>(triangles_) * inv_tri_den_);
        return out;
    }

    EdgeSubset snapshot() const {
        EdgeSubset s(g_.m());
        for (int e = 0; e < g_.m(); ++e)
            if (present_[static_cast<std::size_t>(e)]) s.set(e);
        return s;
    }

    double state_energy() const {
        int limit = params_.star_order();
        if (params_.truncation == StarTruncation::SubgraphMaxDegree)
            limit = std::min(limit, max_degree_);
        double acc = 0.0;
        for (int k = 1; k <= limit; ++k)
            acc += params_.beta_stars[static_cast<std::size_t>(k - 1)] *
                   static_cast<double>(power_sums_[static_cast<std::size_t>(k)]) *
                   inv_star_den_[static_cast<std::size_t>(k)];
        acc += params_.beta_triangle * 6.0 * static_cast<double>(triangles_) * inv_tri_den_;
        return acc / params_.temperature;
    }

  private:
    const Graph& g_;
    const MarkovParams& params_;
    int n_;
    std::size_t words_;
    std::vector<char> present_;
    std::vector<int> degree_;
    std::vector<std::uint64_t> adj_;
    std::vector<int> degree_hist_;
    std::vector<long long> power_sums_;   // index k, k = 1..K
    std::vector<double> inv_star_den_;
    double inv_tri_den_ = 0.0;
    long long triangles_ = 0;
    int max_degree_ = 0;
    int edges_on_ = 0;

    int common_neighbors(int u, int v) const {
        int c = 0;
        const std::uint64_t* ru = adj_.data() + static_cast<std::size_t>(u) * words_;
        const std::uint64_t* rv = adj_.data() + static_cast<std::size_t>(v) * words_;
        for (std::size_t w = 0; w < words_; ++w) c += std::popcount(ru[w] & rv[w]);
        return c;
    }

    void bump_degree(int v, int dir) {
        int old = degree_[static_cast<std::size_t>(v)];
        int fresh = old + dir;
        for (std::size_t k = 1; k < power_sums_.size(); ++k) {
            long long op = 1, np = 1;
            for (std::size_t r = 0; r < k; ++r) { op *= old; np *= fresh; }
            power_sums_[k] += np - op;
        }
        --degree_hist_[static_cast<std::size_t>(old)];
        ++degree_hist_[static_cast<std::size_t>(fresh)];
        degree_[static_cast<std::size_t>(v)] = fresh;
        if (fresh > max_degree_) max_degree_ = fresh;
        while (max_degree_ > 0 && degree_hist_[static_cast<std::size_t>(max_degree_)] == 0) --max_degree_;
    }

    void toggle(int e) {
        auto [u, v] = g_.edge(e);
        bool was_on = present_[static_cast<std::size_t>(e)];
        if (was_on) {
            // Drop adjacency first so common_neighbors sees the open state.
            adj_[static_cast<std::size_t>(u) * words_ + v / 64] &= ~(std::uint64_t(1) << (v % 64));
            adj_[static_cast<std::size_t>(v) * words_ + u / 64] &= ~(std::uint64_t(1) << (u % 64));
            triangles_ -= common_neighbors(u, v);
            bump_degree(u, -1);
            bump_degree(v, -1);
            --edges_on_;
        } else {
            triangles_ += common_neighbors(u, v);
            adj_[static_cast<std::size_t>(u) * words_ + v / 64] |= std::uint64_t(1) << (v % 64);
            adj_[static_cast<std::size_t>(v) * words_ + u / 64] |= std::uint64_t(1) << (u % 64);
            bump_degree(u, +1);
            bump_degree(v, +1);
            ++edges_on_;
        }
        present_[static_cast<std::size_t>(e)] = !was_on;
    }
};

} // namespace

EdgeSubset glauber_step(const EdgeSubset& state, const Graph& g, const MarkovParams& params,
                        std::mt19937_64& rng) {
    params.validate(g);
    if (state.size() != g.m()) throw std::invalid_argument("glauber_step: state width does not match edge count");
    GlauberChain chain(g, params);
    chain.apply_state(state);
    int e = static_cast<int>(rng() % static_cast<std::uint64_t>(g.m()));
    double delta = chain.toggle_log_ratio(e);
    double p_on = 1.0 / (1.0 + std::exp(-delta));
    bool on = uniform01(rng) < p_on;
    EdgeSubset out = state;
    out.set(e, on);
    return out;
}

SampleResult sample_suffstats(const Graph& g, const MarkovParams& params, const ChainConfig& cfg) {
    params.validate(g);
    cfg.validate();
    const int m = g.m();
    if (m < 1) throw std::invalid_argument("sample_suffstats: graph has no edges");

    GlauberChain chain(g, params);
    std::mt19937_64 rng(cfg.seed);
    const int dim = params.star_order() + 1;

    auto sweep = [&] {
        for (int step = 0; step < m; ++step) {
            int e = static_cast<int>(rng() % static_cast<std::uint64_t>(m));
            double delta = chain.toggle_log_ratio(e);
            double p_on = 1.0 / (1.0 + std::exp(-delta));
            chain.set_slot(e, uniform01(rng) < p_on);
        }
    };

    for (long long s = 0; s < cfg.burnin; ++s) sweep();

    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(cfg.sweeps / cfg.thin));
    long long boundary = 0;
    for (long long s = 0; s < cfg.sweeps; ++s) {
        sweep();
        if ((s + 1) % cfg.thin != 0) continue;
        rows.push_back(chain.densities());
        if (chain.edges_on() == 0 || chain.edges_on() == m) ++boundary;
    }

    SampleResult result;
    result.samples = static_cast<long long>(rows.size());
    result.boundary_fraction = rows.empty() ? 0.0 : static_cast<double>(boundary) / static_cast<double>(rows.size());
    result.mean.assign(static_cast<std::size_t>(dim), 0.0);
    result.stderr_batch.assign(static_cast<std::size_t>(dim), 0.0);
    if (rows.empty()) return result;

    const long long nbatch = std::max<long long>(1, std::min<long long>(32, result.samples));
    const long long batch_len = result.samples / nbatch;
    for (int d = 0; d < dim; ++d) {
        std::vector<double> batch_means(static_cast<std::size_t>(nbatch), 0.0);
        for (long long b = 0; b < nbatch; ++b) {
            double acc = 0.0;
            for (long long r = b * batch_len; r < (b + 1) * batch_len; ++r)
                acc += rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(d)];
            batch_means[static_cast<std::size_t>(b)] = acc / static_cast<double>(batch_len);
        }
        double mean = 0.0;
        for (double bm : batch_means) mean += bm;
        mean /= static_cast<double>(nbatch);
        double var = 0.0;
        for (double bm : batch_means) var += (bm - mean) * (bm - mean);
        result.mean[static_cast<std::size_t>(d)] = mean;
        if (nbatch > 1)
            result.stderr_batch[static_cast<std::size_t>(d)] =
                std::sqrt(var / static_cast<double>((nbatch - 1) * nbatch));
    }
    return result;
}

std::vector<double> exact_expected_stats(const Graph& g, const MarkovParams& params, int max_edges) {
    require_enumerable(g.m(), max_edges, "exact_expected_stats");
    Distribution dist = markov_distribution(g, params, max_edges);
    const int dim = params.star_order() + 1;
    std::vector<double> acc(static_cast<std::size_t>(dim), 0.0);
    for (std::uint64_t mask = 0; mask < dist.subset_count(); ++mask) {
        double p = dist.prob(mask);
        SubgraphStats st = spanning_stats(g, mask);
        for (int k = 1; k <= params.star_order(); ++k)
            acc[static_cast<std::size_t>(k - 1)] += p * hom_density(g, st, Motif::kstar(k)).to_double();
        acc[static_cast<std::size_t>(dim - 1)] += p * hom_density(g, st, Motif::triangle()).to_double();
    }
    return acc;
}

FitResult fit_stochastic_approximation(const Graph& observed, int star_order, bool include_triangle,
                                       const MarkovParams& init, const FitOptions& options,
                                       const ChainConfig& cfg) {
    if (observed.n() < 2) throw std::invalid_argument("fit: observed graph needs at least 2 vertices");
    return fit_to_stats(Graph::complete(observed.n()),
                        stat_vector(observed, EdgeSubset::full(observed.m()), star_order),
                        star_order, include_triangle, init, options, cfg);
}

FitResult fit_to_stats(const Graph& host, const std::vector<double>& observed_stats, int star_order,
                       bool include_triangle, const MarkovParams& init, const FitOptions& options,
                       const ChainConfig& cfg) {
    if (star_order < 1) throw std::invalid_argument("fit: star order must be >= 1");
    if (star_order > host.max_degree())
        throw std::invalid_argument("fit: star order exceeds the host's max degree");
    if (observed_stats.size() != static_cast<std::size_t>(star_order) + 1)
        throw std::invalid_argument("fit: observed stats must have star_order + 1 components");
    cfg.validate();

    const int dim = star_order + (include_triangle ? 1 : 0);

    FitResult result;
    result.observed_stats = observed_stats;

    MarkovParams theta = init;
    theta.temperature = 1.0;   // only beta/T is identifiable; report beta/T
    theta.beta_stars.resize(static_cast<std::size_t>(star_order), 0.0);
    if (!include_triangle) theta.beta_triangle = init.beta_triangle;

    auto fitted_components = [&](const std::vector<double>& stats) {
        std::vector<double> out(static_cast<std::size_t>(dim));
        for (int k = 0; k < star_order; ++k) out[static_cast<std::size_t>(k)] = stats[static_cast<std::size_t>(k)];
        if (include_triangle) out[static_cast<std::size_t>(star_order)] = stats[static_cast<std::size_t>(star_order)];
        return out;
    };
    const std::vector<double> target = fitted_components(result.observed_stats);

    double last_gap = std::numeric_limits<double>::infinity();
    if (last_gap <= options.tolerance) {   // vacuous stopping rule (tolerance = inf)
        result.params = theta;
        result.converged = true;
        result.final_gap = last_gap;
        return result;
    }

    for (int it = 0; it < options.max_iterations; ++it) {
        ChainConfig iter_cfg = cfg;
        iter_cfg.seed = cfg.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(it + 1);
        SampleResult sample = sample_suffstats(host, theta, iter_cfg);
        if (sample.boundary_fraction > options.degeneracy_threshold && !result.degeneracy_warning) {
            result.degeneracy_warning = true;
            result.degeneracy_note = "chain spent " + std::to_string(sample.boundary_fraction * 100.0) +
                                     "% of iteration " + std::to_string(it) + " at the empty/full graph";
        }
        std::vector<double> sampled = fitted_components(sample.mean);
        double gap_sq = 0.0;
        std::vector<double> gap(static_cast<std::size_t>(dim));
        for (int d = 0; d < dim; ++d) {
            gap[static_cast<std::size_t>(d)] = target[static_cast<std::size_t>(d)] - sampled[static_cast<std::size_t>(d)];
            gap_sq += gap[static_cast<std::size_t>(d)] * gap[static_cast<std::size_t>(d)];
        }
        last_gap = std::sqrt(gap_sq);

        FitTrace trace;
        trace.iteration = it;
        for (int k = 0; k < star_order; ++k) trace.theta.push_back(theta.beta_stars[static_cast<std::size_t>(k)]);
        if (include_triangle) trace.theta.push_back(theta.beta_triangle);
        trace.gap_norm = last_gap;
        result.trajectory.push_back(std::move(trace));

        if (last_gap <= options.tolerance) {
            result.converged = true;
            break;
        }
        double gain = options.gain.at(it);
        for (int k = 0; k < star_order; ++k) theta.beta_stars[static_cast<std::size_t>(k)] += gain * gap[static_cast<std::size_t>(k)];
        if (include_triangle) theta.beta_triangle += gain * gap[static_cast<std::size_t>(star_order)];
    }

    result.params = theta;
    result.final_gap = last_gap;
    if (!result.converged && last_gap <= options.tolerance) result.converged = true;
    return result;
}

} // namespace ergraph
