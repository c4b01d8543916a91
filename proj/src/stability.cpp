#include "ergraph/stability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

namespace ergraph {

namespace {

// Gap evaluator for one point: one pass of subset products, then a 4-way
// split per pair. prod[mask] = prod_{b in mask} x_b.
class GapEvaluator {
  public:
    explicit GapEvaluator(const MultiAffinePoly& g) : g_(g), prod_(g.coeff.size(), 1.0) {}

    void load(std::span<const double> x) {
        for (std::uint64_t mask = 1; mask < prod_.size(); ++mask) {
            int low = std::countr_zero(mask);
            prod_[mask] = prod_[mask & (mask - 1)] * x[static_cast<std::size_t>(low)];
        }
        x_.assign(x.begin(), x.end());
    }

    struct Parts {
        double value = 0;      // g(x)
        double di = 0;         // dg/dx_i
        double dj = 0;         // dg/dx_j
        double dij = 0;        // d2g/dx_i dx_j
        double noise = 0;      // running bound on the roundoff of gap()
        double gap() const { return di * dj - dij * value; }
        double scale() const { return std::max(1.0, value * value); }
        // A reported gap must clear both the contract tolerance and the
        // floating-point error bound; cancellation near real roots otherwise
        // turns roundoff into phantom witnesses.
        bool violates(double tol) const { return gap() < -std::max(tol * scale(), noise); }
    };

    Parts pair_parts(int i, int j) const {
        std::uint64_t bi = std::uint64_t(1) << i;
        std::uint64_t bj = std::uint64_t(1) << j;
        double g00 = 0, g10 = 0, g01 = 0, g11 = 0;
        double a00 = 0, a10 = 0, a01 = 0, a11 = 0;   // absolute-value sums
        for (std::uint64_t mask = 0; mask < prod_.size(); ++mask) {
            if (mask & (bi | bj)) continue;
            double p = prod_[mask];
            double ap = std::abs(p);
            g00 += g_.coeff[mask] * p;
            g10 += g_.coeff[mask | bi] * p;
            g01 += g_.coeff[mask | bj] * p;
            g11 += g_.coeff[mask | bi | bj] * p;
            a00 += std::abs(g_.coeff[mask]) * ap;
            a10 += std::abs(g_.coeff[mask | bi]) * ap;
            a01 += std::abs(g_.coeff[mask | bj]) * ap;
            a11 += std::abs(g_.coeff[mask | bi | bj]) * ap;
        }
        Parts parts;
        double xi = x_[static_cast<std::size_t>(i)];
        double xj = x_[static_cast<std::size_t>(j)];
        parts.value = g00 + xi * g10 + xj * g01 + xi * xj * g11;
        parts.di = g10 + xj * g11;
        parts.dj = g01 + xi * g11;
        parts.dij = g11;
        double axi = std::abs(xi), axj = std::abs(xj);
        double a_value = a00 + axi * a10 + axj * a01 + axi * axj * a11;
        double a_di = a10 + axj * a11;
        double a_dj = a01 + axi * a11;
        parts.noise = (a_di * a_dj + a11 * a_value) *
                      (static_cast<double>(g_.nvars) + 6.0) * std::numeric_limits<double>::epsilon();
        return parts;
    }

  private:
    const MultiAffinePoly& g_;
    std::vector<double> prod_;
    std::vector<double> x_;
};

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double cauchy_draw(std::mt19937_64& rng, double scale) {
    double u = uniform01(rng);
    return scale * std::tan(std::numbers::pi * (u - 0.5));
}

// Deterministic structured start points tried before random sampling:
// violations for these models show up near the origin, on sparse axis
// patterns, and along the diagonal.
std::vector<std::vector<double>> structured_starts(int m) {
    std::vector<std::vector<double>> starts;
    auto filled = [m](double v) { return std::vector<double>(static_cast<std::size_t>(m), v); };
    starts.push_back(filled(0.0));
    for (double t : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
        starts.push_back(filled(t));
        starts.push_back(filled(-t));
        auto alt = filled(t);
        for (int v = 1; v < m; v += 2) alt[static_cast<std::size_t>(v)] = -t;
        starts.push_back(std::move(alt));
    }
    for (int v = 0; v < m && v < 8; ++v) {
        for (double t : {1.0, -1.0, 5.0, -5.0}) {
            auto x = filled(0.0);
            x[static_cast<std::size_t>(v)] = t;
            starts.push_back(std::move(x));
        }
    }
    return starts;
}

struct StartResult {
    bool violated = false;
    WagnerWitness witness;
    long long evaluations = 0;
};

// Scan all pairs at the point, then pattern-search descent on the most
// negative pair. Normalized gap = gap / max(1, g^2).
StartResult run_start(const MultiAffinePoly& g, const std::vector<double>& start,
                      double tol, long long eval_cap) {
    const int m = g.nvars;
    GapEvaluator eval(g);
    StartResult result;

    std::vector<double> x = start;
    auto probe = [&](const std::vector<double>& pt, int i, int j) {
        eval.load(pt);
        auto parts = eval.pair_parts(i, j);
        ++result.evaluations;
        if (parts.violates(tol)) {
            result.violated = true;
            result.witness = {pt, i, j, parts.gap(), parts.scale()};
        }
        return parts;
    };

    // Initial scan over every pair at the start point.
    eval.load(x);
    int best_i = 0, best_j = 1;
    double best_norm = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            auto parts = eval.pair_parts(i, j);
            ++result.evaluations;
            if (parts.violates(tol)) {
                result.violated = true;
                result.witness = {x, i, j, parts.gap(), parts.scale()};
                return result;
            }
            double norm = parts.gap() / parts.scale();
            if (norm < best_norm) { best_norm = norm; best_i = i; best_j = j; }
        }
    }

    // Pattern-search descent on the best pair.
    double current = best_norm;
    std::vector<double> step(static_cast<std::size_t>(m));
    for (int v = 0; v < m; ++v) step[static_cast<std::size_t>(v)] = 0.5 * (1.0 + std::abs(x[static_cast<std::size_t>(v)]));
    int stale_sweeps = 0;
    while (result.evaluations < eval_cap && stale_sweeps < 3) {
        bool improved = false;
        for (int v = 0; v < m && result.evaluations < eval_cap; ++v) {
            double& xv = x[static_cast<std::size_t>(v)];
            double& sv = step[static_cast<std::size_t>(v)];
            double saved = xv;
            bool local = false;
            for (double dir : {+1.0, -1.0}) {
                xv = saved + dir * sv;
                auto parts = probe(x, best_i, best_j);
                if (result.violated) return result;
                double norm = parts.gap() / parts.scale();
                if (norm < current - 1e-18) { current = norm; local = true; break; }
                xv = saved;
            }
            if (local) { sv *= 2.0; improved = true; }
            else { sv *= 0.5; if (sv < 1e-9 * (1.0 + std::abs(saved))) sv = 1e-9 * (1.0 + std::abs(saved)); }
        }
        stale_sweeps = improved ? 0 : stale_sweeps + 1;
    }
    return result;
}

std::vector<double> random_start(int m, std::mt19937_64& rng, int flavor) {
    std::vector<double> x(static_cast<std::size_t>(m));
    switch (flavor % 4) {
        case 0:
            for (double& v : x) v = cauchy_draw(rng, 1.0);
            break;
        case 1:
            for (double& v : x) v = 0.3 * (uniform01(rng) - 0.5);
            break;
        case 2:
            for (double& v : x) v = cauchy_draw(rng, 4.0);
            break;
        default:
            // Sparse pattern: most coordinates on a small lattice, a couple heavy.
            for (double& v : x) v = std::floor(uniform01(rng) * 5.0) - 2.0;
            x[rng() % static_cast<std::uint64_t>(m)] = cauchy_draw(rng, 2.0);
            break;
    }
    return x;
}

} // namespace

double wagner_gap(const MultiAffinePoly& g, std::span<const double> x, int i, int j) {
    if (i == j) throw std::invalid_argument("wagner_gap: indices must be distinct");
    if (i < 0 || j < 0 || i >= g.nvars || j >= g.nvars)
        throw std::out_of_range("wagner_gap: variable index out of range");
    if (static_cast<int>(x.size()) != g.nvars)
        throw std::invalid_argument("wagner_gap: expected " + std::to_string(g.nvars) + " coordinates");
    GapEvaluator eval(g);
    eval.load(x);
    return eval.pair_parts(i, j).gap();
}

StabilityVerdict falsify_stability(const MultiAffinePoly& g, const FalsifyOptions& options) {
    if (options.budget < 1) {
        StabilityVerdict v;
        v.outcome = StabilityOutcome::NoViolationFound;
        return v;
    }
    StabilityVerdict verdict;
    if (g.nvars < 2) return verdict;   // no pairs: univariate multiaffine is stable

    const auto structured = structured_starts(g.nvars);
    const long long per_start_cap = 400;
    long long remaining = options.budget;

    // Starts are indexed; start t draws from rng(seed, t) so the schedule is
    // identical regardless of thread count. Chunks keep early exit
    // deterministic: all starts of a chunk run, then the smallest violating
    // index wins. The chunk size is fixed (not thread-dependent) so the
    // per-start budget slicing is identical however many workers run.
    const int chunk = 16;
    long long start_index = 0;
    bool out_of_budget = false;
    while (!out_of_budget) {
        std::vector<StartResult> results(static_cast<std::size_t>(chunk));
        std::vector<long long> caps(static_cast<std::size_t>(chunk), 0);
        {
            long long budget_cursor = remaining;
            for (int c = 0; c < chunk; ++c) {
                caps[static_cast<std::size_t>(c)] = std::min<long long>(per_start_cap, budget_cursor);
                budget_cursor -= caps[static_cast<std::size_t>(c)];
            }
        }
        auto worker = [&](int c) {
            if (caps[static_cast<std::size_t>(c)] <= 0) return;
            long long t = start_index + c;
            std::vector<double> x0;
            if (t < static_cast<long long>(structured.size())) {
                x0 = structured[static_cast<std::size_t>(t)];
            } else {
                std::mt19937_64 rng(options.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(t) + 1);
                x0 = random_start(g.nvars, rng, static_cast<int>(t % 4));
            }
            results[static_cast<std::size_t>(c)] = run_start(g, x0, options.tol, caps[static_cast<std::size_t>(c)]);
        };
        if (options.threads > 1) {
            std::vector<std::thread> pool;
            std::atomic<int> next{0};
            for (int w = 0; w < options.threads; ++w)
                pool.emplace_back([&] {
                    for (int c = next.fetch_add(1); c < chunk; c = next.fetch_add(1)) worker(c);
                });
            for (auto& th : pool) th.join();
        } else {
            for (int c = 0; c < chunk; ++c) worker(c);
        }
        for (int c = 0; c < chunk; ++c) {
            const auto& r = results[static_cast<std::size_t>(c)];
            verdict.evaluations += r.evaluations;
            remaining -= r.evaluations;
            if (r.violated && !verdict.witness) {
                verdict.outcome = StabilityOutcome::Violation;
                verdict.witness = r.witness;
            }
        }
        if (verdict.witness) return verdict;
        start_index += chunk;
        out_of_budget = remaining <= 0;
    }
    verdict.outcome = StabilityOutcome::NoViolationFound;
    return verdict;
}

StabilityVerdict falsify_stability(const MultiAffinePoly& g, long long budget, std::uint64_t seed) {
    FalsifyOptions options;
    options.budget = budget;
    options.seed = seed;
    return falsify_stability(g, options);
}

NlcResult negative_lattice_check(const Distribution& dist, int max_edges) {
    require_enumerable(dist.edge_count(), max_edges, "negative_lattice_check");
    NlcResult result;
    const auto& lw = dist.log_weights;
    const std::uint64_t total = lw.size();
    const double slack = std::log1p(1e-12);
    for (std::uint64_t s = 0; s < total; ++s) {
        for (std::uint64_t t = s + 1; t < total; ++t) {
            ++result.pairs_checked;
            double lhs = lw[s | t] + lw[s & t];
            double rhs = lw[s] + lw[t];
            if (lhs > rhs + slack) {
                result.pass = false;
                result.witness = NlcWitness{s, t, lhs, rhs};
                return result;
            }
        }
    }
    return result;
}

double sr_cubic_beta2(double temperature, double beta_triangle) {
    if (!(temperature > 0.0)) throw std::invalid_argument("sr_cubic_beta2: temperature must be > 0");
    double arg = 3.0 * std::exp(2.0 * beta_triangle / (9.0 * temperature)) - 2.0;
    if (!(arg > 0.0))
        throw std::domain_error("sr_cubic_beta2: 3 exp(2 beta/(9T)) - 2 is not positive; no admissible 2-star coefficient");
    return 4.5 * temperature * std::log(arg) - 2.0 * beta_triangle;
}

SrVerdict sr_verdict_cubic(const Graph& host, const MarkovParams& params,
                           std::optional<CubicModelKind> kind) {
    if (host.n() != 3 || host.m() != 3)
        throw std::invalid_argument("sr_verdict_cubic: host must be K_3");
    if (params.star_order() > 2)
        throw std::invalid_argument("sr_verdict_cubic: star order cap must be <= 2 on K_3");
    CubicModelKind k = kind.value_or(cubic_kind_for(params));
    const double beta = params.beta_triangle;
    constexpr double kEqualityTol = 1e-9;

    if (k == CubicModelKind::EdgeTriangle) {
        if (std::abs(beta) <= kEqualityTol)
            return {true, "edge-triangle model with vanishing triangle coefficient; the edge coefficient does not affect stability"};
        return {false, "edge-triangle model requires a vanishing triangle coefficient"};
    }
    if (beta > 0.0)
        return {false, "cubic model requires a nonpositive triangle coefficient"};
    double target;
    try {
        target = sr_cubic_beta2(params.temperature, beta);
    } catch (const std::domain_error&) {
        return {false, "two-star closed form undefined for this triangle coefficient (outside log domain); no claim of stability"};
    }
    double beta2 = params.star_order() >= 2 ? params.beta_stars[1] : 0.0;
    if (std::abs(beta2 - target) <= kEqualityTol)
        return {true, "cubic model matches the closed-form 2-star coefficient (tolerance 1e-9)"};
    return {false, "cubic model 2-star coefficient differs from the closed form by " + std::to_string(beta2 - target)};
}

std::string to_string(CheckStatus status) {
    switch (status) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        default: return "not-applicable";
    }
}

NecessaryReport check_sr_necessary(const MarkovParams& params, const Graph& g) {
    NecessaryReport report;
    const double beta = params.beta_triangle;
    const double beta2 = params.star_order() >= 2 ? params.beta_stars[1] : 0.0;

    if (!g.contains_triangle()) {
        report.triangle_two_star = CheckStatus::NotApplicable;
        report.triangle_two_star_note = "graph has no triangle";
    } else if (beta > -beta2) {
        report.triangle_two_star = CheckStatus::Fail;
        report.triangle_two_star_note =
            "beta = " + std::to_string(beta) + " > " + std::to_string(-beta2) + " = -beta_2; not strongly Rayleigh";
    } else {
        report.triangle_two_star = CheckStatus::Pass;
        report.triangle_two_star_note = "beta <= -beta_2 holds";
    }

    if (params.star_order() < 3) {
        report.three_star = CheckStatus::NotApplicable;
        report.three_star_note = "model has no 3-star coefficient (star order cap < 3)";
    } else if (!g.contains_three_star()) {
        report.three_star = CheckStatus::NotApplicable;
        report.three_star_note = "graph has no 3-star";
    } else {
        const double beta3 = params.beta_stars[2];
        const double bound = -0.2 * g.n() * beta2;
        if (beta3 > bound) {
            report.three_star = CheckStatus::Fail;
            report.three_star_note =
                "beta_3 = " + std::to_string(beta3) + " > " + std::to_string(bound) + " = -(n/5) beta_2; not strongly Rayleigh";
        } else {
            report.three_star = CheckStatus::Pass;
            report.three_star_note = "beta_3 <= -(n/5) beta_2 holds";
        }
    }
    return report;
}

} // namespace ergraph
