#include "ergraph/lorentzian.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/Dense>

namespace ergraph {

SupportSet support(const HomogPoly& h, double tol) {
    SupportSet j;
    j.nvars = h.nvars;
    j.degree = h.degree;
    for (const auto& [exp, c] : h.terms)
        if (std::abs(c) > tol) j.points.push_back(exp);
    return j;   // map iteration is already lexicographic
}

std::optional<MConvexWitness> m_convex_violation(const SupportSet& j) {
    if (j.points.empty()) return std::nullopt;
    const std::size_t dim = j.points.front().size();
    long long deg = 0;
    for (int v : j.points.front()) deg += v;
    for (const auto& p : j.points) {
        long long s = 0;
        for (int v : p) s += v;
        if (s != deg || p.size() != dim)
            throw std::invalid_argument("m_convex_violation: support is not homogeneous");
    }
    std::set<std::vector<int>> members(j.points.begin(), j.points.end());
    for (const auto& alpha : j.points) {
        for (const auto& beta : j.points) {
            for (std::size_t i = 0; i < dim; ++i) {
                if (alpha[i] <= beta[i]) continue;
                bool exchanged = false;
                std::vector<int> candidate = alpha;
                --candidate[i];
                for (std::size_t k = 0; k < dim && !exchanged; ++k) {
                    if (alpha[k] >= beta[k]) continue;
                    ++candidate[k];
                    if (members.count(candidate)) exchanged = true;
                    --candidate[k];
                }
                if (!exchanged)
                    return MConvexWitness{alpha, beta, static_cast<int>(i)};
            }
        }
    }
    return std::nullopt;
}

bool is_m_convex(const SupportSet& j) { return !m_convex_violation(j).has_value(); }

Signature quadratic_signature(const HomogPoly& q, double tol) {
    if (q.degree != 2) throw std::invalid_argument("quadratic_signature: polynomial must have degree 2");
    const int n = q.nvars;
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [exp, c] : q.terms) {
        int first = -1, second = -1;
        for (int v = 0; v < n; ++v) {
            for (int rep = 0; rep < exp[static_cast<std::size_t>(v)]; ++rep) {
                if (first < 0) first = v;
                else second = v;
            }
        }
        if (first == second || second < 0) {  // x_v^2 term
            hess(first, first) = 2.0 * c;
        } else {
            hess(first, second) = c;
            hess(second, first) = c;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hess);
    Signature sig;
    sig.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    double spectral = 0.0;
    for (double ev : sig.eigenvalues) spectral = std::max(spectral, std::abs(ev));
    double cut = tol * spectral;
    for (double ev : sig.eigenvalues) {
        if (ev > cut) ++sig.positive;
        else if (ev < -cut) ++sig.negative;
        else ++sig.zero;
    }
    return sig;
}

std::string LorentzFailure::describe() const {
    std::ostringstream os;
    auto join = [](const std::vector<int>& v) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s + ")";
    };
    switch (kind) {
        case Kind::NegativeCoefficient:
            os << "negative coefficient " << coefficient << " at exponent " << join(exponent);
            break;
        case Kind::NotMConvex:
            os << "support not M-convex: exchange fails for alpha=" << join(exchange->alpha)
               << " beta=" << join(exchange->beta) << " index " << exchange->index;
            break;
        case Kind::SignatureFailure:
            os << "quadratic after derivatives " << join(derivative_counts) << " has "
               << positive_count << " positive eigenvalues";
            break;
    }
    return os.str();
}

namespace {

// DFS over derivative multisets in non-decreasing variable order, deriving
// incrementally so shared prefixes are computed once.
bool check_quadratics(const HomogPoly& h, int from_var, double tol,
                      std::vector<int>& counts, LorentzVerdict& verdict) {
    if (h.degree == 2) {
        Signature sig = quadratic_signature(h, tol);
        verdict.spectra.push_back({counts, sig.eigenvalues});
        if (sig.positive > 1) {
            LorentzFailure f;
            f.kind = LorentzFailure::Kind::SignatureFailure;
            f.derivative_counts = counts;
            f.positive_count = sig.positive;
            verdict.failure = std::move(f);
            verdict.outcome = LorentzOutcome::NotLorentzian;
            return false;
        }
        return true;
    }
    for (int v = from_var; v < h.nvars; ++v) {
        HomogPoly d = homog_partial(h, v);
        if (d.terms.empty()) continue;   // zero derivative, trivially fine
        ++counts[static_cast<std::size_t>(v)];
        bool ok = check_quadratics(d, v, tol, counts, verdict);
        --counts[static_cast<std::size_t>(v)];
        if (!ok) return false;
    }
    return true;
}

} // namespace

LorentzVerdict is_lorentzian(const HomogPoly& h, double tol) {
    LorentzVerdict verdict;
    if (h.terms.empty()) return verdict;   // zero polynomial

    for (const auto& [exp, c] : h.terms) {
        if (c < 0.0) {
            LorentzFailure f;
            f.kind = LorentzFailure::Kind::NegativeCoefficient;
            f.exponent = exp;
            f.coefficient = c;
            verdict.failure = std::move(f);
            verdict.outcome = LorentzOutcome::NotLorentzian;
            return verdict;
        }
    }
    if (h.degree <= 1) return verdict;

    if (auto witness = m_convex_violation(support(h))) {
        LorentzFailure f;
        f.kind = LorentzFailure::Kind::NotMConvex;
        f.exchange = std::move(witness);
        verdict.failure = std::move(f);
        verdict.outcome = LorentzOutcome::NotLorentzian;
        return verdict;
    }

    std::vector<int> counts(static_cast<std::size_t>(h.nvars), 0);
    check_quadratics(h, 0, tol, counts, verdict);
    return verdict;
}

LorentzVerdict is_lorentzian_distribution(const Distribution& dist, double tol, int max_edges) {
    require_enumerable(dist.edge_count(), max_edges, "is_lorentzian_distribution");
    return is_lorentzian(homogenize(generating_polynomial(dist, true)), tol);
}

LorentzOutcome lorentzian_verdict_cubic(const Graph& host, const MarkovParams& params,
                                        std::optional<CubicModelKind> kind) {
    if (host.n() != 3 || host.m() != 3)
        throw std::invalid_argument("lorentzian_verdict_cubic: host must be K_3");
    CubicModelKind k = kind.value_or(cubic_kind_for(params));
    double beta = params.beta_triangle;
    if (k == CubicModelKind::EdgeTriangle)
        return beta <= 0.0 ? LorentzOutcome::Lorentzian : LorentzOutcome::NotLorentzian;
    double beta2 = params.star_order() >= 2 ? params.beta_stars[1] : 0.0;
    return (beta2 <= 0.0 && beta <= 0.0) ? LorentzOutcome::Lorentzian : LorentzOutcome::NotLorentzian;
}

} // namespace ergraph
