#include "ergraph/genpoly.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace ergraph {

MultiAffinePoly generating_polynomial(const Distribution& dist, bool normalized) {
    MultiAffinePoly poly;
    poly.nvars = dist.edge_count();
    poly.coeff.resize(dist.subset_count());
    for (std::uint64_t mask = 0; mask < dist.subset_count(); ++mask)
        poly.coeff[mask] = normalized ? dist.prob(mask) : dist.weight(mask);
    return poly;
}

double evaluate(const MultiAffinePoly& poly, std::span<const double> x) {
    if (static_cast<int>(x.size()) != poly.nvars)
        throw std::invalid_argument("evaluate: expected " + std::to_string(poly.nvars) + " coordinates");
    // Horner over variables: fold the top variable into the lower half.
    std::vector<double> work(poly.coeff);
    for (int v = poly.nvars - 1; v >= 0; --v) {
        std::size_t half = std::size_t(1) << v;
        for (std::size_t mask = 0; mask < half; ++mask)
            work[mask] += x[static_cast<std::size_t>(v)] * work[mask | half];
        work.resize(half);
    }
    return work[0];
}

MultiAffinePoly partial(const MultiAffinePoly& poly, int var) {
    if (var < 0 || var >= poly.nvars) throw std::out_of_range("partial: variable index out of range");
    MultiAffinePoly out;
    out.nvars = poly.nvars;
    out.coeff.assign(poly.coeff.size(), 0.0);
    std::uint64_t bit = std::uint64_t(1) << var;
    for (std::uint64_t mask = 0; mask < poly.coeff.size(); ++mask)
        if (!(mask & bit)) out.coeff[mask] = poly.coeff[mask | bit];
    return out;
}

HomogPoly homogenize(const MultiAffinePoly& poly) {
    HomogPoly h;
    h.nvars = poly.nvars + 1;
    h.degree = poly.nvars;
    for (std::uint64_t mask = 0; mask < poly.coeff.size(); ++mask) {
        double c = poly.coeff[mask];
        if (c == 0.0) continue;
        std::vector<int> exp(static_cast<std::size_t>(h.nvars), 0);
        exp[0] = poly.nvars - std::popcount(mask);
        for (int e = 0; e < poly.nvars; ++e)
            if ((mask >> e) & 1u) exp[static_cast<std::size_t>(e + 1)] = 1;
        h.terms.emplace(std::move(exp), c);
    }
    return h;
}

HomogPoly homog_partial(const HomogPoly& h, int var) {
    if (var < 0 || var >= h.nvars) throw std::out_of_range("homog_partial: variable index out of range");
    if (h.degree < 1) throw std::invalid_argument("homog_partial: degree must be >= 1");
    HomogPoly out;
    out.nvars = h.nvars;
    out.degree = h.degree - 1;
    for (const auto& [exp, c] : h.terms) {
        int a = exp[static_cast<std::size_t>(var)];
        if (a == 0) continue;
        std::vector<int> down = exp;
        --down[static_cast<std::size_t>(var)];
        out.terms[std::move(down)] += c * a;
    }
    // Drop cancellations so the support stays honest.
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = it->second == 0.0 ? out.terms.erase(it) : std::next(it);
    return out;
}

double evaluate(const HomogPoly& h, std::span<const double> x) {
    if (static_cast<int>(x.size()) != h.nvars)
        throw std::invalid_argument("evaluate: expected " + std::to_string(h.nvars) + " coordinates");
    double total = 0.0;
    for (const auto& [exp, c] : h.terms) {
        double t = c;
        for (int v = 0; v < h.nvars; ++v)
            for (int i = 0; i < exp[static_cast<std::size_t>(v)]; ++i) t *= x[static_cast<std::size_t>(v)];
        total += t;
    }
    return total;
}

std::vector<std::string> edge_variable_names(const Graph& g, bool with_homogenizer) {
    std::vector<std::string> names;
    if (with_homogenizer) names.push_back("z");
    for (int e = 0; e < g.m(); ++e) names.push_back("x" + std::to_string(e));
    return names;
}

namespace {

nlohmann::json term_json(const std::vector<int>& exp, double c) {
    return nlohmann::json{{"exp", exp}, {"coeff", c}};
}

} // namespace

std::string poly_to_json(const MultiAffinePoly& poly, const std::vector<std::string>& var_names) {
    if (static_cast<int>(var_names.size()) != poly.nvars)
        throw std::invalid_argument("poly_to_json: variable name count mismatch");
    nlohmann::json terms = nlohmann::json::array();
    for (std::uint64_t mask = 0; mask < poly.coeff.size(); ++mask) {
        if (poly.coeff[mask] == 0.0) continue;
        std::vector<int> exp(static_cast<std::size_t>(poly.nvars), 0);
        for (int v = 0; v < poly.nvars; ++v)
            if ((mask >> v) & 1u) exp[static_cast<std::size_t>(v)] = 1;
        terms.push_back(term_json(exp, poly.coeff[mask]));
    }
    return nlohmann::json{{"vars", var_names}, {"terms", terms}}.dump();
}

std::string poly_to_json(const HomogPoly& poly, const std::vector<std::string>& var_names) {
    if (static_cast<int>(var_names.size()) != poly.nvars)
        throw std::invalid_argument("poly_to_json: variable name count mismatch");
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [exp, c] : poly.terms) terms.push_back(term_json(exp, c));
    return nlohmann::json{{"vars", var_names}, {"terms", terms}}.dump();
}

} // namespace ergraph
