#pragma once

#include <map>
#include <span>
#include <vector>

#include "ergraph/model.hpp"

namespace ergraph {

// Multiaffine polynomial, one coefficient per subset mask of the variables.
struct MultiAffinePoly {
    int nvars = 0;
    std::vector<double> coeff;   // size 2^nvars, coeff[0] is the constant term

    double constant_term() const { return coeff.empty() ? 0.0 : coeff[0]; }
};

// Homogeneous polynomial in sparse exponent-vector form. Coefficients are
// plain monomial-basis coefficients (not divided by alpha!).
struct HomogPoly {
    int nvars = 0;
    int degree = 0;
    std::map<std::vector<int>, double> terms;   // exponent vector -> coefficient
};

// coeff(S) = P(S) when normalized, else the unnormalized weight.
MultiAffinePoly generating_polynomial(const Distribution& dist, bool normalized = true);

double evaluate(const MultiAffinePoly& poly, std::span<const double> x);

// Formal partial derivative in variable `var`; result is independent of x_var.
MultiAffinePoly partial(const MultiAffinePoly& poly, int var);

// h(z, x_1..x_m) = z^m g(x/z); variable 0 is z, degree = m.
HomogPoly homogenize(const MultiAffinePoly& poly);

HomogPoly homog_partial(const HomogPoly& h, int var);

double evaluate(const HomogPoly& h, std::span<const double> x);

// Emission format: {"vars": [...], "terms": [{"exp": [...], "coeff": c}]},
// exponents little-endian in variable index.
std::string poly_to_json(const MultiAffinePoly& poly, const std::vector<std::string>& var_names);
std::string poly_to_json(const HomogPoly& poly, const std::vector<std::string>& var_names);

std::vector<std::string> edge_variable_names(const Graph& g, bool with_homogenizer);

} // namespace ergraph
