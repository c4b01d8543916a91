#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ergraph/genpoly.hpp"

namespace ergraph {

// Exponent vectors of the nonzero terms of a homogeneous polynomial.
struct SupportSet {
    int nvars = 0;
    int degree = 0;
    std::vector<std::vector<int>> points;   // lexicographically sorted
};

SupportSet support(const HomogPoly& h, double tol = 0.0);

struct MConvexWitness {
    std::vector<int> alpha;
    std::vector<int> beta;
    int index = 0;   // i with alpha_i > beta_i lacking any valid exchange
};

// Brute-force exchange-property check; the witness is the first failing
// (alpha, beta, i) in lexicographic order.
std::optional<MConvexWitness> m_convex_violation(const SupportSet& j);
bool is_m_convex(const SupportSet& j);

struct Signature {
    int positive = 0;
    int negative = 0;
    int zero = 0;
    std::vector<double> eigenvalues;   // ascending
};

// Hessian inertia of a quadratic form: H[i][i] = 2*coeff(x_i^2),
// H[i][j] = coeff(x_i x_j). Eigenvalues within tol * ||H||_2 of zero count
// as zero.
Signature quadratic_signature(const HomogPoly& q, double tol = 1e-9);

enum class LorentzOutcome { Lorentzian, NotLorentzian };

struct LorentzFailure {
    enum class Kind { NegativeCoefficient, NotMConvex, SignatureFailure };
    Kind kind;
    // NegativeCoefficient
    std::vector<int> exponent;
    double coefficient = 0.0;
    // NotMConvex
    std::optional<MConvexWitness> exchange;
    // SignatureFailure
    std::vector<int> derivative_counts;   // times each variable was derived
    int positive_count = 0;

    std::string describe() const;
};

struct SpectrumRecord {
    std::vector<int> derivative_counts;
    std::vector<double> eigenvalues;
};

struct LorentzVerdict {
    LorentzOutcome outcome = LorentzOutcome::Lorentzian;
    std::optional<LorentzFailure> failure;   // exactly one cause, first found
    std::vector<SpectrumRecord> spectra;     // retained for audit

    bool lorentzian() const { return outcome == LorentzOutcome::Lorentzian; }
};

// Checks, in fixed precedence order: nonnegative coefficients, M-convex
// support, then at-most-one-positive-eigenvalue for the quadratic obtained
// from every derivative multiset of size degree-2 (order-independent,
// computed once per multiset). Degree 0/1: nonnegative coefficients alone.
LorentzVerdict is_lorentzian(const HomogPoly& h, double tol = 1e-9);

LorentzVerdict is_lorentzian_distribution(const Distribution& dist, double tol = 1e-9,
                                          int max_edges = kDefaultEnumerationCap);

// Closed-form oracle for the K_3 models: edge-triangle Lorentzian iff
// beta <= 0; cubic Lorentzian iff beta_2 <= 0 and beta <= 0.
LorentzOutcome lorentzian_verdict_cubic(const Graph& host, const MarkovParams& params,
                                        std::optional<CubicModelKind> kind = std::nullopt);

} // namespace ergraph
