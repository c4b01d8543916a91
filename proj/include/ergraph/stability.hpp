#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ergraph/genpoly.hpp"

namespace ergraph {

// Wagner criterion gap: dg/dx_i * dg/dx_j - d2g/dx_i dx_j * g, evaluated at
// x. Real stability of a multiaffine g requires this to be >= 0 on all of
// R^m for every pair i != j.
double wagner_gap(const MultiAffinePoly& g, std::span<const double> x, int i, int j);

enum class StabilityOutcome { Violation, NoViolationFound, CertifiedStable };

struct WagnerWitness {
    std::vector<double> point;
    int i = 0;
    int j = 0;
    double gap = 0.0;
    double scale = 1.0;   // max(1, g(x)^2) at the witness
};

struct StabilityVerdict {
    StabilityOutcome outcome = StabilityOutcome::NoViolationFound;
    std::optional<WagnerWitness> witness;
    long long evaluations = 0;
    std::string certificate;   // set only for CertifiedStable
};

struct FalsifyOptions {
    long long budget = 100000;   // wagner_gap evaluations
    std::uint64_t seed = 0;
    int threads = 1;
    double tol = 1e-9;           // violation requires gap < -tol * max(1, g(x)^2)
};

// Heavy-tailed multi-start search with per-pair local descent on the gap.
// Deterministic given seed (and independent of thread count). Never returns
// CertifiedStable; positive certification is reserved for exact oracles.
StabilityVerdict falsify_stability(const MultiAffinePoly& g, const FalsifyOptions& options);
StabilityVerdict falsify_stability(const MultiAffinePoly& g, long long budget, std::uint64_t seed);

struct NlcWitness {
    std::uint64_t s = 0;
    std::uint64_t t = 0;
    double log_lhs = 0.0;   // log P(S|T) + log P(S&T)
    double log_rhs = 0.0;   // log P(S) + log P(T)
};

struct NlcResult {
    bool pass = true;
    std::optional<NlcWitness> witness;
    long long pairs_checked = 0;
};

// Negative lattice condition P(S|T) P(S&T) <= P(S) P(T) over all subset
// pairs, checked in log space with multiplicative slack 1e-12. Necessary for
// strongly Rayleigh.
NlcResult negative_lattice_check(const Distribution& dist, int max_edges = kDefaultEnumerationCap);

// The unique 2-star coefficient making the cubic K_3 model strongly Rayleigh
// for a given triangle coefficient: (9T/2) ln(3 exp(2 beta/(9T)) - 2) - 2 beta.
// Throws std::domain_error when 3 exp(2 beta/(9T)) - 2 <= 0.
double sr_cubic_beta2(double temperature, double beta_triangle);

struct SrVerdict {
    bool strongly_rayleigh = false;
    std::string reason;
};

// Closed-form oracle on K_3. Edge-triangle model: SR iff the triangle
// coefficient vanishes. Cubic model: SR iff beta <= 0 and beta_2 matches
// sr_cubic_beta2 within 1e-9 (float equality on a measure-zero condition is
// meaningless; the tolerance is part of the contract).
SrVerdict sr_verdict_cubic(const Graph& host, const MarkovParams& params,
                           std::optional<CubicModelKind> kind = std::nullopt);

enum class CheckStatus { Pass, Fail, NotApplicable };

std::string to_string(CheckStatus status);

// Necessary conditions for strongly Rayleigh Markov random graphs. Any Fail
// refutes the strongly Rayleigh property outright.
struct NecessaryReport {
    CheckStatus triangle_two_star = CheckStatus::NotApplicable;   // beta <= -beta_2
    CheckStatus three_star = CheckStatus::NotApplicable;          // beta_3 <= -(n/5) beta_2
    std::string triangle_two_star_note;
    std::string three_star_note;

    bool refuted() const {
        return triangle_two_star == CheckStatus::Fail || three_star == CheckStatus::Fail;
    }
};

NecessaryReport check_sr_necessary(const MarkovParams& params, const Graph& g);

} // namespace ergraph
