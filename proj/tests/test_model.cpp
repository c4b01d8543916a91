#include "doctest.h"

#include <cmath>
#include <random>

#include "ergraph/model.hpp"
#include "support/test_util.hpp"

using namespace ergraph;

namespace {

MarkovParams cubic_params(double t, double b1, double b2, double btri) {
    MarkovParams p;
    p.temperature = t;
    p.beta_stars = {b1, b2};
    p.beta_triangle = btri;
    return p;
}

} // namespace

TEST_CASE("energy exponent reproduces the K3 closed forms") {
    Graph k3 = Graph::complete(3);
    MarkovParams p = cubic_params(1.7, 0.8, -0.4, 0.9);

    CHECK(energy_exponent(k3, EdgeSubset(3), p) == 0.0);

    double two_edges = energy_exponent(k3, EdgeSubset::from_index(3, 0b101), p);
    CHECK(two_edges == doctest::Approx((4.0 / 9.0 * 0.8 + 6.0 / 27.0 * -0.4) / 1.7).epsilon(1e-14));

    double full = energy_exponent(k3, EdgeSubset::full(3), p);
    CHECK(full == doctest::Approx((6.0 / 9.0 * 0.8 + 12.0 / 27.0 * -0.4 + 6.0 / 27.0 * 0.9) / 1.7).epsilon(1e-14));
}

TEST_CASE("star sum truncates at the subgraph max degree by default") {
    Graph k3 = Graph::complete(3);
    MarkovParams p = cubic_params(1.0, 0.0, 5.0, 0.0);

    // A single edge has max degree 1, so the 2-star term is excluded even
    // though sum deg^2 = 2 > 0 there.
    CHECK(energy_exponent(k3, EdgeSubset::from_index(3, 0b001), p) == 0.0);

    MarkovParams full_order = p;
    full_order.truncation = StarTruncation::FullOrder;
    CHECK(energy_exponent(k3, EdgeSubset::from_index(3, 0b001), full_order) ==
          doctest::Approx(5.0 * 2.0 / 27.0));
}

TEST_CASE("markov distribution on K3") {
    Graph k3 = Graph::complete(3);

    SUBCASE("all parameters zero gives the uniform distribution") {
        Distribution d = markov_distribution(k3, cubic_params(1, 0, 0, 0));
        for (std::uint64_t mask = 0; mask < 8; ++mask)
            CHECK(d.prob(mask) == doctest::Approx(0.125).epsilon(1e-14));
    }
    SUBCASE("single edge over empty ratio is exp(2 beta1 / 9)") {
        Distribution d = markov_distribution(k3, cubic_params(1, 1, 0, 0));
        CHECK(d.prob(0b001) / d.prob(0) == doctest::Approx(std::exp(2.0 / 9.0)).epsilon(1e-13));
    }
    SUBCASE("probabilities sum to one") {
        Distribution d = markov_distribution(k3, cubic_params(0.7, 1.3, -2.1, 0.4));
        double total = 0;
        for (std::uint64_t mask = 0; mask < 8; ++mask) total += d.prob(mask);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("single-edge host: enumeration oracle fixes the two probabilities") {
    Graph g(2);
    g.add_edge(0, 1);
    MarkovParams p;
    p.temperature = 1.0;
    p.beta_stars = {4.5};
    Distribution d = markov_distribution(g, p);

    // Oracle: both subsets through energy_exponent. t(S_1) of the edge on
    // n=2 is (1+1)/4 = 1/2, so the exponent is 4.5 * 1/2 = 9/4.
    double e_on = energy_exponent(g, EdgeSubset::full(1), p);
    CHECK(e_on == doctest::Approx(2.25).epsilon(1e-15));
    double expect = std::exp(2.25) / (1.0 + std::exp(2.25));
    CHECK(d.prob(1) == doctest::Approx(expect).epsilon(1e-13));
    CHECK(d.prob(1) == doctest::Approx(0.9046505351008906).epsilon(1e-12));
}

TEST_CASE("energy exponent works on hosts far beyond the enumeration cap") {
    // complete(13) has 78 edge slots; per-subset energies stay well-defined
    // even though the full distribution is not enumerable.
    Graph host = Graph::complete(13);
    MarkovParams p;
    p.beta_stars = {1.0, 0.5};
    p.beta_triangle = -0.25;
    EdgeSubset state(host.m());
    state.set(0);
    state.set(1);
    double e = energy_exponent(host, state, p);
    SubgraphStats st = spanning_stats(host, state);
    double expect = (1.0 * hom_density(host, st, Motif::kstar(1)).to_double() +
                     0.5 * hom_density(host, st, Motif::kstar(2)).to_double() -
                     0.25 * hom_density(host, st, Motif::triangle()).to_double());
    CHECK(e == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("enumeration cap is enforced with a named cap") {
    Graph g = Graph::complete(4);
    MarkovParams p = cubic_params(1, 0, 0, 0);
    CHECK_THROWS_WITH_AS(markov_distribution(g, p, 5),
                         doctest::Contains("exceeds the cap of 5"), EnumerationCapError);
}

TEST_CASE("bernoulli distribution") {
    Graph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);

    SUBCASE("fair coins give uniform") {
        Distribution d = bernoulli_distribution(g, {{0.5, 0.5}});
        for (std::uint64_t mask = 0; mask < 4; ++mask)
            CHECK(d.prob(mask) == doctest::Approx(0.25).epsilon(1e-14));
        CHECK(d.product_form);
        CHECK(d.positive);
    }
    SUBCASE("single edge marginal") {
        Graph e(2);
        e.add_edge(0, 1);
        Distribution d = bernoulli_distribution(e, {{0.3}});
        CHECK(d.prob(0) == doctest::Approx(0.7).epsilon(1e-14));
        CHECK(d.prob(1) == doctest::Approx(0.3).epsilon(1e-14));
        CHECK(d.log_z == 0.0);
    }
    SUBCASE("marginals equal p_e (sum over subsets containing e)") {
        std::mt19937_64 rng(3);
        BernoulliParams bp{{0.12, 0.77}};
        Distribution d = bernoulli_distribution(g, bp);
        for (int e = 0; e < 2; ++e) {
            double marginal = 0;
            for (std::uint64_t mask = 0; mask < 4; ++mask)
                if ((mask >> e) & 1u) marginal += d.prob(mask);
            CHECK(marginal == doctest::Approx(bp.p[static_cast<std::size_t>(e)]).epsilon(1e-13));
        }
    }
    SUBCASE("degenerate entries flag the distribution non-positive") {
        Distribution d = bernoulli_distribution(g, {{0.0, 0.5}});
        CHECK_FALSE(d.positive);
        CHECK(d.weight(0b01) == 0.0);
    }
}

TEST_CASE("markov weights are invariant under graph automorphism") {
    // Relabeling vertices of K3/K4 permutes edge slots; weights transport.
    for (int n : {3, 4}) {
        Graph g = Graph::complete(n);
        std::mt19937_64 rng(41 + static_cast<std::uint64_t>(n));
        MarkovParams p = ergtest::random_markov_params(rng, g);
        Distribution d = markov_distribution(g, p);

        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) perm[static_cast<std::size_t>(v)] = (v + 1) % n;
        // Edge slot map induced by the vertex rotation.
        std::vector<int> edge_map(static_cast<std::size_t>(g.m()));
        for (int e = 0; e < g.m(); ++e) {
            auto [u, v] = g.edge(e);
            int pu = perm[static_cast<std::size_t>(u)], pv = perm[static_cast<std::size_t>(v)];
            if (pu > pv) std::swap(pu, pv);
            for (int f = 0; f < g.m(); ++f)
                if (g.edge(f) == std::make_pair(pu, pv)) edge_map[static_cast<std::size_t>(e)] = f;
        }
        for (std::uint64_t mask = 0; mask < d.subset_count(); ++mask) {
            std::uint64_t image = 0;
            for (int e = 0; e < g.m(); ++e)
                if ((mask >> e) & 1u) image |= std::uint64_t(1) << edge_map[static_cast<std::size_t>(e)];
            CHECK(d.log_weight(mask) == doctest::Approx(d.log_weight(image)).epsilon(1e-12));
        }
    }
}

TEST_CASE("scaling weights shifts logZ and leaves probabilities alone") {
    Graph k3 = Graph::complete(3);
    Distribution d = markov_distribution(k3, cubic_params(1, 0.6, -0.3, 0.2));
    Distribution scaled = d;
    const double ln_c = 2.34;
    for (double& lw : scaled.log_weights) lw += ln_c;
    double shifted = 0;
    for (std::uint64_t mask = 0; mask < scaled.subset_count(); ++mask)
        shifted += std::exp(scaled.log_weights[mask] - (d.log_z + ln_c));
    CHECK(shifted == doctest::Approx(1.0).epsilon(1e-12));
    for (std::uint64_t mask = 0; mask < scaled.subset_count(); ++mask)
        CHECK(std::exp(scaled.log_weights[mask] - (d.log_z + ln_c)) ==
              doctest::Approx(d.prob(mask)).epsilon(1e-12));
}

TEST_CASE("changing beta_1 rescales each weight by a function of t(S_1) only") {
    Graph k3 = Graph::complete(3);
    MarkovParams base = cubic_params(1, 0.5, -0.7, 0.9);
    MarkovParams moved = base;
    moved.beta_stars[0] += 1.25;
    Distribution d0 = markov_distribution(k3, base);
    Distribution d1 = markov_distribution(k3, moved);
    for (std::uint64_t mask = 0; mask < 8; ++mask) {
        double t1 = hom_density(k3, EdgeSubset::from_index(3, mask), Motif::kstar(1)).to_double();
        CHECK(d1.log_weight(mask) - d0.log_weight(mask) == doctest::Approx(1.25 * t1).epsilon(1e-12));
    }
}

TEST_CASE("logZ is consistent with the weight sum") {
    Graph k3 = Graph::complete(3);
    Distribution d = markov_distribution(k3, cubic_params(1, 1.1, 0.3, -0.8));
    double total = 0;
    for (std::uint64_t mask = 0; mask < d.subset_count(); ++mask) total += d.weight(mask);
    CHECK(std::exp(d.log_z) == doctest::Approx(total).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
    Graph k3 = Graph::complete(3);
    MarkovParams p = cubic_params(0.0, 1, 0, 0);
    CHECK_THROWS_AS(p.validate(k3), std::invalid_argument);
    p = cubic_params(1, 1, 0, 0);
    p.beta_stars = {};
    CHECK_THROWS_AS(p.validate(k3), std::invalid_argument);
    p.beta_stars = {0, 0, 0};   // K=3 > max degree 2
    CHECK_THROWS_AS(p.validate(k3), std::invalid_argument);
}
