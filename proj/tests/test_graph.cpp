#include "doctest.h"

#include <random>

#include "ergraph/graph.hpp"
#include "support/test_util.hpp"

using namespace ergraph;

namespace {

// Independent triangle-hom oracle: count all maps (a,b,c) in V^3 whose
// consecutive pairs are edges of G_S.
long long brute_force_triangle_homs(const Graph& g, std::uint64_t mask) {
    auto adjacent = [&](int a, int b) {
        for (int e = 0; e < g.m(); ++e) {
            if (!((mask >> e) & 1u)) continue;
            auto [u, v] = g.edge(e);
            if ((u == a && v == b) || (u == b && v == a)) return true;
        }
        return false;
    };
    long long count = 0;
    for (int a = 0; a < g.n(); ++a)
        for (int b = 0; b < g.n(); ++b)
            for (int c = 0; c < g.n(); ++c)
                if (adjacent(a, b) && adjacent(b, c) && adjacent(c, a)) ++count;
    return count;
}

} // namespace

TEST_CASE("rational arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(2, 9) * Rational(3, 2) == Rational(1, 3));
    CHECK(Rational(-4, -6) == Rational(2, 3));
    CHECK(Rational(1, 2) < Rational(2, 3));
    CHECK(Rational(6, 27).to_double() == doctest::Approx(2.0 / 9.0));
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(Rational(INT64_MAX, 1) + Rational(INT64_MAX, 1), std::overflow_error);
}

TEST_CASE("spanning stats on K3 match the worked example") {
    Graph k3 = Graph::complete(3);

    SUBCASE("two edges give degree sequence (2,1,1), no triangle") {
        auto st = spanning_stats(k3, EdgeSubset::from_index(3, 0b011));
        std::vector<int> expect{2, 1, 1};
        std::sort(st.degrees.begin(), st.degrees.end(), std::greater<>());
        CHECK(st.degrees == expect);
        CHECK(st.triangles == 0);
        CHECK(st.edge_count == 2);
    }
    SUBCASE("empty subset") {
        auto st = spanning_stats(k3, EdgeSubset(3));
        CHECK(st.degrees == std::vector<int>{0, 0, 0});
        CHECK(st.triangles == 0);
    }
    SUBCASE("full K3 contains one triangle") {
        auto st = spanning_stats(k3, EdgeSubset::full(3));
        CHECK(st.degrees == std::vector<int>{2, 2, 2});
        CHECK(st.triangles == 1);
    }
}

TEST_CASE("k-star hom counts") {
    SubgraphStats one_edge{{1, 1, 0}, 0, 1};
    CHECK(hom_count_kstar(one_edge, 1) == 2);
    SubgraphStats two_star{{2, 1, 1}, 0, 2};
    CHECK(hom_count_kstar(two_star, 2) == 6);
    SubgraphStats empty{{0, 0, 0, 0}, 0, 0};
    CHECK(hom_count_kstar(empty, 1) == 0);
    CHECK(hom_count_kstar(empty, 7) == 0);
    CHECK_THROWS_AS(hom_count_kstar(one_edge, 0), std::invalid_argument);

    SubgraphStats big{{1000000, 1000000, 1000000}, 0, 0};
    CHECK_THROWS_AS(hom_count_kstar(big, 5), std::overflow_error);
}

TEST_CASE("triangle hom counts against brute force") {
    Graph k3 = Graph::complete(3);
    CHECK(hom_count_triangle(spanning_stats(k3, EdgeSubset::full(3))) == 6);
    CHECK(hom_count_triangle(spanning_stats(k3, EdgeSubset::from_index(3, 0b011))) == 0);
    CHECK(brute_force_triangle_homs(k3, 0b111) == 6);

    Graph k4 = Graph::complete(4);
    std::uint64_t full = (1u << k4.m()) - 1;
    CHECK(brute_force_triangle_homs(k4, full) == 24);
    CHECK(hom_count_triangle(spanning_stats(k4, full)) == 24);

    // Every subset of K4 agrees with the map-counting oracle.
    for (std::uint64_t mask = 0; mask <= full; ++mask)
        CHECK(hom_count_triangle(spanning_stats(k4, mask)) == brute_force_triangle_homs(k4, mask));
}

TEST_CASE("homomorphism densities are the worked-example rationals") {
    Graph k3 = Graph::complete(3);
    CHECK(hom_density(k3, EdgeSubset::from_index(3, 0b001), Motif::kstar(1)) == Rational(2, 9));
    CHECK(hom_density(k3, EdgeSubset::from_index(3, 0b011), Motif::kstar(2)) == Rational(6, 27));
    CHECK(hom_density(k3, EdgeSubset::full(3), Motif::triangle()) == Rational(6, 27));
}

TEST_CASE("edge toggle deltas from consecutive spanning stats") {
    Graph k3 = Graph::complete(3);

    auto oracle = [&](std::uint64_t base, int e, int order) {
        // Difference of hom densities between the states with e on and off.
        std::uint64_t off = base & ~(std::uint64_t(1) << e);
        std::uint64_t on = off | (std::uint64_t(1) << e);
        std::vector<Rational> out;
        for (int k = 1; k <= order; ++k)
            out.push_back(hom_density(k3, EdgeSubset::from_index(3, on), Motif::kstar(k)) -
                          hom_density(k3, EdgeSubset::from_index(3, off), Motif::kstar(k)));
        out.push_back(hom_density(k3, EdgeSubset::from_index(3, on), Motif::triangle()) -
                      hom_density(k3, EdgeSubset::from_index(3, off), Motif::triangle()));
        return out;
    };

    SUBCASE("empty state, add first edge") {
        auto delta = edge_toggle_delta(k3, EdgeSubset(3), 0, 2);
        CHECK(delta == std::vector<Rational>{Rational(2, 9), Rational(2, 27), Rational(0)});
        CHECK(delta == oracle(0b000, 0, 2));
    }
    SUBCASE("two edges present, add the closing edge") {
        auto delta = edge_toggle_delta(k3, EdgeSubset::from_index(3, 0b011), 2, 2);
        CHECK(delta == std::vector<Rational>{Rational(2, 9), Rational(6, 27), Rational(6, 27)});
        CHECK(delta == oracle(0b011, 2, 2));
    }
    SUBCASE("delta is computed on the state with the edge removed") {
        EdgeSubset with_edge = EdgeSubset::from_index(3, 0b101);
        EdgeSubset without = EdgeSubset::from_index(3, 0b100);
        CHECK(edge_toggle_delta(k3, with_edge, 0, 2) == edge_toggle_delta(k3, without, 0, 2));
    }
    CHECK_THROWS_AS(edge_toggle_delta(k3, EdgeSubset(3), 3, 2), std::out_of_range);
}

TEST_CASE("toggle deltas agree with scratch recomputation on all graphs with m <= 6") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 12; ++trial) {
        Graph g = ergtest::random_graph(rng, 4, 6);
        int order = std::max(1, std::min(3, g.max_degree()));
        std::uint64_t total = std::uint64_t(1) << g.m();
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            for (int e = 0; e < g.m(); ++e) {
                if ((mask >> e) & 1u) continue;
                auto delta = edge_toggle_delta(g, EdgeSubset::from_index(g.m(), mask), e, order);
                std::uint64_t next = mask | (std::uint64_t(1) << e);
                for (int k = 1; k <= order; ++k) {
                    Rational expect = hom_density(g, EdgeSubset::from_index(g.m(), next), Motif::kstar(k)) -
                                      hom_density(g, EdgeSubset::from_index(g.m(), mask), Motif::kstar(k));
                    CHECK(delta[static_cast<std::size_t>(k - 1)] == expect);
                }
                Rational tri = hom_density(g, EdgeSubset::from_index(g.m(), next), Motif::triangle()) -
                               hom_density(g, EdgeSubset::from_index(g.m(), mask), Motif::triangle());
                CHECK(delta.back() == tri);
            }
        }
    }
}

TEST_CASE("densities live in [0,1] and grow under edge addition") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = ergtest::random_graph(rng, 5, 8);
        std::uint64_t mask = rng() & ((std::uint64_t(1) << g.m()) - 1);
        int e = static_cast<int>(rng() % static_cast<std::uint64_t>(g.m()));
        std::uint64_t bigger = mask | (std::uint64_t(1) << e);
        for (Motif motif : {Motif::kstar(1), Motif::kstar(2), Motif::triangle()}) {
            Rational lo = hom_density(g, EdgeSubset::from_index(g.m(), mask), motif);
            Rational hi = hom_density(g, EdgeSubset::from_index(g.m(), bigger), motif);
            CHECK(Rational(0) <= lo);
            CHECK(lo <= Rational(1));
            CHECK(lo <= hi);
        }
    }
}

TEST_CASE("full complete graph has hom_count_kstar(.,1) = n(n-1)") {
    for (int n : {2, 3, 5, 8}) {
        Graph g = Graph::complete(n);
        auto st = spanning_stats(g, EdgeSubset::full(g.m()));
        CHECK(hom_count_kstar(st, 1) == static_cast<long long>(n) * (n - 1));
    }
}

TEST_CASE("graph construction guards") {
    Graph g(3);
    g.add_edge(0, 1);
    CHECK_THROWS_AS(g.add_edge(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 3), std::out_of_range);
    CHECK(g.has_edge(1, 0));
}
