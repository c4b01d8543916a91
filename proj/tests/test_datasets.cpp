#include "doctest.h"

#include "ergraph/datasets.hpp"

using namespace ergraph;

TEST_CASE("edge list parsing") {
    SUBCASE("two lines, three vertices") {
        EdgeListResult r = parse_edgelist("a b\nb c\n", "test");
        CHECK(r.graph.n() == 3);
        CHECK(r.graph.m() == 2);
        CHECK(r.graph.label(0) == "a");
        CHECK(r.duplicates_collapsed == 0);
    }
    SUBCASE("self-loop is a hard error with the line number") {
        CHECK_THROWS_WITH_AS(parse_edgelist("a a\n", "test"), doctest::Contains("test:1"), std::runtime_error);
    }
    SUBCASE("reversed duplicate collapses with a warning count") {
        EdgeListResult r = parse_edgelist("a b\nb a\n", "test");
        CHECK(r.graph.m() == 1);
        CHECK(r.duplicates_collapsed == 1);
    }
    SUBCASE("comments and blank lines are ignored") {
        EdgeListResult r = parse_edgelist("# header\n\na b # trailing\n", "test");
        CHECK(r.graph.n() == 2);
        CHECK(r.graph.m() == 1);
    }
    SUBCASE("CRLF line endings do not leak into labels") {
        EdgeListResult r = parse_edgelist("a b\r\nb c\r\n", "test");
        CHECK(r.graph.n() == 3);
        CHECK(r.graph.m() == 2);
        CHECK(r.graph.label(1) == "b");
    }
    SUBCASE("single token declares an isolated vertex") {
        EdgeListResult r = parse_edgelist("a b\nloner\n", "test");
        CHECK(r.graph.n() == 3);
        CHECK(r.graph.m() == 1);
        CHECK(r.graph.degree(2) == 0);
    }
    SUBCASE("three tokens are malformed") {
        CHECK_THROWS_WITH_AS(parse_edgelist("a b c\n", "test"), doctest::Contains("test:1"), std::runtime_error);
    }
}

TEST_CASE("bundled datasets have the published vertex counts") {
    CHECK(load_bundled("medici_business").n() == 16);
    CHECK(load_bundled("sampson").n() == 18);
    CHECK(load_bundled("lazega_work").n() == 36);
    CHECK(load_bundled("bank_wiring").n() == 14);

    for (const auto& entry : bundled_datasets())
        CHECK(load_bundled(entry.id).n() == entry.expected_n);

    CHECK_THROWS_WITH_AS(load_bundled("nope"), doctest::Contains("medici_business"), std::invalid_argument);
}

TEST_CASE("bundled networks carry the structure the necessary checks rely on") {
    for (const auto& entry : bundled_datasets()) {
        Graph g = load_bundled(entry.id);
        CHECK(g.contains_triangle());
        CHECK(g.contains_three_star());
    }
    // Medici business: 15 ties, Medici family (degree 5) is the hub.
    Graph medici = load_bundled("medici_business");
    CHECK(medici.m() == 15);
    int maxdeg = medici.max_degree();
    CHECK(maxdeg == 5);
}

TEST_CASE("export and reload round trip") {
    for (const auto& entry : bundled_datasets()) {
        Graph g = load_bundled(entry.id);
        EdgeListResult r = parse_edgelist(to_edgelist(g), entry.id + "-roundtrip");
        CHECK(r.graph.n() == g.n());
        CHECK(r.graph.m() == g.m());
        // Edge-index order survives: the k-th exported edge reloads as the
        // k-th edge with the same endpoint labels.
        for (int e = 0; e < g.m(); ++e) {
            auto [u1, v1] = g.edge(e);
            auto [u2, v2] = r.graph.edge(e);
            bool same = (g.label(u1) == r.graph.label(u2) && g.label(v1) == r.graph.label(v2)) ||
                        (g.label(u1) == r.graph.label(v2) && g.label(v1) == r.graph.label(u2));
            CHECK(same);
        }
    }
}

TEST_CASE("dot export") {
    Graph g(2);
    g.add_edge(0, 1);
    g.set_label(0, "a");
    g.set_label(1, "b");
    std::string dot = to_dot(g);
    CHECK(dot.find("graph G {") == 0);
    CHECK(dot.find("\"a\" -- \"b\";") != std::string::npos);
}

TEST_CASE("missing file error") {
    CHECK_THROWS_WITH_AS(load_edgelist("/nonexistent/file.edges"), doctest::Contains("cannot open"),
                         std::runtime_error);
}
