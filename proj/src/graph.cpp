#include "ergraph/graph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace ergraph {

Graph::Graph(int n) : n_(n) {
    if (n <= 0) throw std::invalid_argument("Graph: vertex count must be positive");
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= n_) throw std::out_of_range("Graph: vertex " + std::to_string(v) + " out of range");
}

void Graph::add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("Graph: self-loop at vertex " + std::to_string(u));
    if (has_edge(u, v)) throw std::invalid_argument("Graph: duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    if (u > v) std::swap(u, v);
    edges_.emplace_back(u, v);
}

bool Graph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::find(edges_.begin(), edges_.end(), std::make_pair(u, v)) != edges_.end();
}

void Graph::set_label(int v, std::string label) {
    check_vertex(v);
    if (labels_.empty()) labels_.resize(static_cast<std::size_t>(n_));
    labels_[static_cast<std::size_t>(v)] = std::move(label);
}

std::string Graph::label(int v) const {
    check_vertex(v);
    if (!labels_.empty() && !labels_[static_cast<std::size_t>(v)].empty())
        return labels_[static_cast<std::size_t>(v)];
    return std::to_string(v);
}

int Graph::degree(int v) const {
    check_vertex(v);
    int d = 0;
    for (const auto& [a, b] : edges_)
        if (a == v || b == v) ++d;
    return d;
}

int Graph::max_degree() const {
    std::vector<int> deg(static_cast<std::size_t>(n_), 0);
    for (const auto& [a, b] : edges_) { ++deg[static_cast<std::size_t>(a)]; ++deg[static_cast<std::size_t>(b)]; }
    return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

bool Graph::contains_triangle() const {
    SubgraphStats st = spanning_stats(*this, EdgeSubset::full(m()));
    return st.triangles > 0;
}

bool Graph::contains_three_star() const { return max_degree() >= 3; }

Graph Graph::complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            g.add_edge(u, v);
    return g;
}

EdgeSubset::EdgeSubset(int nbits) : nbits_(nbits) {
    if (nbits < 0) throw std::invalid_argument("EdgeSubset: negative size");
    words_.assign(static_cast<std::size_t>((nbits + 63) / 64), 0);
}

EdgeSubset EdgeSubset::from_index(int nbits, std::uint64_t index) {
    if (nbits > 63 && (index >> 63) != 0)
        throw std::invalid_argument("EdgeSubset: index does not cover masks this wide");
    EdgeSubset s(nbits);
    if (!s.words_.empty()) s.words_[0] = index;
    if (nbits < 64 && (index >> nbits) != 0)
        throw std::out_of_range("EdgeSubset: index has bits beyond edge count");
    return s;
}

EdgeSubset EdgeSubset::full(int nbits) {
    EdgeSubset s(nbits);
    for (int i = 0; i < nbits; ++i) s.set(i);
    return s;
}

void EdgeSubset::check_bit(int i) const {
    if (i < 0 || i >= nbits_) throw std::out_of_range("EdgeSubset: bit " + std::to_string(i) + " out of range");
}

bool EdgeSubset::test(int i) const {
    check_bit(i);
    return (words_[static_cast<std::size_t>(i / 64)] >> (i % 64)) & 1u;
}

void EdgeSubset::set(int i, bool value) {
    check_bit(i);
    std::uint64_t bit = std::uint64_t(1) << (i % 64);
    if (value) words_[static_cast<std::size_t>(i / 64)] |= bit;
    else words_[static_cast<std::size_t>(i / 64)] &= ~bit;
}

int EdgeSubset::count() const {
    int c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
}

std::uint64_t EdgeSubset::to_index() const {
    if (nbits_ > 63) throw std::overflow_error("EdgeSubset: too wide for an integer index");
    return words_.empty() ? 0 : words_[0];
}

int SubgraphStats::max_degree() const {
    int d = 0;
    for (int v : degrees) d = std::max(d, v);
    return d;
}

namespace {

// Adjacency rows of G_S as bitsets, words per row = ceil(n/64).
struct AdjacencyRows {
    int n;
    int words_per_row;
    std::vector<std::uint64_t> rows;

    explicit AdjacencyRows(int n_) : n(n_), words_per_row((n_ + 63) / 64), rows(static_cast<std::size_t>(n_) * words_per_row, 0) {}

    void add(int u, int v) {
        rows[static_cast<std::size_t>(u) * words_per_row + v / 64] |= std::uint64_t(1) << (v % 64);
        rows[static_cast<std::size_t>(v) * words_per_row + u / 64] |= std::uint64_t(1) << (u % 64);
    }

    int common_neighbors(int u, int v) const {
        int c = 0;
        const std::uint64_t* ru = rows.data() + static_cast<std::size_t>(u) * words_per_row;
        const std::uint64_t* rv = rows.data() + static_cast<std::size_t>(v) * words_per_row;
        for (int w = 0; w < words_per_row; ++w) c += std::popcount(ru[w] & rv[w]);
        return c;
    }
};

template <typename Contains>
SubgraphStats stats_from_membership(const Graph& g, Contains&& in_subset) {
    SubgraphStats st;
    st.degrees.assign(static_cast<std::size_t>(g.n()), 0);
    AdjacencyRows adj(g.n());
    for (int e = 0; e < g.m(); ++e) {
        if (!in_subset(e)) continue;
        auto [u, v] = g.edge(e);
        ++st.degrees[static_cast<std::size_t>(u)];
        ++st.degrees[static_cast<std::size_t>(v)];
        ++st.edge_count;
        adj.add(u, v);
    }
    long long tri_incidences = 0;
    for (int e = 0; e < g.m(); ++e) {
        if (!in_subset(e)) continue;
        auto [u, v] = g.edge(e);
        tri_incidences += adj.common_neighbors(u, v);
    }
    st.triangles = tri_incidences / 3;
    return st;
}

} // namespace

SubgraphStats spanning_stats(const Graph& g, const EdgeSubset& s) {
    if (s.size() != g.m()) throw std::invalid_argument("spanning_stats: subset width does not match edge count");
    return stats_from_membership(g, [&](int e) { return s.test(e); });
}

SubgraphStats spanning_stats(const Graph& g, std::uint64_t mask) {
    return stats_from_membership(g, [&](int e) { return (mask >> e) & 1u; });
}

long long hom_count_kstar(const SubgraphStats& stats, int k) {
    if (k < 1) throw std::invalid_argument("hom_count_kstar: star order must be >= 1");
    std::int64_t total = 0;
    for (int d : stats.degrees)
        total = detail::checked_add(total, detail::checked_pow(d, k));
    return total;
}

long long hom_count_triangle(const SubgraphStats& stats) {
    return detail::checked_mul(6, stats.triangles);
}

Rational hom_density(const Graph& g, const SubgraphStats& stats, Motif motif) {
    long long count = motif.kind == Motif::Kind::Triangle ? hom_count_triangle(stats)
                                                          : hom_count_kstar(stats, motif.k);
    return Rational(count, detail::checked_pow(g.n(), motif.vertex_count()));
}

Rational hom_density(const Graph& g, const EdgeSubset& s, Motif motif) {
    return hom_density(g, spanning_stats(g, s), motif);
}

std::vector<Rational> edge_toggle_delta(const Graph& g, const EdgeSubset& s, int e, int max_star_order) {
    if (e < 0 || e >= g.m()) throw std::out_of_range("edge_toggle_delta: edge index out of range");
    if (max_star_order < 1) throw std::invalid_argument("edge_toggle_delta: star order cap must be >= 1");
    EdgeSubset base = s;
    if (base.test(e)) base.set(e, false);
    SubgraphStats st = spanning_stats(g, base);
    auto [u, v] = g.edge(e);
    std::int64_t du = st.degrees[static_cast<std::size_t>(u)];
    std::int64_t dv = st.degrees[static_cast<std::size_t>(v)];

    std::vector<Rational> delta;
    delta.reserve(static_cast<std::size_t>(max_star_order) + 1);
    for (int k = 1; k <= max_star_order; ++k) {
        std::int64_t dn = detail::checked_add(
            detail::checked_pow(du + 1, k) - detail::checked_pow(du, k),
            detail::checked_pow(dv + 1, k) - detail::checked_pow(dv, k));
        delta.emplace_back(dn, detail::checked_pow(g.n(), k + 1));
    }

    // Each common neighbor of u,v in G_{S\{e}} closes one new triangle.
    long long common = 0;
    for (int f = 0; f < g.m(); ++f) {
        if (!base.test(f)) continue;
        auto [a, b] = g.edge(f);
        int w = -1;
        if (a == u) w = b; else if (b == u) w = a;
        if (w < 0 || w == v) continue;
        // w adjacent to u in base; adjacent to v too?
        for (int h = 0; h < g.m(); ++h) {
            if (!base.test(h)) continue;
            auto [c, d] = g.edge(h);
            if ((c == v && d == w) || (c == w && d == v)) { ++common; break; }
        }
    }
    delta.emplace_back(detail::checked_mul(6, common), detail::checked_pow(g.n(), 3));
    return delta;
}

} // namespace ergraph
