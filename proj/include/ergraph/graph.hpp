#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ergraph/rational.hpp"

namespace ergraph {

// Simple undirected labeled graph. Edge indices are assigned in insertion
// order and never reordered; polynomial variable identity depends on this.
class Graph {
  public:
    Graph() = default;
    explicit Graph(int n);

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }

    // Validates range, rejects self-loops and duplicates.
    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;

    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    std::pair<int, int> edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }

    void set_label(int v, std::string label);
    std::string label(int v) const;
    bool has_labels() const { return !labels_.empty(); }

    int degree(int v) const;
    int max_degree() const;
    bool contains_triangle() const;
    // Some vertex of degree >= 3.
    bool contains_three_star() const;

    static Graph complete(int n);

  private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::string> labels_;   // empty or size n_
    void check_vertex(int v) const;
};

// Subset of the edge set of a host graph, one bit per edge index.
class EdgeSubset {
  public:
    EdgeSubset() = default;
    explicit EdgeSubset(int nbits);

    static EdgeSubset from_index(int nbits, std::uint64_t index);
    static EdgeSubset full(int nbits);

    int size() const { return nbits_; }
    bool test(int i) const;
    void set(int i, bool value = true);
    int count() const;

    // Mask as an integer; only valid for size() <= 63.
    std::uint64_t to_index() const;

    bool operator==(const EdgeSubset& other) const = default;

  private:
    int nbits_ = 0;
    std::vector<std::uint64_t> words_;
    void check_bit(int i) const;
};

// Statistics of the spanning subgraph G_S = (V, S).
struct SubgraphStats {
    std::vector<int> degrees;     // per vertex of the host
    long long triangles = 0;      // number of 3-cycles in G_S
    int edge_count = 0;           // |S|

    int max_degree() const;
};

struct Motif {
    enum class Kind { KStar, Triangle };
    Kind kind = Kind::Triangle;
    int k = 0;   // star order, for Kind::KStar

    static Motif triangle() { return {Kind::Triangle, 0}; }
    static Motif kstar(int k) { return {Kind::KStar, k}; }
    // |V(H)|: k+1 for S_k, 3 for the triangle.
    int vertex_count() const { return kind == Kind::Triangle ? 3 : k + 1; }
};

SubgraphStats spanning_stats(const Graph& g, const EdgeSubset& s);
// Internal fast path for enumeration loops (m <= 63).
SubgraphStats spanning_stats(const Graph& g, std::uint64_t mask);

// |Hom(S_k, G_S)| = sum_v deg(v)^k. Overflow throws std::overflow_error.
long long hom_count_kstar(const SubgraphStats& stats, int k);
// |Hom(triangle, G_S)| = 6 * (number of triangles).
long long hom_count_triangle(const SubgraphStats& stats);

// t(H, G_S) = |Hom(H, G_S)| / n^{|V(H)|}, exact.
Rational hom_density(const Graph& g, const EdgeSubset& s, Motif motif);
Rational hom_density(const Graph& g, const SubgraphStats& stats, Motif motif);

// Change in (t(S_1)..t(S_K), t(triangle)) caused by adding edge e to s.
// Computed on s \ {e}: if e is already present the delta for removing it is
// the negation of the returned vector.
std::vector<Rational> edge_toggle_delta(const Graph& g, const EdgeSubset& s, int e, int max_star_order);

} // namespace ergraph
