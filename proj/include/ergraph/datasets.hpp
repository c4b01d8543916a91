#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ergraph/graph.hpp"

namespace ergraph {

struct DatasetEntry {
    std::string id;
    std::string description;
    int expected_n = 0;
    std::string source;
};

const std::vector<DatasetEntry>& bundled_datasets();

struct EdgeListResult {
    Graph graph;
    long long duplicates_collapsed = 0;
};

// Edge-list format: '#' starts a comment, blank lines are skipped, "u v"
// adds an undirected edge (labels mapped in first-appearance order), a
// single token declares an isolated vertex. Self-loops and lines with three
// or more tokens are hard errors carrying the line number; duplicate edges
// collapse with a warning count.
EdgeListResult parse_edgelist(std::string_view text, const std::string& origin);
EdgeListResult load_edgelist(const std::string& path);

Graph load_bundled(const std::string& id);
std::string bundled_edgelist_text(const std::string& id);

std::string to_edgelist(const Graph& g);
std::string to_dot(const Graph& g);

} // namespace ergraph
