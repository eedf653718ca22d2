#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tes {

// Simple undirected graph. Vertex ids are dense integers 0..n-1. Edges are
// stored canonically: each pair (u,v) with u < v, list sorted
// lexicographically; the position of an edge in that list is its edge id.
class Graph {
public:
    Graph() = default;

    // Validates (no loops, no duplicates, ids in range), canonicalizes, and
    // builds adjacency. Throws std::invalid_argument on violations.
    static Graph from_edges(int n, std::vector<std::pair<int, int>> edges);

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool has_edge(int u, int v) const;
    // Edge id of {u,v}, or -1 when absent.
    int edge_index(int u, int v) const;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
};

struct DegreeStats {
    int max_degree = 0;
    std::vector<int> degree_sequence;
};

// Text format: one "u v" per line, '#' starts a comment, blank lines ignored.
// The graph has n = 1 + max vertex id. Errors name the offending line.
Graph parse_edge_list(const std::string& text);
std::string to_edge_list(const Graph& g);

enum class GraphKind { complete, star, path, random_gnm, random_capped_degree };

struct GenParams {
    int n = 0;       // complete/path/random_*: vertex count; star: leaf count
    int m = 0;       // random_*: edge count
    int cap = 0;     // random_capped_degree: max degree
};

Graph generate(GraphKind kind, const GenParams& params, std::uint64_t seed);

Graph make_complete(int n);
Graph make_star(int leaves);
Graph make_path(int n);
Graph make_random_gnm(int n, int m, std::uint64_t seed);
// Exactly m edges, max degree <= cap. Rejection sampling of endpoints; not
// uniform over all such graphs, but deterministic for a fixed seed.
Graph make_random_capped(int n, int m, int cap, std::uint64_t seed);

DegreeStats degree_stats(const Graph& g);

struct PadResult {
    Graph graph;
    int added = 0; // number of new edges
};

// Adds 0..2 fresh disjoint edges (each on two new vertices) so that
// m' = m + added satisfies m' % 3 == 1. Original edges keep their ids.
PadResult pad_to_residue(const Graph& g);

// Merges v into u: neighbors of v are rewired to u, v disappears, ids above v
// shift down by one. Requires u,v distinct, non-adjacent and without common
// neighbors, so edge count is preserved and the result stays simple.
Graph identify_vertices(const Graph& g, int u, int v);

} // namespace tes
