#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tes/graph.hpp"

namespace tes {

// Vertex weighting w: V -> {0..s} with s = (m-1)/3; induces edge weights
// w(uv) = w(u) + w(v) in {0..2s}.
struct VertexWeighting {
    int s = 0;
    std::vector<int> values; // indexed by vertex id
};

// Total weighting w: V union E -> {1..t}; the sum of an edge uv is
// w(uv) + w(u) + w(v). Edge values are indexed by canonical edge id.
struct TotalWeighting {
    int t = 0;
    std::vector<int> vertex_values;
    std::vector<int> edge_values;
};

struct GuardViolation {
    int i = 0;               // first failing threshold
    long long count = 0;     // edges of weight <= i (within the checked set)
    long long lower = 0;     // required lower bound at i
    long long upper = 0;     // required upper bound at i
};

struct GuardReport {
    bool ok = false;
    std::optional<GuardViolation> first_violation;
};

struct IrregularReport {
    bool ok = false;
    // Edge ids of the first colliding pair when not ok.
    std::optional<std::pair<int, int>> witness;
};

int edge_weight(const VertexWeighting& vw, int u, int v);

// All m edge sums pairwise distinct? O(m) counting over [3, 3t].
IrregularReport verify_total_irregular(const Graph& g, const TotalWeighting& tw);

// For all 0 <= i <= 2s:  i+1 <= |{e : w(e) <= i}| <= i+s+1.
GuardReport is_well_guarded(const Graph& g, const VertexWeighting& vw);

// For all 0 <= i <= 2s:  i+1 <= |{e in E' : w(e) <= i}| <= i+s+1-|E\E'|.
GuardReport is_guarding_set(const Graph& g, const VertexWeighting& vw,
                            const std::vector<int>& eprime_edge_ids);

// Strength-(s+1) total weighting from a well-guarded vertex weighting:
// vertex values shift up by one; edges sorted by (weight, edge id), the j-th
// edge (0-based) gets value j+1-w(e), so the sums are exactly {3,...,m+2}.
TotalWeighting vertex_to_total(const Graph& g, const VertexWeighting& vw);

// Reverse direction: from an irregular total weighting of strength exactly
// s+1, dropping every vertex value by one yields a well-guarded weighting.
VertexWeighting total_to_vertex(const Graph& g, const TotalWeighting& tw);

// JSON serialization: {"s"|"t": int, "vertex_weights": [...],
// "edge_weights": [[u, v, value], ...]} in canonical edge order.
std::string to_json(const Graph& g, const VertexWeighting& vw);
std::string to_json(const Graph& g, const TotalWeighting& tw);
VertexWeighting vertex_weighting_from_json(const Graph& g, const std::string& text);
TotalWeighting total_weighting_from_json(const Graph& g, const std::string& text);

} // namespace tes
