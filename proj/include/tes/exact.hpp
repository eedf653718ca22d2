#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tes/graph.hpp"
#include "tes/weighting.hpp"

namespace tes {

// max{ ceil((m+2)/3), ceil((max_degree+1)/2) }. Throws on an empty edge set.
int lower_bound(const Graph& g);

// lower_bound, except 5 when the edge-bearing part of the graph is the
// complete graph on five vertices (the unique known graph needing one more).
int conjectured_tes(const Graph& g);

enum class SearchStatus { found, none_exists, indeterminate };

struct SearchOutcome {
    SearchStatus status = SearchStatus::indeterminate;
    std::optional<TotalWeighting> weighting; // set iff status == found
    long long nodes = 0;                     // vertex assignments explored
};

// Backtracking search for an irregular total weighting with values in [1, t].
// Vertex values are enumerated by DFS (vertices in descending-degree order,
// values ascending); edge values for a fixed vertex assignment are decided
// exactly by deadline-ordered slot scheduling, since each edge's admissible
// sums form an interval. "none_exists" is only reported after exhausting the
// space; running out of budget yields "indeterminate".
SearchOutcome find_weighting(const Graph& g, int t, long long budget = 100'000'000);

enum class ProofOfLower { formula_bound, exhausted_search };

struct TesResult {
    int tes = 0;
    TotalWeighting certificate;
    ProofOfLower proof_of_lower = ProofOfLower::formula_bound;
    long long nodes = 0; // search nodes summed over all strength levels tried
};

// Smallest strength admitting an irregular total weighting: tries
// lower_bound(g), lower_bound(g)+1, ... until the search succeeds. Throws
// construction_error("budget_exhausted", ...) if any level is cut short.
TesResult tes_exact(const Graph& g, long long budget_per_level = 100'000'000);

// Pure enumeration over all t^(n+m) assignments, no pruning; the independent
// cross-check for the solver. Throws when t^(n+m) exceeds cap.
bool brute_oracle(const Graph& g, int t, long long cap = 50'000'000);

struct CorpusReport {
    long long graphs = 0;      // labeled graphs visited (m >= 1)
    long long mismatches = 0;  // tes_exact != conjectured_tes
    long long above_formula = 0; // tes_exact > lower_bound (expected: the K5 instances)
    std::vector<std::string> mismatch_descriptions;
};

// Exhaustive sweep over every labeled graph with 2..max_vertices vertices and
// at least one edge, comparing the solver against the conjectured value.
CorpusReport run_corpus(int max_vertices, long long budget_per_level = 100'000'000);

} // namespace tes
