#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tes/graph.hpp"
#include "tes/weighting.hpp"

namespace tes {

// Decomposition of a graph by degree: B holds every vertex of degree > eps*m,
// split greedily into two sides; V' is everything else. e0 and eS are the
// fractions (relative to m', the edges not inside B) of edges joining each
// side to V'. The raw fields record the split exactly as the greedy produced
// it; when es_raw > e0_raw the roles are exchanged for dispatch and the
// deterministic constructions, and `swapped` records that. The sampler-based
// route consumes the raw values.
struct LargeGraphContext {
    double eps = 0.0;
    long long m = 0;             // edges of the analyzed graph
    long long m_prime = 0;       // edges with at most one endpoint in B
    long long edges_inside_b = 0;
    std::vector<int> b0_raw;     // ascending vertex ids
    std::vector<int> bs_raw;
    std::vector<int> vprime;     // V \ B, ascending
    double e0_raw = 0.0;
    double es_raw = 0.0;
    bool swapped = false;

    const std::vector<int>& b0() const { return swapped ? bs_raw : b0_raw; }
    const std::vector<int>& bs() const { return swapped ? b0_raw : bs_raw; }
    double e0() const { return swapped ? es_raw : e0_raw; }
    double es() const { return swapped ? e0_raw : es_raw; }
    std::vector<int> b_all() const;  // b0 ∪ bs, ascending

    // True when B is small enough (|E(B)| < 0.01 m) that the split carries
    // the guarantees the constructions rely on. Tiny graphs fail this.
    bool regime_ok() const;
};

enum class CaseId { case1, case2, case3, case4 };
const char* case_name(CaseId c);

LargeGraphContext split_large_degree(const Graph& g, double eps);
CaseId dispatch_case(const LargeGraphContext& ctx);

// --- Case 1: a single dominant high-degree vertex -------------------------

// Collapses vertices outside {v1} ∪ N(v1) into N(v1) and selects/trims the
// low-edge core X used to anchor the guarding set.
struct Case1Context {
    int v1 = -1;                      // id in the reduced graph
    Graph reduced;                    // V = {v1} ∪ N(v1)
    std::vector<int> to_reduced;      // original id -> reduced id
    std::vector<int> xprime;          // selected low-edge set, reduced ids
    std::vector<int> x;               // trimmed/maximized core
    std::vector<int> y;               // N(v1) \ X
    std::vector<int> y1, y2, y3;      // explicit-weighting split of Y
    long long a = 0, b = 0;           // |E(Y3)| and |E(Y3, X∪Y)| - a
    int c = 0;                        // level offset: s-c = min{s-b, ceil(Δ/2)}
    std::string route;                // "lemma", "lemma_bootstrap", "explicit"
};

// Local search: subset of `universe` of size k minimizing induced edge count
// via steepest-descent single-vertex swaps (seeded start, iteration cap).
std::vector<int> min_induced_subset(const Graph& g, const std::vector<int>& universe,
                                    int k, std::uint64_t seed, int iter_cap_per_n = 50);

VertexWeighting construct_case1(const Graph& g, const LargeGraphContext& ctx,
                                std::uint64_t seed = 1, Case1Context* out = nullptr);

// --- Case 2: one dominant vertex plus a two-vertex heavy side -------------

struct Case2Context {
    int v1 = -1, v2 = -1, v3 = -1;
    long long d1 = 0, d2 = 0, d3 = 0;  // edges into V(H), H = G - {v1,v2,v3}
    std::vector<int> xprime;           // window-constrained low-edge set
    std::vector<int> x;                // trimmed anchor core
    long long window_lo = 0, window_hi = 0;
    bool window_divergence = false;    // the two candidate lower ends differ
    std::string route;                 // "lemma" or "explicit"
};

// Windowed variant: subset of `universe` whose edge count into `anchors`
// stays in [t_lo, t_hi) while the induced edge count is locally minimized.
std::vector<int> min_induced_subset_windowed(const Graph& g, const std::vector<int>& universe,
                                             const std::vector<int>& anchors,
                                             long long t_lo, long long t_hi,
                                             std::uint64_t seed, int iter_cap_per_n = 50);

VertexWeighting construct_case2(const Graph& g, const LargeGraphContext& ctx,
                                std::uint64_t seed = 1, Case2Context* out = nullptr);

// --- Case 3: three or more heavy vertices per side -------------------------

VertexWeighting construct_case3(const Graph& g, const LargeGraphContext& ctx);

// --- End-to-end construction ------------------------------------------------

struct ConstructOptions {
    bool force_exact = false;        // always use the exhaustive solver
    int exact_max_edges = 16;        // small-graph fallback thresholds
    int exact_max_vertices = 10;
    bool small_degree_mode = false;  // larger threshold, valid when max degree <= m/4350
    std::optional<double> eps_override;  // testing hook; not exposed on the CLI
    std::uint64_t seed = 1;
    int max_resamples = 500;
    long long exact_budget = 100000000;
};

struct AutoResult {
    TotalWeighting weighting;  // on the input graph
    int strength = 0;          // = weighting.t
    std::string route;         // "exact", "case1".."case4", "case4_fallback"
    int attempts = 0;          // sampler attempts when a sampling route ran
    std::string diagnostics;   // JSON: route, case values, claim outcomes
};

AutoResult construct_auto(const Graph& g, const ConstructOptions& opts = {});

} // namespace tes
