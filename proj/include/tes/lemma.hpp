#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "tes/graph.hpp"
#include "tes/weighting.hpp"

namespace tes {

// Tripartition A1 / A2 / C of the vertex set. The candidate guarding set is
// E' = E minus the edges inside C.
struct LemmaInstance {
    std::vector<int> a1, a2, c;
};

struct ConditionLine {
    bool ok = false;
    double lhs = 0.0;
    double rhs = 0.0; // condition reads lhs <= rhs
};

struct ConditionReport {
    std::array<ConditionLine, 5> lines; // conditions (1)..(5)
    bool all_ok = false;
};

// Evaluates the five sufficient conditions exactly as stated (the fractional
// fifth condition is decided by integer cross-multiplication and only
// displayed as doubles). Throws std::invalid_argument when the partition is
// malformed, m % 3 != 1, or the instance is degenerate, i.e. the edges from
// A1 to C do not outnumber their per-vertex maximum.
ConditionReport check_conditions(const Graph& g, const LemmaInstance& inst);

struct GuardedConstruction {
    VertexWeighting weighting;
    std::vector<int> eprime; // edge ids of E', sorted
    std::vector<int> order;  // the vertices of C in placement order
};

// Two-phase construction: A1 gets 0, A2 gets s, and C is ordered greedily so
// that each vertex's weight (a scaled prefix count of A1-edges) keeps the
// running totals inside the window that makes E' a guarding set. The last
// slot is reserved up front for a vertex with few A2-edges. Requires
// check_conditions to pass (construction_error "conditions_not_met"
// otherwise); a greedy dead end raises construction_error "greedy_dead_end".
// The result is re-checked with is_guarding_set before returning.
GuardedConstruction construct(const Graph& g, const LemmaInstance& inst);

// Variant for instances that miss condition (3) but compensate with vertices
// of C free of A2-edges: the listed vertices are placed first, in the given
// order, until the slot inequality starts to hold, after which the normal
// greedy takes over. The final guarding-set check is the authority
// (construction_error "guard_check_failed" when it rejects).
GuardedConstruction construct_with_bootstrap(const Graph& g, const LemmaInstance& inst,
                                             const std::vector<int>& bootstrap_first);

// Fixture serialization: {"n", "edges": [[u,v],...], "a1", "a2", "c"}.
std::string instance_to_json(const Graph& g, const LemmaInstance& inst);
std::pair<Graph, LemmaInstance> instance_from_json(const std::string& text);

} // namespace tes
