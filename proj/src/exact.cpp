#include "tes/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

#include "tes/errors.hpp"

namespace tes {

int lower_bound(const Graph& g) {
    if (g.m() == 0) throw std::invalid_argument("lower bound needs at least one edge");
    int delta = degree_stats(g).max_degree;
    int by_edges = (g.m() + 2 + 2) / 3;   // ceil((m+2)/3)
    int by_degree = (delta + 1 + 1) / 2;  // ceil((delta+1)/2)
    return std::max(by_edges, by_degree);
}

namespace {

// The one known graph whose strength exceeds the formula: the complete graph
// on five vertices (isolated vertices do not change any edge sum).
bool edge_support_is_k5(const Graph& g) {
    if (g.m() != 10) return false;
    int deg4 = 0;
    for (int v = 0; v < g.n(); ++v) {
        int d = g.degree(v);
        if (d == 4) ++deg4;
        else if (d != 0) return false;
    }
    return deg4 == 5;
}

} // namespace

int conjectured_tes(const Graph& g) {
    int lb = lower_bound(g);
    return edge_support_is_k5(g) ? lb + 1 : lb;
}

namespace {

// Assign each interval [release, deadline] a distinct integer slot. Sorting
// by (deadline, release) and giving each interval the smallest free slot at
// or after its release is exact for feasibility here because all constraints
// are plain intervals. Writes the slot per key into out when requested; the
// slot pool is restored before returning.
bool schedule_intervals(std::vector<std::tuple<int, int, int>>& by_deadline, // (deadline, release, key)
                        std::set<int>& free_slots, std::vector<int>* out) {
    std::sort(by_deadline.begin(), by_deadline.end());
    std::vector<int> taken;
    taken.reserve(by_deadline.size());
    bool ok = true;
    for (const auto& [deadline, release, key] : by_deadline) {
        auto it = free_slots.lower_bound(release);
        if (it == free_slots.end() || *it > deadline) {
            ok = false;
            break;
        }
        if (out) (*out)[key] = *it;
        taken.push_back(*it);
        free_slots.erase(it);
    }
    for (int slot : taken) free_slots.insert(slot);
    return ok;
}

struct Searcher {
    const Graph& g;
    int t;
    long long budget;
    long long nodes = 0;
    bool out_of_budget = false;
    std::vector<int> order;       // vertices, most constrained first
    std::vector<int> vertex_val;  // 0 = unassigned, else value in [1, t]
    std::set<int> slot_pool;      // reusable scratch: all sums in [3, 3t]
    std::optional<TotalWeighting> result;

    Searcher(const Graph& graph, int strength, long long node_budget)
        : g(graph), t(strength), budget(node_budget), vertex_val(graph.n(), 0) {
        order.resize(g.n());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
            return a < b;
        });
        for (int s = 3; s <= 3 * t; ++s) slot_pool.insert(s);
    }

    // Exact feasibility of the edges whose endpoints are both assigned; with
    // fill set, also writes each such edge's chosen sum into sums.
    bool fixed_edges_schedulable(std::vector<int>* sums) {
        std::vector<std::tuple<int, int, int>> jobs;
        for (int e = 0; e < g.m(); ++e) {
            auto [u, v] = g.edges()[e];
            if (vertex_val[u] == 0 || vertex_val[v] == 0) continue;
            int base = vertex_val[u] + vertex_val[v];
            jobs.emplace_back(base + t, base + 1, e);
        }
        if (sums) sums->assign(g.m(), 0);
        return schedule_intervals(jobs, slot_pool, sums);
    }

    bool dfs(std::size_t idx) {
        if (idx == order.size()) {
            std::vector<int> sums;
            if (!fixed_edges_schedulable(&sums)) return false;
            TotalWeighting tw;
            tw.t = t;
            tw.vertex_values = vertex_val;
            tw.edge_values.resize(g.m());
            for (int e = 0; e < g.m(); ++e) {
                auto [u, v] = g.edges()[e];
                tw.edge_values[e] = sums[e] - vertex_val[u] - vertex_val[v];
            }
            result = std::move(tw);
            return true;
        }
        int v = order[idx];
        for (int val = 1; val <= t; ++val) {
            if (++nodes > budget) {
                out_of_budget = true;
                return false;
            }
            vertex_val[v] = val;
            if (fixed_edges_schedulable(nullptr) && dfs(idx + 1)) return true;
            if (out_of_budget) {
                vertex_val[v] = 0;
                return false;
            }
        }
        vertex_val[v] = 0;
        return false;
    }
};

} // namespace

SearchOutcome find_weighting(const Graph& g, int t, long long budget) {
    if (t < 1) throw std::invalid_argument("strength must be at least 1");
    SearchOutcome out;
    if (g.m() > 3 * t - 2) { // only 3t-2 distinct sums exist in [3, 3t]
        out.status = SearchStatus::none_exists;
        return out;
    }
    Searcher searcher(g, t, budget);
    bool found = searcher.dfs(0);
    out.nodes = searcher.nodes;
    if (found) {
        out.status = SearchStatus::found;
        out.weighting = std::move(searcher.result);
    } else {
        out.status = searcher.out_of_budget ? SearchStatus::indeterminate : SearchStatus::none_exists;
    }
    return out;
}

TesResult tes_exact(const Graph& g, long long budget_per_level) {
    int lb = lower_bound(g);
    long long total_nodes = 0;
    // Every graph admits some finite strength; the cap is only a guard rail.
    for (int t = lb; t <= 3 * g.m() + 3; ++t) {
        SearchOutcome out = find_weighting(g, t, budget_per_level);
        total_nodes += out.nodes;
        if (out.status == SearchStatus::indeterminate)
            throw construction_error("budget_exhausted",
                                     "search cut short at strength " + std::to_string(t) +
                                         " after " + std::to_string(out.nodes) +
                                         " nodes; no weighting of lower strength exists");
        if (out.status == SearchStatus::found) {
            TesResult res;
            res.tes = t;
            res.certificate = std::move(*out.weighting);
            res.proof_of_lower = (t == lb) ? ProofOfLower::formula_bound : ProofOfLower::exhausted_search;
            res.nodes = total_nodes;
            return res;
        }
    }
    throw std::logic_error("exact search exceeded the safety cap on strength");
}

bool brute_oracle(const Graph& g, int t, long long cap) {
    if (t < 1) throw std::invalid_argument("strength must be at least 1");
    int cells = g.n() + g.m();
    double total = std::pow(static_cast<double>(t), cells);
    if (total > static_cast<double>(cap))
        throw std::invalid_argument("enumeration of " + std::to_string(t) + "^" +
                                    std::to_string(cells) + " assignments exceeds the cap");
    // Odometer over {1..t}^(V u E): cells 0..n-1 are vertices, the rest edges.
    std::vector<int> val(cells, 1);
    while (true) {
        bool distinct = true;
        std::vector<char> seen(3 * t + 1, 0);
        for (int e = 0; e < g.m() && distinct; ++e) {
            auto [u, v] = g.edges()[e];
            int sum = val[g.n() + e] + val[u] + val[v];
            if (seen[sum]) distinct = false;
            seen[sum] = 1;
        }
        if (distinct) return true;
        int pos = 0;
        while (pos < cells && val[pos] == t) val[pos++] = 1;
        if (pos == cells) return false;
        ++val[pos];
    }
}

CorpusReport run_corpus(int max_vertices, long long budget_per_level) {
    if (max_vertices < 2) throw std::invalid_argument("corpus needs at least two vertices");
    CorpusReport report;
    for (int n = 2; n <= max_vertices; ++n) {
        std::vector<std::pair<int, int>> all_pairs;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) all_pairs.emplace_back(u, v);
        const int p = static_cast<int>(all_pairs.size());
        for (std::uint64_t mask = 1; mask < (1ULL << p); ++mask) {
            std::vector<std::pair<int, int>> edges;
            for (int b = 0; b < p; ++b)
                if (mask >> b & 1) edges.push_back(all_pairs[b]);
            Graph g = Graph::from_edges(n, edges);
            ++report.graphs;
            TesResult res = tes_exact(g, budget_per_level);
            if (!verify_total_irregular(g, res.certificate).ok ||
                res.certificate.t != res.tes || res.tes != conjectured_tes(g)) {
                ++report.mismatches;
                if (report.mismatch_descriptions.size() < 20)
                    report.mismatch_descriptions.push_back(
                        "n=" + std::to_string(n) + " mask=" + std::to_string(mask) +
                        " tes=" + std::to_string(res.tes) +
                        " conjectured=" + std::to_string(conjectured_tes(g)));
            }
            if (res.tes > lower_bound(g)) ++report.above_formula;
        }
    }
    return report;
}

} // namespace tes
