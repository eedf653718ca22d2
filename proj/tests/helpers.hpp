#pragma once

// Shared helpers for the test binaries: polarized random weightings and a
// randomized generator of tripartition fixtures that satisfy the sufficient
// conditions (filtered through the real checker, never hand-trusted).

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tes/graph.hpp"
#include "tes/lemma.hpp"
#include "tes/rng.hpp"
#include "tes/weighting.hpp"

namespace testutil {

// Weights drawn with fat ends (0 and s each 1/3), interior uniform: the
// guard bounds bind at the extremes, so uniform draws would rarely exercise
// them.
inline tes::VertexWeighting draw_polarized(const tes::Graph& g, int s, tes::Rng& rng) {
    tes::VertexWeighting vw;
    vw.s = s;
    vw.values.resize(g.n());
    for (int v = 0; v < g.n(); ++v) {
        if (s == 0) {
            vw.values[v] = 0;
        } else if (s == 1) {
            vw.values[v] = static_cast<int>(rng.below(2));
        } else {
            std::uint64_t roll = rng.below(3);
            if (roll == 0) vw.values[v] = 0;
            else if (roll == 1) vw.values[v] = s;
            else vw.values[v] = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(s - 1)));
        }
    }
    return vw;
}

template <typename T>
inline void shuffle(std::vector<T>& items, tes::Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i)
        std::swap(items[i - 1], items[rng.below(i)]);
}

// Splits `total` units over `buckets` bins with at most `cap` per bin,
// uniformly over cap-respecting slot choices.
inline std::vector<int> distribute(int total, int buckets, int cap, tes::Rng& rng) {
    std::vector<int> slots;
    slots.reserve(static_cast<std::size_t>(buckets) * cap);
    for (int b = 0; b < buckets; ++b)
        for (int r = 0; r < cap; ++r) slots.push_back(b);
    shuffle(slots, rng);
    std::vector<int> counts(buckets, 0);
    for (int i = 0; i < total; ++i) ++counts[slots[i]];
    return counts;
}

// One fixture: a graph plus a tripartition passing all five conditions, with
// a unit of slack on condition (3) so the first greedy slot always opens.
inline std::pair<tes::Graph, tes::LemmaInstance> random_guarded_fixture(tes::Rng& rng) {
    for (int attempt = 0; attempt < 20000; ++attempt) {
        const int s = 8 + static_cast<int>(rng.below(33));
        const int k = static_cast<int>(rng.below(3));
        const int na1 = 1 + static_cast<int>(rng.below(3));
        const int na2 = 1 + static_cast<int>(rng.below(3));
        const int cap1 = std::min(na1, 1 + static_cast<int>(rng.below(3)));
        const int cap2 = std::min(na2, 1 + static_cast<int>(rng.below(3)));
        const int nc_lo = (9 * s + 9) / 10;
        const int nc_hi = (12 * s) / 10 + 1;
        const int nc = nc_lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(nc_hi - nc_lo + 1)));
        if (nc < 2 || (k > 0 && nc < 2)) continue;

        const int max_pairs_a1 = na1 * (na1 - 1) / 2;
        const int max_pairs_a2 = na2 * (na2 - 1) / 2;
        const int e_a1 = static_cast<int>(rng.below(std::min(max_pairs_a1, 2) + 1));
        const int e_a2 = static_cast<int>(rng.below(std::min(max_pairs_a2, 2) + 1));
        const int e12 = static_cast<int>(rng.below(std::min(na1 * na2, 2) + 1));

        const int budget = 3 * s + 1 - k - e_a1 - e_a2 - e12; // a1c + a2c
        // The A1-to-C edge count stays at least s above the per-vertex cap,
        // keeping the scaled prefix weights dense enough for the low
        // thresholds no matter which vertex ends up reserved for last.
        int lo = std::max({s + 1 + cap1, budget - nc * cap2, cap1 + 1});
        int hi = std::min({2 * s + 1 - k - cap2 - e_a1 - e12, nc * cap1, budget});
        if (lo > hi) continue;
        const int a1c = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
        const int a2c = budget - a1c;
        if (a2c < 0 || a2c > nc * cap2) continue;

        // Vertex ids: A1 first, then A2, then C.
        tes::LemmaInstance inst;
        for (int v = 0; v < na1; ++v) inst.a1.push_back(v);
        for (int v = 0; v < na2; ++v) inst.a2.push_back(na1 + v);
        for (int v = 0; v < nc; ++v) inst.c.push_back(na1 + na2 + v);
        const int n = na1 + na2 + nc;

        std::vector<std::pair<int, int>> edges;
        auto add_inside = [&](const std::vector<int>& part, int count) {
            std::vector<std::pair<int, int>> pairs;
            for (std::size_t i = 0; i < part.size(); ++i)
                for (std::size_t j = i + 1; j < part.size(); ++j)
                    pairs.emplace_back(part[i], part[j]);
            shuffle(pairs, rng);
            for (int i = 0; i < count; ++i) edges.push_back(pairs[i]);
        };
        add_inside(inst.a1, e_a1);
        add_inside(inst.a2, e_a2);
        {
            std::vector<std::pair<int, int>> cross;
            for (int u : inst.a1)
                for (int v : inst.a2) cross.emplace_back(u, v);
            shuffle(cross, rng);
            for (int i = 0; i < e12; ++i) edges.push_back(cross[i]);
        }
        add_inside(inst.c, k);

        auto attach = [&](const std::vector<int>& part, const std::vector<int>& counts) {
            for (std::size_t idx = 0; idx < counts.size(); ++idx) {
                std::vector<int> pool = part;
                shuffle(pool, rng);
                for (int i = 0; i < counts[idx]; ++i) edges.emplace_back(pool[i], inst.c[idx]);
            }
        };
        attach(inst.a1, distribute(a1c, nc, cap1, rng));
        attach(inst.a2, distribute(a2c, nc, cap2, rng));

        tes::Graph g = tes::Graph::from_edges(n, std::move(edges));
        if (g.m() != 3 * s + 1) continue; // a duplicated C pair collapsed
        tes::ConditionReport rep;
        try {
            rep = tes::check_conditions(g, inst);
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (!rep.all_ok) continue;
        if (rep.lines[2].lhs > rep.lines[2].rhs - 1) continue; // unit slack on (3)
        return {std::move(g), std::move(inst)};
    }
    throw std::runtime_error("fixture generator stalled");
}

// Applies a random vertex relabeling to a graph and instance.
inline std::pair<tes::Graph, tes::LemmaInstance>
relabel(const tes::Graph& g, const tes::LemmaInstance& inst, tes::Rng& rng) {
    std::vector<int> perm(g.n());
    std::iota(perm.begin(), perm.end(), 0);
    shuffle(perm, rng);
    std::vector<std::pair<int, int>> edges;
    edges.reserve(g.m());
    for (const auto& [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
    auto map_part = [&](const std::vector<int>& part) {
        std::vector<int> out;
        out.reserve(part.size());
        for (int v : part) out.push_back(perm[v]);
        std::sort(out.begin(), out.end());
        return out;
    };
    tes::LemmaInstance mapped;
    mapped.a1 = map_part(inst.a1);
    mapped.a2 = map_part(inst.a2);
    mapped.c = map_part(inst.c);
    return {tes::Graph::from_edges(g.n(), std::move(edges)), std::move(mapped)};
}

} // namespace testutil
