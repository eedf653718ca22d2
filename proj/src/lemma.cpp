#include "tes/lemma.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "tes/errors.hpp"

namespace tes {

namespace {

struct Derived {
    int s = 0;
    long long k = 0;      // edges inside C (excluded from E')
    long long e_a1 = 0;   // edges inside A1
    long long e_a2 = 0;   // edges inside A2
    long long e_12 = 0;   // edges between A1 and A2
    long long a1c = 0;    // edges between A1 and C
    long long a2c = 0;    // edges between A2 and C
    long long k_edges_a1_v = 0; // edges meeting A1
    long long edges_a2_v = 0;   // edges meeting A2
    long long d1 = 0;     // max per-C-vertex count of A1-edges
    long long d2 = 0;     // max per-C-vertex count of A2-edges
    std::vector<int> side;            // 1, 2 or 3 (C) per vertex
    std::vector<long long> a1deg, a2deg; // per C vertex (0 elsewhere)
    std::vector<int> eprime;          // edge ids of E'
};

Derived derive(const Graph& g, const LemmaInstance& inst) {
    Derived d;
    if (g.m() % 3 != 1)
        throw std::invalid_argument("instance requires m % 3 == 1, got m=" + std::to_string(g.m()));
    d.s = (g.m() - 1) / 3;
    d.side.assign(g.n(), 0);
    auto mark = [&](const std::vector<int>& part, int tag) {
        for (int v : part) {
            if (v < 0 || v >= g.n())
                throw std::invalid_argument("partition mentions vertex " + std::to_string(v) +
                                            " outside the graph");
            if (d.side[v] != 0)
                throw std::invalid_argument("vertex " + std::to_string(v) +
                                            " appears in two partition classes");
            d.side[v] = tag;
        }
    };
    mark(inst.a1, 1);
    mark(inst.a2, 2);
    mark(inst.c, 3);
    for (int v = 0; v < g.n(); ++v)
        if (d.side[v] == 0)
            throw std::invalid_argument("vertex " + std::to_string(v) + " is missing from the partition");

    d.a1deg.assign(g.n(), 0);
    d.a2deg.assign(g.n(), 0);
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edges()[e];
        int su = d.side[u], sv = d.side[v];
        if (su > sv) {
            std::swap(u, v);
            std::swap(su, sv);
        }
        if (su == 3) ++d.k;                     // inside C
        else if (su == 1 && sv == 1) ++d.e_a1;
        else if (su == 2 && sv == 2) ++d.e_a2;
        else if (su == 1 && sv == 2) ++d.e_12;
        else if (su == 1 && sv == 3) { ++d.a1c; ++d.a1deg[v]; }
        else { ++d.a2c; ++d.a2deg[v]; }        // su == 2, sv == 3
        if (su != 3) d.eprime.push_back(e);
    }
    for (int v : inst.c) {
        d.d1 = std::max(d.d1, d.a1deg[v]);
        d.d2 = std::max(d.d2, d.a2deg[v]);
    }
    d.k_edges_a1_v = d.e_a1 + d.e_12 + d.a1c;
    d.edges_a2_v = d.e_a2 + d.e_12 + d.a2c;
    if (d.a1c <= d.d1)
        throw std::invalid_argument(
            "degenerate instance: edges from the first class into C (" + std::to_string(d.a1c) +
            ") must exceed their per-vertex maximum (" + std::to_string(d.d1) + ")");
    return d;
}

ConditionReport report_from(const Derived& d, long long m) {
    ConditionReport rep;
    const long long s = d.s;
    const long long eprime = m - d.k;
    auto set_line = [&](int idx, long long lhs, long long rhs) {
        rep.lines[idx].ok = lhs <= rhs;
        rep.lines[idx].lhs = static_cast<double>(lhs);
        rep.lines[idx].rhs = static_cast<double>(rhs);
    };
    set_line(0, d.e_a1, eprime - 2 * s - d.d1);
    set_line(1, d.e_a2, eprime - 2 * s - d.d2);
    set_line(2, d.k_edges_a1_v, eprime - s + 1 - d.d2);
    set_line(3, d.edges_a2_v, eprime - s + 1 - d.d1);
    // (5) has a fractional term; decide by cross-multiplication.
    const long long denom = d.a1c - d.d1; // positive by the degeneracy gate
    rep.lines[4].ok = d.d2 * denom + s * d.d1 <= (s - d.k) * denom;
    rep.lines[4].lhs = static_cast<double>(d.d2) +
                       static_cast<double>(s) * static_cast<double>(d.d1) / static_cast<double>(denom);
    rep.lines[4].rhs = static_cast<double>(s - d.k);
    rep.all_ok = true;
    for (const auto& line : rep.lines) rep.all_ok = rep.all_ok && line.ok;
    return rep;
}

long long ceil_div(long long num, long long den) { return (num + den - 1) / den; }

GuardedConstruction run_greedy(const Graph& g, const LemmaInstance& inst, const Derived& d,
                               const std::vector<int>& bootstrap) {
    const long long s = d.s;
    const long long kk = d.k;
    const long long big_k = d.k_edges_a1_v; // |E(A1,V)|, fixed throughout

    // Reserve the final slot for a vertex with as few A2-edges as possible,
    // still bringing the A2-heavy thresholds up to their floor. Vertices
    // meant to be placed first are avoided unless nothing else qualifies.
    std::set<int> bootstrap_set(bootstrap.begin(), bootstrap.end());
    for (int v : bootstrap_set)
        if (v < 0 || v >= g.n() || d.side[v] != 3)
            throw std::invalid_argument("bootstrap vertex " + std::to_string(v) + " is not in C");
    int x_last = -1;
    for (int pass = 0; pass < 2 && x_last < 0; ++pass) {
        for (int v : inst.c) {
            if (pass == 0 && bootstrap_set.count(v)) continue;
            if (d.e_a2 + d.a2deg[v] < d.d2) continue;
            if (x_last < 0 || d.a2deg[v] < d.a2deg[x_last] ||
                (d.a2deg[v] == d.a2deg[x_last] && v < x_last))
                x_last = v;
        }
    }
    if (x_last < 0) throw std::logic_error("no admissible final vertex despite the degeneracy gate");
    bootstrap_set.erase(x_last);

    const long long dd = d.a1c - d.a1deg[x_last];
    if (dd <= 0) throw std::logic_error("prefix denominator vanished despite the degeneracy gate");

    // Slot inequality for the vertex entering when the prefix counts are
    // (a, b): a = A1-edges into placed C vertices, b = A2-edges likewise.
    auto entry_ok = [&](long long a, long long b) {
        long long w = ceil_div(s * a, dd);
        return s + w <= big_k + b && big_k + b <= 2 * s + 1 - kk + w - d.d2;
    };

    // Unplaced candidates (everything but x_last), grouped by their edge
    // profile into (A1, A2); all members of a group pass or fail together.
    std::map<std::pair<long long, long long>, std::set<int>> groups;
    for (int v : inst.c)
        if (v != x_last) groups[{d.a1deg[v], d.a2deg[v]}].insert(v);
    auto erase_candidate = [&](int v) {
        auto it = groups.find({d.a1deg[v], d.a2deg[v]});
        it->second.erase(v);
        if (it->second.empty()) groups.erase(it);
    };

    GuardedConstruction out;
    out.weighting.s = static_cast<int>(s);
    out.weighting.values.assign(g.n(), 0);
    for (int v : inst.a2) out.weighting.values[v] = static_cast<int>(s);
    out.eprime = d.eprime;

    long long a = 0, b = 0;
    const std::size_t c_size = inst.c.size();
    auto place = [&](int v) {
        out.weighting.values[v] = static_cast<int>(ceil_div(s * a, dd));
        out.order.push_back(v);
        a += d.a1deg[v];
        b += d.a2deg[v];
    };

    // Opening phase: designated vertices go first while the slot inequality
    // is still violated.
    for (int v : bootstrap) {
        if (entry_ok(a, b)) break;
        if (!bootstrap_set.count(v)) continue; // deduplicated or reserved
        if (out.order.size() >= c_size - 1) break;
        erase_candidate(v);
        bootstrap_set.erase(v);
        place(v);
    }
    if (!entry_ok(a, b) && out.order.size() < c_size - 1 && bootstrap.empty())
        throw construction_error("greedy_dead_end",
                                 "slot 1 inequality fails: no ordering can start");

    // Main phase: always pick the lowest-id candidate whose placement keeps
    // the next slot's inequality intact.
    while (out.order.size() < c_size - 1) {
        int best = std::numeric_limits<int>::max();
        for (const auto& [profile, members] : groups) {
            if (!entry_ok(a + profile.first, b + profile.second)) continue;
            best = std::min(best, *members.begin());
        }
        if (best == std::numeric_limits<int>::max()) {
            if (!bootstrap.empty()) break; // fall through to the final checker
            throw construction_error("greedy_dead_end",
                                     "no candidate fits slot " + std::to_string(out.order.size() + 2));
        }
        erase_candidate(best);
        bootstrap_set.erase(best);
        place(best);
    }
    // Anything left unplaced (bootstrap fall-through) precedes the reserved
    // final vertex in id order; the checker below has the last word.
    std::vector<int> leftovers;
    for (const auto& [profile, members] : groups) {
        (void)profile;
        leftovers.insert(leftovers.end(), members.begin(), members.end());
    }
    groups.clear();
    std::sort(leftovers.begin(), leftovers.end());
    for (int v : leftovers) place(v);
    place(x_last);
    if (a != d.a1c) throw std::logic_error("prefix count mismatch after placing all of C");

    GuardReport guard = is_guarding_set(g, out.weighting, out.eprime);
    if (!guard.ok) {
        const auto& viol = *guard.first_violation;
        throw construction_error("guard_check_failed",
                                 "constructed weighting misses the guard window at threshold " +
                                     std::to_string(viol.i) + ": count " + std::to_string(viol.count) +
                                     " outside [" + std::to_string(viol.lower) + "," +
                                     std::to_string(viol.upper) + "]");
    }
    return out;
}

} // namespace

ConditionReport check_conditions(const Graph& g, const LemmaInstance& inst) {
    Derived d = derive(g, inst);
    return report_from(d, g.m());
}

GuardedConstruction construct(const Graph& g, const LemmaInstance& inst) {
    Derived d = derive(g, inst);
    ConditionReport rep = report_from(d, g.m());
    if (!rep.all_ok) {
        std::string which;
        for (std::size_t i = 0; i < rep.lines.size(); ++i)
            if (!rep.lines[i].ok)
                which += (which.empty() ? "(" : ", (") + std::to_string(i + 1) + ")";
        throw construction_error("conditions_not_met", "condition " + which +
                                                           " fails; construction not attempted");
    }
    return run_greedy(g, inst, d, {});
}

GuardedConstruction construct_with_bootstrap(const Graph& g, const LemmaInstance& inst,
                                             const std::vector<int>& bootstrap_first) {
    Derived d = derive(g, inst);
    return run_greedy(g, inst, d, bootstrap_first);
}

std::string instance_to_json(const Graph& g, const LemmaInstance& inst) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
    nlohmann::json j{{"n", g.n()}, {"edges", edges}, {"a1", inst.a1}, {"a2", inst.a2}, {"c", inst.c}};
    return j.dump();
}

std::pair<Graph, LemmaInstance> instance_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    Graph g = Graph::from_edges(j.at("n").get<int>(), std::move(edges));
    LemmaInstance inst;
    inst.a1 = j.at("a1").get<std::vector<int>>();
    inst.a2 = j.at("a2").get<std::vector<int>>();
    inst.c = j.at("c").get<std::vector<int>>();
    return {std::move(g), std::move(inst)};
}

} // namespace tes
