#include "tes/weighting.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace tes {

namespace {

void require_vertex_weighting(const Graph& g, const VertexWeighting& vw) {
    if (g.m() % 3 != 1)
        throw std::invalid_argument("vertex weighting requires m % 3 == 1, got m=" + std::to_string(g.m()));
    if (vw.s != (g.m() - 1) / 3)
        throw std::invalid_argument("vertex weighting has s=" + std::to_string(vw.s) + ", expected " +
                                    std::to_string((g.m() - 1) / 3));
    if (static_cast<int>(vw.values.size()) != g.n())
        throw std::invalid_argument("vertex weighting covers " + std::to_string(vw.values.size()) +
                                    " vertices, graph has " + std::to_string(g.n()));
    for (int v = 0; v < g.n(); ++v)
        if (vw.values[v] < 0 || vw.values[v] > vw.s)
            throw std::invalid_argument("vertex " + std::to_string(v) + " weight " +
                                        std::to_string(vw.values[v]) + " outside [0," + std::to_string(vw.s) + "]");
}

void require_total_weighting(const Graph& g, const TotalWeighting& tw) {
    if (tw.t < 1) throw std::invalid_argument("total weighting needs t >= 1");
    if (static_cast<int>(tw.vertex_values.size()) != g.n())
        throw std::invalid_argument("total weighting misses vertex values");
    if (static_cast<int>(tw.edge_values.size()) != g.m())
        throw std::invalid_argument("total weighting misses edge values");
    for (int x : tw.vertex_values)
        if (x < 1 || x > tw.t) throw std::invalid_argument("vertex value outside [1,t]");
    for (int x : tw.edge_values)
        if (x < 1 || x > tw.t) throw std::invalid_argument("edge value outside [1,t]");
}

// Shared core: prefix counts of edge weights against lower/upper bounds.
GuardReport check_guard(const Graph& g, const VertexWeighting& vw,
                        const std::vector<char>& in_set, long long excluded) {
    const int s = vw.s;
    std::vector<long long> bucket(2 * s + 1, 0);
    for (int e = 0; e < g.m(); ++e) {
        if (!in_set[e]) continue;
        const auto& [u, v] = g.edges()[e];
        ++bucket[vw.values[u] + vw.values[v]];
    }
    GuardReport rep;
    long long count = 0;
    for (int i = 0; i <= 2 * s; ++i) {
        count += bucket[i];
        long long lo = i + 1;
        long long hi = static_cast<long long>(i) + s + 1 - excluded;
        if (count < lo || count > hi) {
            rep.ok = false;
            rep.first_violation = GuardViolation{i, count, lo, hi};
            return rep;
        }
    }
    rep.ok = true;
    return rep;
}

} // namespace

int edge_weight(const VertexWeighting& vw, int u, int v) { return vw.values[u] + vw.values[v]; }

IrregularReport verify_total_irregular(const Graph& g, const TotalWeighting& tw) {
    require_total_weighting(g, tw);
    IrregularReport rep;
    // sums lie in [3, 3t]; remember the first edge seen per sum
    std::vector<int> owner(3 * static_cast<long long>(tw.t) + 1, -1);
    for (int e = 0; e < g.m(); ++e) {
        const auto& [u, v] = g.edges()[e];
        long long sum = static_cast<long long>(tw.edge_values[e]) + tw.vertex_values[u] + tw.vertex_values[v];
        if (owner[sum] >= 0) {
            rep.ok = false;
            rep.witness = std::make_pair(owner[sum], e);
            return rep;
        }
        owner[sum] = e;
    }
    rep.ok = true;
    return rep;
}

GuardReport is_well_guarded(const Graph& g, const VertexWeighting& vw) {
    require_vertex_weighting(g, vw);
    return check_guard(g, vw, std::vector<char>(g.m(), 1), 0);
}

GuardReport is_guarding_set(const Graph& g, const VertexWeighting& vw,
                            const std::vector<int>& eprime_edge_ids) {
    require_vertex_weighting(g, vw);
    std::vector<char> in_set(g.m(), 0);
    long long size = 0;
    for (int e : eprime_edge_ids) {
        if (e < 0 || e >= g.m()) throw std::invalid_argument("guarding set contains invalid edge id " + std::to_string(e));
        if (!in_set[e]) {
            in_set[e] = 1;
            ++size;
        }
    }
    return check_guard(g, vw, in_set, g.m() - size);
}

TotalWeighting vertex_to_total(const Graph& g, const VertexWeighting& vw) {
    GuardReport guard = is_well_guarded(g, vw);
    if (!guard.ok) {
        const auto& v = *guard.first_violation;
        throw std::invalid_argument("vertex weighting is not well guarded (threshold " + std::to_string(v.i) +
                                    ": count " + std::to_string(v.count) + " outside [" + std::to_string(v.lower) +
                                    "," + std::to_string(v.upper) + "])");
    }
    const int s = vw.s;
    TotalWeighting tw;
    tw.t = s + 1;
    tw.vertex_values.resize(g.n());
    for (int v = 0; v < g.n(); ++v) tw.vertex_values[v] = vw.values[v] + 1;

    std::vector<int> order(g.m());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& ea = g.edges()[a];
        const auto& eb = g.edges()[b];
        return vw.values[ea.first] + vw.values[ea.second] < vw.values[eb.first] + vw.values[eb.second];
    });
    tw.edge_values.resize(g.m());
    for (int j = 0; j < g.m(); ++j) {
        int e = order[j];
        const auto& [u, v] = g.edges()[e];
        int val = j + 1 - (vw.values[u] + vw.values[v]);
        // the guard bounds pin every edge's rank to within s of its weight
        if (val < 1 || val > s + 1)
            throw std::logic_error("edge rank escaped its window despite guard check");
        tw.edge_values[e] = val;
    }
    return tw;
}

VertexWeighting total_to_vertex(const Graph& g, const TotalWeighting& tw) {
    require_total_weighting(g, tw);
    if (g.m() % 3 != 1)
        throw std::invalid_argument("conversion requires m % 3 == 1, got m=" + std::to_string(g.m()));
    const int s = (g.m() - 1) / 3;
    if (tw.t != s + 1)
        throw std::invalid_argument("conversion requires strength exactly s+1=" + std::to_string(s + 1) +
                                    ", got t=" + std::to_string(tw.t));
    IrregularReport irr = verify_total_irregular(g, tw);
    if (!irr.ok) throw std::invalid_argument("total weighting is not irregular");
    VertexWeighting vw;
    vw.s = s;
    vw.values.resize(g.n());
    for (int v = 0; v < g.n(); ++v) vw.values[v] = tw.vertex_values[v] - 1;
    GuardReport guard = is_well_guarded(g, vw);
    if (!guard.ok) throw std::logic_error("strength-(s+1) irregular weighting failed the guard check");
    return vw;
}

namespace {

nlohmann::json edge_weights_json(const Graph& g, const std::vector<int>& per_edge) {
    nlohmann::json arr = nlohmann::json::array();
    for (int e = 0; e < g.m(); ++e) {
        const auto& [u, v] = g.edges()[e];
        arr.push_back({u, v, per_edge[e]});
    }
    return arr;
}

std::vector<int> edge_weights_from_json(const Graph& g, const nlohmann::json& arr) {
    if (!arr.is_array() || static_cast<int>(arr.size()) != g.m())
        throw std::invalid_argument("edge_weights must list every edge exactly once");
    std::vector<int> per_edge(g.m());
    std::vector<char> seen(g.m(), 0);
    for (const auto& item : arr) {
        if (!item.is_array() || item.size() != 3) throw std::invalid_argument("edge_weights entries are [u,v,value]");
        int e = g.edge_index(item[0].get<int>(), item[1].get<int>());
        if (e < 0)
            throw std::invalid_argument("edge_weights mentions non-edge " + item[0].dump() + "-" + item[1].dump());
        if (seen[e]) throw std::invalid_argument("edge_weights lists an edge twice");
        seen[e] = 1;
        per_edge[e] = item[2].get<int>();
    }
    return per_edge;
}

} // namespace

std::string to_json(const Graph& g, const VertexWeighting& vw) {
    std::vector<int> per_edge(g.m());
    for (int e = 0; e < g.m(); ++e) {
        const auto& [u, v] = g.edges()[e];
        per_edge[e] = vw.values[u] + vw.values[v];
    }
    nlohmann::json j{{"s", vw.s},
                     {"vertex_weights", vw.values},
                     {"edge_weights", edge_weights_json(g, per_edge)}};
    return j.dump(2);
}

std::string to_json(const Graph& g, const TotalWeighting& tw) {
    nlohmann::json j{{"t", tw.t},
                     {"vertex_weights", tw.vertex_values},
                     {"edge_weights", edge_weights_json(g, tw.edge_values)}};
    return j.dump(2);
}

VertexWeighting vertex_weighting_from_json(const Graph& g, const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    VertexWeighting vw;
    vw.s = j.at("s").get<int>();
    vw.values = j.at("vertex_weights").get<std::vector<int>>();
    if (static_cast<int>(vw.values.size()) != g.n())
        throw std::invalid_argument("vertex_weights length does not match the graph");
    if (j.contains("edge_weights")) {
        auto per_edge = edge_weights_from_json(g, j["edge_weights"]);
        for (int e = 0; e < g.m(); ++e) {
            const auto& [u, v] = g.edges()[e];
            if (per_edge[e] != vw.values[u] + vw.values[v])
                throw std::invalid_argument("edge_weights inconsistent with vertex weights");
        }
    }
    return vw;
}

TotalWeighting total_weighting_from_json(const Graph& g, const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    TotalWeighting tw;
    tw.t = j.at("t").get<int>();
    tw.vertex_values = j.at("vertex_weights").get<std::vector<int>>();
    tw.edge_values = edge_weights_from_json(g, j.at("edge_weights"));
    if (static_cast<int>(tw.vertex_values.size()) != g.n())
        throw std::invalid_argument("vertex_weights length does not match the graph");
    return tw;
}

} // namespace tes
