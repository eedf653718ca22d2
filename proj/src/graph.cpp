#include "tes/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "tes/rng.hpp"

namespace tes {

Graph Graph::from_edges(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
    for (auto& [u, v] : edges) {
        if (u == v) throw std::invalid_argument("loop edge " + std::to_string(u) + "-" + std::to_string(v));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::invalid_argument("edge endpoint out of range: " + std::to_string(u) + "-" + std::to_string(v));
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("duplicate edge");

    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.adj_.assign(n, {});
    for (const auto& [u, v] : g.edges_) {
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
    }
    for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
    return g;
}

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
    const auto& nb = adj_[degree(u) < degree(v) ? u : v];
    int other = degree(u) < degree(v) ? v : u;
    return std::binary_search(nb.begin(), nb.end(), other);
}

int Graph::edge_index(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v));
    if (it == edges_.end() || *it != std::make_pair(u, v)) return -1;
    return static_cast<int>(it - edges_.begin());
}

Graph parse_edge_list(const std::string& text) {
    std::vector<std::pair<int, int>> edges;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int max_id = -1;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        long long u, v;
        if (!(ls >> u)) continue; // blank or comment-only line
        std::string where = "line " + std::to_string(line_no);
        if (!(ls >> v)) throw std::invalid_argument(where + ": expected two vertex ids");
        std::string trailing;
        if (ls >> trailing) throw std::invalid_argument(where + ": trailing content '" + trailing + "'");
        if (u < 0 || v < 0) throw std::invalid_argument(where + ": negative vertex id");
        if (u == v) throw std::invalid_argument(where + ": loop edge " + std::to_string(u) + " " + std::to_string(v));
        if (u > 1000000000 || v > 1000000000) throw std::invalid_argument(where + ": vertex id too large");
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        max_id = std::max({max_id, static_cast<int>(u), static_cast<int>(v)});
    }
    // Duplicate detection here so the error can still name a line.
    std::set<std::pair<int, int>> seen;
    int ln = 0;
    std::istringstream in2(text);
    while (std::getline(in2, line)) {
        ++ln;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        int u, v;
        if (!(ls >> u >> v)) continue;
        auto key = std::minmax(u, v);
        if (!seen.insert({key.first, key.second}).second)
            throw std::invalid_argument("line " + std::to_string(ln) + ": duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
    return Graph::from_edges(max_id + 1, std::move(edges));
}

std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "# n " << g.n() << " m " << g.m() << "\n";
    for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
    return out.str();
}

Graph make_complete(int n) {
    if (n < 1) throw std::invalid_argument("complete graph needs n >= 1");
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return Graph::from_edges(n, std::move(e));
}

Graph make_star(int leaves) {
    if (leaves < 1) throw std::invalid_argument("star needs at least one leaf");
    std::vector<std::pair<int, int>> e;
    for (int v = 1; v <= leaves; ++v) e.emplace_back(0, v);
    return Graph::from_edges(leaves + 1, std::move(e));
}

Graph make_path(int n) {
    if (n < 2) throw std::invalid_argument("path needs n >= 2");
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
    return Graph::from_edges(n, std::move(e));
}

Graph make_random_gnm(int n, int m, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("random_gnm needs n >= 2");
    long long max_m = static_cast<long long>(n) * (n - 1) / 2;
    if (m < 0 || m > max_m) throw std::invalid_argument("random_gnm: m out of range");
    Rng rng(seed);
    std::set<std::pair<int, int>> chosen;
    while (static_cast<int>(chosen.size()) < m) {
        int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        chosen.insert({u, v});
    }
    return Graph::from_edges(n, {chosen.begin(), chosen.end()});
}

Graph make_random_capped(int n, int m, int cap, std::uint64_t seed) {
    if (n < 2 || cap < 1) throw std::invalid_argument("random_capped_degree needs n >= 2 and cap >= 1");
    long long max_m = std::min(static_cast<long long>(n) * (n - 1) / 2,
                               static_cast<long long>(n) * cap / 2);
    if (m < 0 || m > max_m) throw std::invalid_argument("random_capped_degree: infeasible m");
    Rng rng(seed);
    std::set<std::pair<int, int>> chosen;
    std::vector<int> deg(n, 0);
    long long attempts = 0;
    const long long attempt_cap = 400LL * (m + 64);
    while (static_cast<int>(chosen.size()) < m) {
        if (++attempts > attempt_cap)
            throw std::invalid_argument("random_capped_degree: sampling stalled (parameters too tight)");
        int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        if (u == v || deg[u] >= cap || deg[v] >= cap) continue;
        if (u > v) std::swap(u, v);
        if (!chosen.insert({u, v}).second) continue;
        ++deg[u];
        ++deg[v];
    }
    return Graph::from_edges(n, {chosen.begin(), chosen.end()});
}

Graph generate(GraphKind kind, const GenParams& params, std::uint64_t seed) {
    switch (kind) {
        case GraphKind::complete: return make_complete(params.n);
        case GraphKind::star: return make_star(params.n);
        case GraphKind::path: return make_path(params.n);
        case GraphKind::random_gnm: return make_random_gnm(params.n, params.m, seed);
        case GraphKind::random_capped_degree: return make_random_capped(params.n, params.m, params.cap, seed);
    }
    throw std::invalid_argument("unknown graph kind");
}

DegreeStats degree_stats(const Graph& g) {
    DegreeStats s;
    s.degree_sequence.reserve(g.n());
    for (int v = 0; v < g.n(); ++v) s.degree_sequence.push_back(g.degree(v));
    s.max_degree = s.degree_sequence.empty()
                       ? 0
                       : *std::max_element(s.degree_sequence.begin(), s.degree_sequence.end());
    return s;
}

PadResult pad_to_residue(const Graph& g) {
    int rem = g.m() % 3;
    int added = (rem == 1) ? 0 : (rem == 2 ? 2 : 1);
    if (added == 0) return {g, 0};
    auto edges = g.edges();
    int n = g.n();
    for (int i = 0; i < added; ++i) {
        edges.emplace_back(n, n + 1);
        n += 2;
    }
    return {Graph::from_edges(n, std::move(edges)), added};
}

Graph identify_vertices(const Graph& g, int u, int v) {
    if (u == v || u < 0 || v < 0 || u >= g.n() || v >= g.n())
        throw std::invalid_argument("identify_vertices: invalid vertex pair");
    if (g.has_edge(u, v))
        throw std::invalid_argument("identify_vertices: vertices are adjacent (would create a loop)");
    {
        const auto& a = g.neighbors(u);
        const auto& b = g.neighbors(v);
        std::vector<int> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        if (!common.empty())
            throw std::invalid_argument("identify_vertices: common neighbor " + std::to_string(common[0]) +
                                        " (would create a parallel edge)");
    }
    auto remap = [&](int w) {
        if (w == v) w = u;
        return w > v ? w - 1 : w;
    };
    std::vector<std::pair<int, int>> edges;
    edges.reserve(g.edges().size());
    for (const auto& [a, b] : g.edges()) edges.emplace_back(remap(a), remap(b));
    return Graph::from_edges(g.n() - 1, std::move(edges));
}

} // namespace tes
