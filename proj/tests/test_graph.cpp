#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "tes/graph.hpp"

using namespace tes;

namespace {

void check_invariants(const Graph& g) {
    std::set<std::pair<int, int>> seen;
    long long degsum = 0;
    for (const auto& [u, v] : g.edges()) {
        CHECK(u < v);
        CHECK(u >= 0);
        CHECK(v < g.n());
        CHECK(seen.insert({u, v}).second);
    }
    CHECK(std::is_sorted(g.edges().begin(), g.edges().end()));
    for (int v = 0; v < g.n(); ++v) {
        degsum += g.degree(v);
        CHECK(std::is_sorted(g.neighbors(v).begin(), g.neighbors(v).end()));
        for (int w : g.neighbors(v)) {
            CHECK(g.has_edge(v, w));
            CHECK(g.edge_index(v, w) >= 0);
        }
    }
    CHECK(degsum == 2LL * g.m());
}

} // namespace

TEST_CASE("parse: path on 3 vertices") {
    Graph g = parse_edge_list("0 1\n1 2");
    CHECK(g.n() == 3);
    CHECK(g.m() == 2);
    check_invariants(g);
}

TEST_CASE("parse: K5 from all pairs") {
    std::string text;
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v) text += std::to_string(u) + " " + std::to_string(v) + "\n";
    Graph g = parse_edge_list(text);
    CHECK(g.m() == 10);
    CHECK(degree_stats(g).max_degree == 4);
}

TEST_CASE("parse: loop and duplicate and malformed lines rejected with line number") {
    CHECK_THROWS_WITH_AS(parse_edge_list("3 3"), doctest::Contains("line 1"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_edge_list("0 1\n1 0"), doctest::Contains("line 2"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_edge_list("0 1\n2"), doctest::Contains("line 2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_edge_list("0 1 9"), std::invalid_argument);
    CHECK_THROWS_AS(parse_edge_list("-1 2"), std::invalid_argument);
}

TEST_CASE("parse: comments and blank lines ignored; n is 1 + max id") {
    Graph g = parse_edge_list("# header\n\n0 1  # inline\n\n4 0\n");
    CHECK(g.n() == 5);
    CHECK(g.m() == 2);
    CHECK(g.degree(2) == 0);
}

TEST_CASE("edge list round trip") {
    Graph g = make_random_gnm(30, 60, 11);
    Graph h = parse_edge_list(to_edge_list(g));
    CHECK(h.edges() == g.edges());
}

TEST_CASE("generators: fixed families") {
    Graph k5 = make_complete(5);
    CHECK(k5.m() == 10);
    check_invariants(k5);

    Graph s4 = make_star(4);
    CHECK(s4.m() == 4);
    CHECK(degree_stats(s4).max_degree == 4);

    Graph p3 = make_path(3);
    CHECK(p3.m() == 2);

    Graph s7 = make_star(7);
    CHECK(degree_stats(s7).max_degree == 7);
}

TEST_CASE("generators: dispatcher matches direct calls") {
    GenParams p;
    p.n = 5;
    CHECK(generate(GraphKind::complete, p, 0).edges() == make_complete(5).edges());
    p.n = 40;
    p.m = 80;
    CHECK(generate(GraphKind::random_gnm, p, 3).edges() == make_random_gnm(40, 80, 3).edges());
}

TEST_CASE("random_gnm: exact edge count, determinism, infeasible rejected") {
    Graph g1 = make_random_gnm(50, 200, 42);
    Graph g2 = make_random_gnm(50, 200, 42);
    CHECK(g1.m() == 200);
    CHECK(g1.edges() == g2.edges());
    check_invariants(g1);
    CHECK_THROWS_AS(make_random_gnm(5, 11, 0), std::invalid_argument);
}

TEST_CASE("random_capped_degree: cap respected, exact m, deterministic") {
    Graph g1 = make_random_capped(300, 400, 5, 7);
    Graph g2 = make_random_capped(300, 400, 5, 7);
    CHECK(g1.edges() == g2.edges());
    CHECK(g1.m() == 400);
    CHECK(degree_stats(g1).max_degree <= 5);
    check_invariants(g1);
    CHECK_THROWS_AS(make_random_capped(10, 26, 5, 0), std::invalid_argument);
}

TEST_CASE("degree_stats: edge cases") {
    Graph empty = Graph::from_edges(4, {});
    DegreeStats s = degree_stats(empty);
    CHECK(s.max_degree == 0);
    CHECK(s.degree_sequence == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("pad_to_residue: fixed examples") {
    auto [k5, a0] = pad_to_residue(make_complete(5)); // m=10, already 1 mod 3
    CHECK(a0 == 0);
    CHECK(k5.m() == 10);

    Graph single = parse_edge_list("0 1");
    CHECK(pad_to_residue(single).added == 0);

    Graph two = parse_edge_list("0 1\n2 3");
    auto [padded, a2] = pad_to_residue(two);
    CHECK(a2 == 2);
    CHECK(padded.m() == 4);
    CHECK(padded.n() == two.n() + 4);
    // original edges keep their ids
    for (int i = 0; i < two.m(); ++i) CHECK(padded.edges()[i] == two.edges()[i]);
}

TEST_CASE("pad_to_residue: property over random graphs") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        int n = 5 + static_cast<int>(seed % 11);
        int m = 1 + static_cast<int>(seed % (static_cast<std::uint64_t>(n) * (n - 1) / 2));
        Graph g = make_random_gnm(n, m, seed);
        auto [p, added] = pad_to_residue(g);
        CHECK(added <= 2);
        CHECK((p.m() - 1) % 3 == 0);
        CHECK(p.m() == g.m() + added);
        check_invariants(p);
    }
}

TEST_CASE("identify_vertices: path ends make a cycle") {
    Graph p5 = make_path(5);
    Graph c = identify_vertices(p5, 0, 4);
    CHECK(c.n() == 4);
    CHECK(c.m() == 4);
    for (int v = 0; v < 4; ++v) CHECK(c.degree(v) == 2);
}

TEST_CASE("identify_vertices: adjacency and common neighbors rejected") {
    Graph p3 = make_path(3);
    CHECK_THROWS_AS(identify_vertices(p3, 0, 1), std::invalid_argument); // adjacent
    CHECK_THROWS_AS(identify_vertices(p3, 0, 2), std::invalid_argument); // common neighbor 1
}

TEST_CASE("identify_vertices: two disjoint edges into a path") {
    Graph g = parse_edge_list("0 1\n2 3");
    Graph h = identify_vertices(g, 1, 2);
    CHECK(h.n() == 3);
    CHECK(h.m() == 2);
    CHECK(h.has_edge(0, 1));
    CHECK(h.has_edge(1, 2));
}

TEST_CASE("identify_vertices: preserves m, drops n by one (random property)") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Graph g = make_random_gnm(12, 14, seed);
        // find a valid pair
        bool found = false;
        for (int u = 0; u < g.n() && !found; ++u) {
            for (int v = u + 1; v < g.n() && !found; ++v) {
                if (g.has_edge(u, v)) continue;
                const auto& a = g.neighbors(u);
                const auto& b = g.neighbors(v);
                std::vector<int> common;
                std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
                if (!common.empty()) continue;
                Graph h = identify_vertices(g, u, v);
                CHECK(h.n() == g.n() - 1);
                CHECK(h.m() == g.m());
                check_invariants(h);
                found = true;
            }
        }
    }
}

TEST_CASE("from_edges: validation") {
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {1, 0}}), std::invalid_argument);
}
