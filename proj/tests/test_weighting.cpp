#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "tes/graph.hpp"
#include "tes/rng.hpp"
#include "tes/weighting.hpp"

using namespace tes;

namespace {

VertexWeighting make_vw(int s, std::vector<int> values) {
    VertexWeighting vw;
    vw.s = s;
    vw.values = std::move(values);
    return vw;
}

TotalWeighting make_tw(int t, std::vector<int> vertex_values, std::vector<int> edge_values) {
    TotalWeighting tw;
    tw.t = t;
    tw.vertex_values = std::move(vertex_values);
    tw.edge_values = std::move(edge_values);
    return tw;
}

std::vector<int> all_edge_ids(const Graph& g) {
    std::vector<int> ids(g.m());
    for (int e = 0; e < g.m(); ++e) ids[e] = e;
    return ids;
}

// Draws a vertex weighting biased toward the extremes, which is where the
// guard bounds actually bind: 0 and s each with probability 1/3, the interior
// uniform otherwise.
VertexWeighting draw_polarized(const Graph& g, int s, Rng& rng) {
    VertexWeighting vw;
    vw.s = s;
    vw.values.resize(g.n());
    for (int v = 0; v < g.n(); ++v) {
        if (s == 0) {
            vw.values[v] = 0;
            continue;
        }
        if (s == 1) {
            vw.values[v] = static_cast<int>(rng.below(2));
            continue;
        }
        std::uint64_t roll = rng.below(3);
        if (roll == 0) vw.values[v] = 0;
        else if (roll == 1) vw.values[v] = s;
        else vw.values[v] = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(s - 1)));
    }
    return vw;
}

} // namespace

TEST_CASE("distinct sums verified on a path") {
    Graph g = make_path(3);
    auto tw = make_tw(2, {1, 1, 1}, {1, 2});
    auto rep = verify_total_irregular(g, tw);
    CHECK(rep.ok);
    CHECK_FALSE(rep.witness.has_value());
    int s0 = tw.edge_values[0] + tw.vertex_values[0] + tw.vertex_values[1];
    int s1 = tw.edge_values[1] + tw.vertex_values[1] + tw.vertex_values[2];
    CHECK(s0 == 3);
    CHECK(s1 == 4);
}

TEST_CASE("colliding sums produce a witness on a triangle") {
    Graph g = make_complete(3);
    auto tw = make_tw(1, {1, 1, 1}, {1, 1, 1});
    auto rep = verify_total_irregular(g, tw);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.witness.has_value());
    auto [a, b] = *rep.witness;
    CHECK(a != b);
    CHECK(a >= 0);
    CHECK(b < g.m());
}

TEST_CASE("irregularity checker rejects malformed weightings") {
    Graph g = make_path(3);
    CHECK_THROWS_AS(verify_total_irregular(g, make_tw(1, {1, 1}, {1, 1})), std::invalid_argument);
    CHECK_THROWS_AS(verify_total_irregular(g, make_tw(1, {1, 1, 1}, {1})), std::invalid_argument);
    CHECK_THROWS_AS(verify_total_irregular(g, make_tw(1, {1, 1, 1}, {1, 2})), std::invalid_argument);
    CHECK_THROWS_AS(verify_total_irregular(g, make_tw(1, {0, 1, 1}, {1, 1})), std::invalid_argument);
    CHECK_THROWS_AS(verify_total_irregular(g, make_tw(0, {1, 1, 1}, {1, 1})), std::invalid_argument);
}

TEST_CASE("guard check accepts a balanced path weighting") {
    // P5: edges (0,1),(1,2),(2,3),(3,4); m=4, s=1.
    Graph g = make_path(5);
    auto vw = make_vw(1, {0, 0, 0, 1, 1});
    // Edge weights 0,0,1,2 -> prefix counts 2,3,4 inside [1,2],[2,3],[3,4].
    auto rep = is_well_guarded(g, vw);
    CHECK(rep.ok);
    CHECK_FALSE(rep.first_violation.has_value());
}

TEST_CASE("guard check reports the first violating threshold on a star") {
    Graph g = make_star(4); // center 0, m=4, s=1
    auto vw = make_vw(1, {0, 0, 1, 1, 1});
    // Edge weights 0,1,1,1: at threshold 1 all four edges qualify but the
    // ceiling is 1+1+1 = 3.
    auto rep = is_well_guarded(g, vw);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.first_violation.has_value());
    CHECK(rep.first_violation->i == 1);
    CHECK(rep.first_violation->count == 4);
    CHECK(rep.first_violation->lower == 2);
    CHECK(rep.first_violation->upper == 3);
}

TEST_CASE("single edge with zero weights is well guarded") {
    Graph g = make_path(2);
    auto rep = is_well_guarded(g, make_vw(0, {0, 0}));
    CHECK(rep.ok);
}

TEST_CASE("guard check enforces its preconditions") {
    Graph g = make_path(3); // m=2, not 1 mod 3
    CHECK_THROWS_AS(is_well_guarded(g, make_vw(0, {0, 0, 0})), std::invalid_argument);
    Graph p5 = make_path(5);
    CHECK_THROWS_AS(is_well_guarded(p5, make_vw(2, {0, 0, 0, 1, 1})), std::invalid_argument);
    CHECK_THROWS_AS(is_well_guarded(p5, make_vw(1, {0, 0, 0, 1, 2})), std::invalid_argument);
    CHECK_THROWS_AS(is_well_guarded(p5, make_vw(1, {0, 0, 0, -1, 1})), std::invalid_argument);
    CHECK_THROWS_AS(is_well_guarded(p5, make_vw(1, {0, 0, 0, 1})), std::invalid_argument);
}

TEST_CASE("full edge set behaves exactly like the plain guard check") {
    Graph g = make_path(5);
    auto vw = make_vw(1, {0, 0, 0, 1, 1});
    auto rep = is_guarding_set(g, vw, all_edge_ids(g));
    CHECK(rep.ok);
}

TEST_CASE("empty edge set fails at threshold zero") {
    Graph g = make_path(5);
    auto vw = make_vw(1, {0, 0, 0, 1, 1});
    auto rep = is_guarding_set(g, vw, {});
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.first_violation.has_value());
    CHECK(rep.first_violation->i == 0);
    CHECK(rep.first_violation->count == 0);
    CHECK(rep.first_violation->lower == 1);
}

TEST_CASE("guarding-set checker rejects invalid edge ids") {
    Graph g = make_path(5);
    auto vw = make_vw(1, {0, 0, 0, 1, 1});
    CHECK_THROWS_AS(is_guarding_set(g, vw, {0, 4}), std::invalid_argument);
    CHECK_THROWS_AS(is_guarding_set(g, vw, {-1}), std::invalid_argument);
}

TEST_CASE("excluded edges tighten the ceiling") {
    // P5 weighting with edge weights (0,0,1,2). Dropping the first weight-0
    // edge keeps a guarding set: counts 1,2,3 against [1,1],[2,2],[3,3].
    Graph g = make_path(5);
    auto vw = make_vw(1, {0, 0, 0, 1, 1});
    REQUIRE(is_well_guarded(g, vw).ok);
    CHECK(is_guarding_set(g, vw, {1, 2, 3}).ok);
    // Dropping the weight-2 edge instead leaves both weight-0 edges inside,
    // overshooting the tightened ceiling 0+1+1-1 = 1 at threshold 0.
    auto rep = is_guarding_set(g, vw, {0, 1, 2});
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.first_violation.has_value());
    CHECK(rep.first_violation->i == 0);
    CHECK(rep.first_violation->count == 2);
    CHECK(rep.first_violation->upper == 1);
}

TEST_CASE("duplicate ids in the edge subset count once") {
    Graph g = make_path(5);
    auto vw = make_vw(1, {0, 0, 0, 1, 1});
    std::vector<int> ids = {0, 0, 1, 1, 2, 2, 3, 3};
    auto rep = is_guarding_set(g, vw, ids);
    CHECK(rep.ok);
}

TEST_CASE("conversion spreads a path weighting into distinct sums") {
    Graph g = make_path(5);
    auto vw = make_vw(1, {0, 0, 0, 1, 1});
    auto tw = vertex_to_total(g, vw);
    CHECK(tw.t == 2);
    CHECK(tw.vertex_values == std::vector<int>{1, 1, 1, 2, 2});
    CHECK(tw.edge_values == std::vector<int>{1, 2, 2, 2});
    std::vector<int> sums;
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edges()[e];
        sums.push_back(tw.edge_values[e] + tw.vertex_values[u] + tw.vertex_values[v]);
    }
    CHECK(sums == std::vector<int>{3, 4, 5, 6});
}

TEST_CASE("conversion of a single zero-weighted edge") {
    Graph g = make_path(2);
    auto tw = vertex_to_total(g, make_vw(0, {0, 0}));
    CHECK(tw.t == 1);
    CHECK(tw.vertex_values == std::vector<int>{1, 1});
    CHECK(tw.edge_values == std::vector<int>{1});
}

TEST_CASE("conversion refuses weightings that fail the guard check") {
    Graph g = make_star(4);
    CHECK_THROWS_AS(vertex_to_total(g, make_vw(1, {0, 0, 1, 1, 1})), std::invalid_argument);
}

TEST_CASE("reverse conversion recovers a guarded weighting") {
    Graph g = make_path(5);
    auto tw = make_tw(2, {1, 1, 1, 2, 2}, {1, 2, 2, 2});
    auto vw = total_to_vertex(g, tw);
    CHECK(vw.s == 1);
    CHECK(vw.values == std::vector<int>{0, 0, 0, 1, 1});
    CHECK(is_well_guarded(g, vw).ok);
}

TEST_CASE("reverse conversion enforces strength and irregularity") {
    Graph g = make_path(2); // m=1, s=0
    CHECK_THROWS_AS(total_to_vertex(g, make_tw(2, {1, 1}, {2})), std::invalid_argument);
    Graph p5 = make_path(5);
    // All-ones weighting of the right strength collides on sums.
    CHECK_THROWS_AS(total_to_vertex(p5, make_tw(2, {1, 1, 1, 1, 1}, {1, 1, 1, 1})),
                    std::invalid_argument);
    Graph p3 = make_path(3); // m=2: wrong residue entirely
    CHECK_THROWS_AS(total_to_vertex(p3, make_tw(1, {1, 1, 1}, {1, 1})), std::invalid_argument);
}

TEST_CASE("reverse of a single all-ones edge") {
    Graph g = make_path(2);
    auto vw = total_to_vertex(g, make_tw(1, {1, 1}, {1}));
    CHECK(vw.s == 0);
    CHECK(vw.values == std::vector<int>{0, 0});
}

TEST_CASE("guarded weightings convert to irregular ones across random graphs") {
    Rng rng(20240817);
    int converted = 0;
    for (int trial = 0; trial < 4000 && converted < 250; ++trial) {
        int n = 4 + static_cast<int>(rng.below(8));
        int max_m = n * (n - 1) / 2;
        std::vector<int> feasible;
        for (int m = 4; m <= max_m; m += 3) feasible.push_back(m);
        if (feasible.empty()) continue;
        int m = feasible[rng.below(feasible.size())];
        Graph g = make_random_gnm(n, m, rng.next());
        int s = (m - 1) / 3;
        auto vw = draw_polarized(g, s, rng);
        if (!is_well_guarded(g, vw).ok) continue;
        ++converted;

        auto tw = vertex_to_total(g, vw);
        CHECK(tw.t == s + 1);
        auto rep = verify_total_irregular(g, tw);
        CHECK(rep.ok);

        // The sums must cover exactly 3..m+2.
        std::set<int> sums;
        for (int e = 0; e < g.m(); ++e) {
            auto [u, v] = g.edges()[e];
            sums.insert(tw.edge_values[e] + tw.vertex_values[u] + tw.vertex_values[v]);
        }
        CHECK(static_cast<int>(sums.size()) == g.m());
        CHECK(*sums.begin() == 3);
        CHECK(*sums.rbegin() == g.m() + 2);

        // Round-trip lands back in guarded territory.
        auto back = total_to_vertex(g, tw);
        CHECK(back.s == s);
        CHECK(is_well_guarded(g, back).ok);

        // Full-set equivalence of the two checkers.
        CHECK(is_guarding_set(g, vw, all_edge_ids(g)).ok == is_well_guarded(g, vw).ok);
    }
    // The polarized sampler finds plenty of guarded weightings at these sizes.
    CHECK(converted >= 250);
}

TEST_CASE("checker equivalence also holds for rejected weightings") {
    Rng rng(77);
    int seen_bad = 0;
    for (int trial = 0; trial < 400; ++trial) {
        Graph g = make_random_gnm(6, 7, rng.next());
        auto vw = draw_polarized(g, 2, rng);
        bool a = is_well_guarded(g, vw).ok;
        bool b = is_guarding_set(g, vw, all_edge_ids(g)).ok;
        CHECK(a == b);
        if (!a) ++seen_bad;
    }
    CHECK(seen_bad > 0);
}

TEST_CASE("vertex weighting survives a json round trip") {
    Graph g = make_path(5);
    auto vw = make_vw(1, {0, 0, 0, 1, 1});
    auto text = to_json(g, vw);
    auto back = vertex_weighting_from_json(g, text);
    CHECK(back.s == vw.s);
    CHECK(back.values == vw.values);
}

TEST_CASE("total weighting survives a json round trip") {
    Graph g = make_path(5);
    auto vw = make_vw(1, {0, 0, 0, 1, 1});
    auto tw = vertex_to_total(g, vw);
    auto text = to_json(g, tw);
    auto back = total_weighting_from_json(g, text);
    CHECK(back.t == tw.t);
    CHECK(back.vertex_values == tw.vertex_values);
    CHECK(back.edge_values == tw.edge_values);
}

TEST_CASE("json loader rejects mismatched payloads") {
    Graph g = make_path(5);
    auto vw = make_vw(1, {0, 0, 0, 1, 1});
    auto text = to_json(g, vw);
    Graph other = make_path(4);
    CHECK_THROWS_AS(vertex_weighting_from_json(other, text), std::invalid_argument);

    auto tw = vertex_to_total(g, vw);
    auto ttext = to_json(g, tw);
    CHECK_THROWS_AS(total_weighting_from_json(other, ttext), std::invalid_argument);
}
