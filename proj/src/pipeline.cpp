#include "tes/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "tes/errors.hpp"
#include "tes/exact.hpp"
#include "tes/lemma.hpp"
#include "tes/prob.hpp"
#include "tes/rng.hpp"

namespace tes {

namespace {

std::vector<char> mask_of(int n, const std::vector<int>& vs) {
    std::vector<char> m(n, 0);
    for (int v : vs) m[v] = 1;
    return m;
}

long long edges_inside(const Graph& g, const std::vector<char>& in) {
    long long c = 0;
    for (const auto& [u, v] : g.edges())
        if (in[u] && in[v]) ++c;
    return c;
}

int degree_into(const Graph& g, int v, const std::vector<char>& in) {
    int c = 0;
    for (int w : g.neighbors(v))
        if (in[w]) ++c;
    return c;
}

void shuffle_ids(std::vector<int>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng.below(i)]);
}

std::string cond_text(const ConditionReport& rep, int idx) {
    return "condition (" + std::to_string(idx + 1) + ") fails: " +
           std::to_string(rep.lines[idx].lhs) + " > " + std::to_string(rep.lines[idx].rhs);
}

} // namespace

// --- context ------------------------------------------------------------------

std::vector<int> LargeGraphContext::b_all() const {
    std::vector<int> out;
    out.reserve(b0_raw.size() + bs_raw.size());
    std::merge(b0_raw.begin(), b0_raw.end(), bs_raw.begin(), bs_raw.end(),
               std::back_inserter(out));
    return out;
}

bool LargeGraphContext::regime_ok() const { return edges_inside_b * 100 < m; }

const char* case_name(CaseId c) {
    switch (c) {
        case CaseId::case1: return "case1";
        case CaseId::case2: return "case2";
        case CaseId::case3: return "case3";
        default: return "case4";
    }
}

LargeGraphContext split_large_degree(const Graph& g, double eps) {
    if (g.m() < 1) throw std::invalid_argument("split_large_degree: graph has no edges");
    if (!(eps > 0.0)) throw std::invalid_argument("split_large_degree: eps must be positive");
    LargeGraphContext ctx;
    ctx.eps = eps;
    ctx.m = g.m();
    const double threshold = eps * static_cast<double>(g.m());

    std::vector<int> heavy;
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) > threshold) heavy.push_back(v);
    std::sort(heavy.begin(), heavy.end(), [&](int a, int b) {
        if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
        return a < b;
    });

    std::vector<char> in_b = mask_of(g.n(), heavy);
    ctx.edges_inside_b = edges_inside(g, in_b);
    ctx.m_prime = ctx.m - ctx.edges_inside_b;
    for (int v = 0; v < g.n(); ++v)
        if (!in_b[v]) ctx.vprime.push_back(v);

    std::vector<char> in_vp(g.n(), 0);
    for (int v : ctx.vprime) in_vp[v] = 1;

    long long to0 = 0, toS = 0;
    for (int v : heavy) {
        const long long ev = degree_into(g, v, in_vp);
        if (to0 <= toS) {
            ctx.b0_raw.push_back(v);
            to0 += ev;
        } else {
            ctx.bs_raw.push_back(v);
            toS += ev;
        }
    }
    std::sort(ctx.b0_raw.begin(), ctx.b0_raw.end());
    std::sort(ctx.bs_raw.begin(), ctx.bs_raw.end());
    if (ctx.m_prime > 0) {
        ctx.e0_raw = static_cast<double>(to0) / static_cast<double>(ctx.m_prime);
        ctx.es_raw = static_cast<double>(toS) / static_cast<double>(ctx.m_prime);
    }
    ctx.swapped = ctx.es_raw > ctx.e0_raw;
    return ctx;
}

CaseId dispatch_case(const LargeGraphContext& ctx) {
    const double e0 = ctx.e0();
    const double es = ctx.es();
    const std::size_t b0 = ctx.b0().size();
    if (e0 >= 0.52 && b0 == 1) return CaseId::case1;
    if (e0 >= 0.52 && b0 == 2) return CaseId::case2;
    if (b0 >= 3 && e0 + es >= 0.86) return CaseId::case3;
    return CaseId::case4;
}

// --- local search -------------------------------------------------------------

std::vector<int> min_induced_subset(const Graph& g, const std::vector<int>& universe, int k,
                                    std::uint64_t seed, int iter_cap_per_n) {
    if (k < 0 || k > static_cast<int>(universe.size()))
        throw std::invalid_argument("min_induced_subset: size out of range");
    std::vector<int> pool = universe;
    std::sort(pool.begin(), pool.end());
    if (std::adjacent_find(pool.begin(), pool.end()) != pool.end())
        throw std::invalid_argument("min_induced_subset: duplicate vertex in universe");
    if (!pool.empty() && (pool.front() < 0 || pool.back() >= g.n()))
        throw std::invalid_argument("min_induced_subset: vertex out of range");

    Rng rng(seed);
    shuffle_ids(pool, rng);
    std::vector<char> in_x(g.n(), 0);
    std::vector<int> xs(pool.begin(), pool.begin() + k);
    std::vector<int> ys(pool.begin() + k, pool.end());
    for (int v : xs) in_x[v] = 1;

    std::vector<int> dx(g.n(), 0); // edges into the current X, for universe members
    for (int v : universe) dx[v] = degree_into(g, v, in_x);

    const long long cap = static_cast<long long>(iter_cap_per_n) * std::max(1, g.n());
    for (long long iter = 0; iter < cap; ++iter) {
        int best_gain = 0, bx = -1, by = -1;
        for (int x : xs) {
            for (int y : ys) {
                const int gain = dx[x] - dx[y] + (g.has_edge(x, y) ? 1 : 0);
                if (gain > best_gain ||
                    (gain == best_gain && bx != -1 && (x < bx || (x == bx && y < by)))) {
                    if (gain > 0) {
                        best_gain = gain;
                        bx = x;
                        by = y;
                    }
                }
            }
        }
        if (bx < 0) break;
        in_x[bx] = 0;
        in_x[by] = 1;
        std::replace(xs.begin(), xs.end(), bx, by);
        std::replace(ys.begin(), ys.end(), by, bx);
        for (int w : g.neighbors(bx)) --dx[w];
        for (int w : g.neighbors(by)) ++dx[w];
    }
    std::sort(xs.begin(), xs.end());
    return xs;
}

std::vector<int> min_induced_subset_windowed(const Graph& g, const std::vector<int>& universe,
                                             const std::vector<int>& anchors, long long t_lo,
                                             long long t_hi, std::uint64_t seed,
                                             int iter_cap_per_n) {
    std::vector<char> in_a = mask_of(g.n(), anchors);
    auto anchor_deg = [&](int v) { return degree_into(g, v, in_a); };

    std::vector<int> pool = universe;
    std::sort(pool.begin(), pool.end());
    if (std::adjacent_find(pool.begin(), pool.end()) != pool.end())
        throw std::invalid_argument("min_induced_subset_windowed: duplicate vertex in universe");
    Rng rng(seed);
    shuffle_ids(pool, rng);

    std::vector<char> in_x(g.n(), 0);
    std::vector<int> xs, ys;
    long long cnt = 0;
    for (int v : pool) {
        if (cnt < t_lo && cnt + anchor_deg(v) < t_hi) {
            xs.push_back(v);
            in_x[v] = 1;
            cnt += anchor_deg(v);
        } else {
            ys.push_back(v);
        }
    }
    if (cnt < t_lo)
        throw construction_error("window_unreachable",
                                 "min_induced_subset_windowed: cannot reach the anchor window");

    std::vector<int> dx(g.n(), 0);
    for (int v : universe) dx[v] = degree_into(g, v, in_x);

    const long long cap = static_cast<long long>(iter_cap_per_n) * std::max(1, g.n());
    for (long long iter = 0; iter < cap; ++iter) {
        // Moves: remove x (window permitting), or swap x<->y inside the window.
        int best_gain = 0, bx = -1, by = -1; // by == -1 encodes a removal
        for (int x : xs) {
            if (cnt - anchor_deg(x) >= t_lo && dx[x] > best_gain) {
                best_gain = dx[x];
                bx = x;
                by = -1;
            }
        }
        for (int x : xs) {
            for (int y : ys) {
                const long long after = cnt - anchor_deg(x) + anchor_deg(y);
                if (after < t_lo || after >= t_hi) continue;
                const int gain = dx[x] - dx[y] + (g.has_edge(x, y) ? 1 : 0);
                if (gain > best_gain) {
                    best_gain = gain;
                    bx = x;
                    by = y;
                }
            }
        }
        if (bx < 0) break;
        if (by < 0) {
            in_x[bx] = 0;
            cnt -= anchor_deg(bx);
            xs.erase(std::find(xs.begin(), xs.end(), bx));
            ys.push_back(bx);
            for (int w : g.neighbors(bx)) --dx[w];
        } else {
            in_x[bx] = 0;
            in_x[by] = 1;
            cnt += anchor_deg(by) - anchor_deg(bx);
            std::replace(xs.begin(), xs.end(), bx, by);
            std::replace(ys.begin(), ys.end(), by, bx);
            for (int w : g.neighbors(bx)) --dx[w];
            for (int w : g.neighbors(by)) ++dx[w];
        }
    }
    std::sort(xs.begin(), xs.end());
    return xs;
}

// --- case 1 -------------------------------------------------------------------

namespace {

// Iteratively adds every pool vertex without neighbors in X (so |X| is maximal
// for its induced edge count).
void absorb_isolated_into(const Graph& g, std::vector<int>& x, const std::vector<int>& pool) {
    std::vector<char> in_x = mask_of(g.n(), x);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v : pool) {
            if (in_x[v]) continue;
            if (degree_into(g, v, in_x) == 0) {
                in_x[v] = 1;
                x.push_back(v);
                changed = true;
            }
        }
    }
    std::sort(x.begin(), x.end());
}

} // namespace

VertexWeighting construct_case1(const Graph& g, const LargeGraphContext& ctx, std::uint64_t seed,
                                Case1Context* out) {
    if (g.m() % 3 != 1)
        throw std::invalid_argument("construct_case1: edge count must be 1 mod 3");
    if (dispatch_case(ctx) != CaseId::case1)
        throw std::invalid_argument("construct_case1: context does not select this route");
    const int s = (g.m() - 1) / 3;
    Case1Context cc;

    // Reduction: merge every vertex outside {v1} ∪ N(v1) into a neighbor of v1
    // at distance >= 3, preserving the edge count.
    Graph red = g;
    std::vector<int> to_red(g.n());
    std::iota(to_red.begin(), to_red.end(), 0);
    int v1 = ctx.b0()[0];
    for (;;) {
        std::vector<char> near(red.n(), 0);
        near[v1] = 1;
        for (int w : red.neighbors(v1)) near[w] = 1;
        int u = -1;
        for (int v = 0; v < red.n() && u < 0; ++v)
            if (!near[v]) u = v;
        if (u < 0) break;

        int target = -1;
        for (int cand = 0; cand < red.n(); ++cand) {
            // Lowest-id vertex outside the closed neighborhood first; for it,
            // the lowest-id neighbor of v1 at distance >= 3.
            if (!near[cand] || cand == v1) continue;
            if (red.has_edge(u, cand)) continue;
            const auto& a = red.neighbors(u);
            const auto& b = red.neighbors(cand);
            bool common = false;
            std::size_t i = 0, j = 0;
            while (i < a.size() && j < b.size()) {
                if (a[i] == b[j]) { common = true; break; }
                if (a[i] < b[j]) ++i; else ++j;
            }
            if (!common) { target = cand; break; }
        }
        if (target < 0)
            throw construction_error("case1_reduction_failed",
                                     "no vertex pair at distance >= 3 to identify");
        red = identify_vertices(red, target, u);
        const int kept = target > u ? target - 1 : target;
        for (int& id : to_red) {
            if (id == u) id = kept;
            else if (id > u) --id;
        }
        v1 = v1 > u ? v1 - 1 : v1;
    }
    cc.v1 = v1;
    cc.reduced = red;
    cc.to_reduced = to_red;

    const int dv1 = red.degree(v1);
    const long long n_h = red.n() - 1;
    const long long e_h = red.m() - dv1;

    // Low-degree universe of the reduced graph.
    LargeGraphContext rctx = split_large_degree(red, ctx.eps);
    std::vector<int> universe = rctx.vprime;
    universe.erase(std::remove(universe.begin(), universe.end(), v1), universe.end());

    const long long two_thirds = 2 * (2 * n_h - e_h);
    const long long target_size = two_thirds >= 0 ? two_thirds / 3 : -1;
    if (target_size < 0 || target_size > static_cast<long long>(universe.size()))
        throw construction_error("case1_claim1_failed",
                                 "low-edge target size " + std::to_string(target_size) +
                                     " not available among " + std::to_string(universe.size()) +
                                     " low-degree vertices");
    cc.xprime = min_induced_subset(red, universe, static_cast<int>(target_size), seed);
    {
        const long long ex = edges_inside(red, mask_of(red.n(), cc.xprime));
        if (2 * ex > static_cast<long long>(cc.xprime.size()))
            throw construction_error("case1_claim1_failed",
                                     "local search left " + std::to_string(ex) +
                                         " induced edges on " + std::to_string(cc.xprime.size()) +
                                         " vertices");
    }

    // Trim to s+1 vertices by repeatedly deleting a maximum-induced-degree
    // vertex, then re-absorb vertices that add no induced edges.
    if (static_cast<long long>(cc.xprime.size()) < s + 1)
        throw construction_error("case1_claim2_failed",
                                 "selected set smaller than s+1 = " + std::to_string(s + 1));
    std::vector<int> x = cc.xprime;
    {
        std::vector<char> in_x = mask_of(red.n(), x);
        while (static_cast<long long>(x.size()) > s + 1) {
            int worst = -1, worst_deg = -1;
            for (int v : x) {
                const int d = degree_into(red, v, in_x);
                if (d > worst_deg) { worst = v; worst_deg = d; }
            }
            in_x[worst] = 0;
            x.erase(std::find(x.begin(), x.end(), worst));
        }
        const long long ex = edges_inside(red, in_x);
        if (ex != 0 && static_cast<double>(ex) > 2.0 * s - dv1 + 11.0 / 6.0)
            throw construction_error("case1_claim2_failed",
                                     "trimmed set keeps " + std::to_string(ex) +
                                         " induced edges, above 2s-d(v1)+11/6");
    }
    absorb_isolated_into(red, x, universe);
    cc.x = x;

    std::vector<char> in_x = mask_of(red.n(), x);
    std::vector<int> y;
    for (int v = 0; v < red.n(); ++v)
        if (v != v1 && !in_x[v]) y.push_back(v);
    cc.y = y;

    LemmaInstance inst{{v1}, y, x};
    const ConditionReport rep = check_conditions(red, inst);
    for (int idx : {0, 3, 4})
        if (!rep.lines[idx].ok)
            throw construction_error("case1_conditions_failed", cond_text(rep, idx));
    const bool b_ok = rep.lines[1].ok;
    const bool c_ok = rep.lines[2].ok;

    VertexWeighting vw_red;
    if (b_ok && c_ok) {
        vw_red = construct(red, inst).weighting;
        cc.route = "lemma";
    } else if (b_ok) {
        // Condition (3) fails by some margin gamma; X must hold enough
        // vertices without A2-neighbors to open the placement.
        std::vector<char> in_y = mask_of(red.n(), y);
        long long e_a2 = edges_inside(red, in_y);
        long long e_a2c = 0;
        int d2 = 0;
        for (int v : x) {
            const int d = degree_into(red, v, in_y);
            e_a2c += d;
            d2 = std::max(d2, d);
        }
        const long long gamma = (s - 1 + d2) - (e_a2 + e_a2c);
        std::vector<int> bootstrap;
        for (int v : x)
            if (degree_into(red, v, in_y) == 0) bootstrap.push_back(v);
        if (static_cast<long long>(bootstrap.size()) <
            static_cast<long long>(x.size()) - s + gamma)
            throw construction_error("case1_bootstrap_insufficient",
                                     "only " + std::to_string(bootstrap.size()) +
                                         " opener vertices, need " +
                                         std::to_string(static_cast<long long>(x.size()) - s +
                                                        gamma));
        vw_red = construct_with_bootstrap(red, inst, bootstrap).weighting;
        cc.route = "lemma_bootstrap";
    } else {
        // Explicit weighting. Y splits by degree; Y3 collects enough incident
        // edges; X is ordered by its attachment to Y.
        std::vector<int> y1, y2;
        for (int v : y)
            (static_cast<double>(red.degree(v)) >= 0.01 * s ? y1 : y2).push_back(v);
        cc.y1 = y1;
        cc.y2 = y2;

        const long long target = 2LL * s - dv1;
        std::vector<int> y3;
        std::vector<char> in_y3(red.n(), 0);
        long long cnt = 0;
        auto recount = [&]() {
            long long c = 0;
            for (const auto& [a, b] : red.edges())
                if ((in_y3[a] || in_y3[b]) && a != v1 && b != v1) ++c;
            return c;
        };
        for (int v : y2) {
            if (cnt >= target) break;
            y3.push_back(v);
            in_y3[v] = 1;
            cnt = recount();
        }
        if (cnt < target)
            throw construction_error("case1_y3_failed",
                                     "incident edges reach only " + std::to_string(cnt) +
                                         " of " + std::to_string(target));
        if (!(static_cast<double>(cnt) < static_cast<double>(target) + 0.01 * s))
            throw construction_error("case1_y3_failed", "incident edge count overshoots");
        cc.y3 = y3;
        cc.a = edges_inside(red, in_y3);
        cc.b = cnt - cc.a;
        if (cc.b > s)
            throw construction_error("case1_explicit_failed", "offset exceeds s");
        const long long level = std::min<long long>(s - cc.b, (dv1 + 1) / 2);
        cc.c = static_cast<int>(s - level);

        std::vector<int> xs = x;
        std::vector<char> in_y = mask_of(red.n(), y);
        std::stable_sort(xs.begin(), xs.end(), [&](int p, int q) {
            return degree_into(red, p, in_y) < degree_into(red, q, in_y);
        });
        vw_red.s = s;
        vw_red.values.assign(red.n(), 0);
        vw_red.values[v1] = 0;
        for (int v : y) vw_red.values[v] = s;
        for (int v : y3) vw_red.values[v] = static_cast<int>(level);
        for (std::size_t i = 0; i < xs.size(); ++i)
            vw_red.values[xs[i]] = static_cast<int>(std::min<long long>(s, i));

        std::vector<int> eprime;
        for (int e = 0; e < red.m(); ++e) {
            const auto& [a, b] = red.edges()[e];
            if (!(in_x[a] && in_x[b])) eprime.push_back(e);
        }
        const GuardReport guard = is_guarding_set(red, vw_red, eprime);
        if (!guard.ok) {
            const auto& viol = *guard.first_violation;
            throw construction_error("case1_explicit_failed",
                                     "guard fails at threshold " + std::to_string(viol.i) +
                                         ": count " + std::to_string(viol.count) + " outside [" +
                                         std::to_string(viol.lower) + ", " +
                                         std::to_string(viol.upper) + "]");
        }
        cc.route = "explicit";
    }

    VertexWeighting vw;
    vw.s = s;
    vw.values.resize(g.n());
    for (int v = 0; v < g.n(); ++v) vw.values[v] = vw_red.values[to_red[v]];
    if (!is_well_guarded(g, vw).ok)
        throw std::logic_error("construct_case1: pull-back lost the guard property");
    if (out) *out = std::move(cc);
    return vw;
}

// --- case 2 -------------------------------------------------------------------

namespace {

// Explicit weighting whose guarding set is every edge incident to the trio:
// sweep the levels 0..2s and cover each one with some unassigned vertex whose
// adjacency to the trio can produce an edge of that weight.
VertexWeighting case2_fallback_weighting(const Graph& g, int v1, int v2, int v3, int s) {
    const int h = (s + 1) / 2;
    VertexWeighting vw;
    vw.s = s;
    vw.values.assign(g.n(), 0);
    vw.values[v1] = 0;
    vw.values[v2] = s;
    vw.values[v3] = h;

    std::vector<char> covered(2 * s + 1, 0);
    if (g.has_edge(v1, v2)) covered[s] = 1;
    if (g.has_edge(v1, v3)) covered[h] = 1;
    if (g.has_edge(v2, v3)) covered[std::min(2 * s, s + h)] = 1;

    struct Prof {
        int id = 0;
        std::array<int, 3> offs{};
        int cnt = 0;
        bool used = false;
    };
    std::vector<Prof> profs;
    for (int v = 0; v < g.n(); ++v) {
        if (v == v1 || v == v2 || v == v3) continue;
        Prof p;
        p.id = v;
        if (g.has_edge(v, v1)) p.offs[p.cnt++] = 0;
        if (g.has_edge(v, v3)) p.offs[p.cnt++] = h;
        if (g.has_edge(v, v2)) p.offs[p.cnt++] = s;
        if (p.cnt > 0) profs.push_back(p);
    }

    std::vector<char> assigned(g.n(), 0);
    for (int level = 0; level <= 2 * s; ++level) {
        if (covered[level]) continue;
        int pick = -1, pick_off = -1;
        for (std::size_t k = 0; k < profs.size(); ++k) {
            const Prof& p = profs[k];
            if (p.used) continue;
            for (int j = 0; j < p.cnt; ++j) {
                const int val = level - p.offs[j];
                if (val < 0 || val > s) continue;
                if (pick < 0 || p.cnt < profs[pick].cnt ||
                    (p.cnt == profs[pick].cnt && p.id < profs[pick].id)) {
                    pick = static_cast<int>(k);
                    pick_off = p.offs[j];
                }
                break; // offsets ascend; the first valid one is the smallest
            }
        }
        if (pick < 0)
            throw construction_error("case2_fallback_failed",
                                     "no vertex can produce an edge of weight " +
                                         std::to_string(level));
        Prof& p = profs[pick];
        p.used = true;
        assigned[p.id] = 1;
        vw.values[p.id] = level - pick_off;
        for (int j = 0; j < p.cnt; ++j) covered[std::min(2 * s, level - pick_off + p.offs[j])] = 1;
    }
    for (const Prof& p : profs)
        if (!p.used) vw.values[p.id] = s;
    for (int v = 0; v < g.n(); ++v)
        if (v != v1 && v != v2 && v != v3 && !assigned[v] && !g.has_edge(v, v1) &&
            !g.has_edge(v, v2) && !g.has_edge(v, v3))
            vw.values[v] = s;

    std::vector<int> eprime;
    for (int e = 0; e < g.m(); ++e) {
        const auto& [a, b] = g.edges()[e];
        if (a == v1 || a == v2 || a == v3 || b == v1 || b == v2 || b == v3) eprime.push_back(e);
    }
    const GuardReport guard = is_guarding_set(g, vw, eprime);
    if (!guard.ok) {
        const auto& viol = *guard.first_violation;
        throw construction_error("case2_fallback_failed",
                                 "guard fails at threshold " + std::to_string(viol.i) +
                                     ": count " + std::to_string(viol.count) + " outside [" +
                                     std::to_string(viol.lower) + ", " +
                                     std::to_string(viol.upper) + "]");
    }
    return vw;
}

} // namespace

VertexWeighting construct_case2(const Graph& g, const LargeGraphContext& ctx, std::uint64_t seed,
                                Case2Context* out) {
    if (g.m() % 3 != 1)
        throw std::invalid_argument("construct_case2: edge count must be 1 mod 3");
    if (dispatch_case(ctx) != CaseId::case2)
        throw std::invalid_argument("construct_case2: context does not select this route");
    const int s = (g.m() - 1) / 3;
    Case2Context cc;

    if (ctx.bs().empty())
        throw construction_error("case2_no_heavy_partner",
                                 "the opposite heavy side is empty; no anchor vertex available");
    int v1 = ctx.bs()[0];
    for (int v : ctx.bs())
        if (g.degree(v) > g.degree(v1)) v1 = v;

    int v2 = ctx.b0()[0], v3 = ctx.b0()[1];
    std::vector<char> in_h(g.n(), 1);
    in_h[v1] = in_h[v2] = in_h[v3] = 0;
    long long d2 = degree_into(g, v2, in_h), d3 = degree_into(g, v3, in_h);
    if (d3 > d2) {
        std::swap(v2, v3);
        std::swap(d2, d3);
    }
    const long long d1 = degree_into(g, v1, in_h);
    cc.v1 = v1;
    cc.v2 = v2;
    cc.v3 = v3;
    cc.d1 = d1;
    cc.d2 = d2;
    cc.d3 = d3;

    const long long nb = static_cast<long long>(ctx.b0().size() + ctx.bs().size());
    const double sum = static_cast<double>(d1 + 2 * d2 + 2 * d3);
    const double t_hi_real = (4.0 / 3.0) * (sum - g.m());
    const double lo_claim = std::min(static_cast<double>(d2 + d3 - nb),
                                     (4.0 / 3.0) * (sum - g.m()) - 2.0);
    const double lo_proof = std::min(static_cast<double>(d2 + d3 - nb),
                                     (4.0 / 3.0) * (sum - g.m() - 2.0));
    const double t_lo_real = std::min(lo_claim, lo_proof);
    cc.window_divergence = lo_claim != lo_proof;
    cc.window_lo = static_cast<long long>(std::ceil(t_lo_real - 1e-9));
    cc.window_hi = static_cast<long long>(std::ceil(t_hi_real - 1e-9));
    if (cc.window_lo >= cc.window_hi)
        throw construction_error("case2_claim3_failed", "empty anchor window");

    std::vector<int> universe;
    {
        std::vector<char> near(g.n(), 0);
        for (int w : g.neighbors(v2)) near[w] = 1;
        for (int w : g.neighbors(v3)) near[w] = 1;
        for (int v : ctx.vprime)
            if (near[v]) universe.push_back(v);
    }
    std::vector<int> anchors{std::min(v2, v3), std::max(v2, v3)};
    std::vector<int> xp;
    try {
        xp = min_induced_subset_windowed(g, universe, anchors, cc.window_lo, cc.window_hi, seed);
    } catch (const construction_error&) {
        throw construction_error("case2_claim3_failed",
                                 "cannot reach the anchor window from the low-degree pool");
    }
    std::vector<char> in_a = mask_of(g.n(), anchors);
    auto anchor_count = [&](const std::vector<int>& set) {
        long long c = 0;
        for (int v : set) c += degree_into(g, v, in_a);
        return c;
    };
    {
        const long long ax = anchor_count(xp);
        const long long ex = edges_inside(g, mask_of(g.n(), xp));
        if (4 * ex > ax)
            throw construction_error("case2_claim3_failed",
                                     "induced edges " + std::to_string(ex) +
                                         " exceed a quarter of the anchor count " +
                                         std::to_string(ax));
    }
    cc.xprime = xp;

    // Trim by the induced-to-anchor ratio until the anchor count is s+3 or less.
    std::vector<int> x = xp;
    {
        std::vector<char> in_x = mask_of(g.n(), x);
        long long ax = anchor_count(x);
        while (ax > s + 3) {
            int worst = -1;
            long long wnum = -1, wden = 1;
            for (int v : x) {
                const long long num = degree_into(g, v, in_x);
                const long long den = degree_into(g, v, in_a);
                if (worst < 0 || num * wden > wnum * den) {
                    worst = v;
                    wnum = num;
                    wden = den;
                }
            }
            in_x[worst] = 0;
            ax -= degree_into(g, worst, in_a);
            x.erase(std::find(x.begin(), x.end(), worst));
        }
        if (ax < s + 2)
            throw construction_error("case2_claim4_failed",
                                     "anchor count " + std::to_string(ax) +
                                         " fell below s+2 = " + std::to_string(s + 2));
        const long long ex = edges_inside(g, in_x);
        const double bound =
            std::max(0.5 * s - 0.25 * static_cast<double>(d2 + d3 - nb) + 1.5,
                     1.5 * s - sum / 3.0 + 2.5);
        if (ex != 0 && static_cast<double>(ex) > bound)
            throw construction_error("case2_claim4_failed",
                                     "trimmed set keeps " + std::to_string(ex) +
                                         " induced edges, above the derived bound");
    }
    absorb_isolated_into(g, x, ctx.vprime);
    cc.x = x;

    std::vector<char> in_x = mask_of(g.n(), x);
    std::vector<int> a1{std::min(v2, v3), std::max(v2, v3)};
    std::vector<int> a2;
    for (int v = 0; v < g.n(); ++v)
        if (v != v2 && v != v3 && !in_x[v]) a2.push_back(v);

    LemmaInstance inst{a1, a2, x};
    const ConditionReport rep = check_conditions(g, inst);
    for (int idx : {0, 3, 4})
        if (!rep.lines[idx].ok)
            throw construction_error("case2_conditions_failed", cond_text(rep, idx));
    if (!rep.lines[1].ok)
        throw construction_error("case2_condition_b_failed", cond_text(rep, 1));

    VertexWeighting vw;
    if (rep.lines[2].ok) {
        vw = construct(g, inst).weighting;
        cc.route = "lemma";
    } else {
        if (!(static_cast<double>(d2 + d3) > 1.98 * s && static_cast<double>(d3) > 0.96 * s))
            throw construction_error("case2_fallback_unavailable",
                                     "degree bounds d2+d3 > 1.98s and d3 > 0.96s do not hold");
        vw = case2_fallback_weighting(g, v1, v2, v3, s);
        cc.route = "explicit";
    }
    if (!is_well_guarded(g, vw).ok)
        throw std::logic_error("construct_case2: produced weighting is not well guarded");
    if (out) *out = std::move(cc);
    return vw;
}

// --- case 3 -------------------------------------------------------------------

VertexWeighting construct_case3(const Graph& g, const LargeGraphContext& ctx) {
    if (g.m() % 3 != 1)
        throw std::invalid_argument("construct_case3: edge count must be 1 mod 3");
    if (dispatch_case(ctx) != CaseId::case3)
        throw std::invalid_argument("construct_case3: context does not select this route");
    LemmaInstance inst{ctx.b0(), ctx.bs(), ctx.vprime};
    const ConditionReport rep = check_conditions(g, inst);
    if (!rep.all_ok) {
        for (int idx : {0, 1, 3, 4})
            if (!rep.lines[idx].ok)
                throw construction_error("case3_conditions_failed", cond_text(rep, idx));
        throw construction_error("case3_condition_c_failed", cond_text(rep, 2));
    }
    return construct(g, inst).weighting;
}

// --- end-to-end ----------------------------------------------------------------

namespace {

TotalWeighting restrict_to(const Graph& g, const TotalWeighting& padded) {
    TotalWeighting tw;
    tw.t = padded.t;
    tw.vertex_values.assign(padded.vertex_values.begin(), padded.vertex_values.begin() + g.n());
    tw.edge_values.assign(padded.edge_values.begin(), padded.edge_values.begin() + g.m());
    return tw;
}

} // namespace

AutoResult construct_auto(const Graph& g, const ConstructOptions& opts) {
    if (g.m() < 1) throw std::invalid_argument("construct_auto: graph has no edges");
    nlohmann::json diag;
    diag["n"] = g.n();
    diag["m"] = g.m();

    if (opts.force_exact || (g.m() <= opts.exact_max_edges && g.n() <= opts.exact_max_vertices)) {
        const TesResult r = tes_exact(g, opts.exact_budget);
        diag["route"] = "exact";
        diag["nodes"] = r.nodes;
        AutoResult res;
        res.weighting = r.certificate;
        res.strength = r.tes;
        res.route = "exact";
        res.diagnostics = diag.dump();
        return res;
    }

    const DegreeStats ds = degree_stats(g);
    if ((ds.max_degree + 2) / 2 > (g.m() + 4) / 3)
        throw construction_error("unsupported_regime",
                                 "the degree term dominates the lower bound; use the exhaustive "
                                 "solver for this graph");

    const PadResult pad = pad_to_residue(g);
    const Graph& gp = pad.graph;
    const int s = (gp.m() - 1) / 3;
    diag["padded_edges"] = pad.added;

    double eps;
    if (opts.eps_override) {
        eps = *opts.eps_override;
        diag["eps_mode"] = "override";
    } else if (opts.small_degree_mode) {
        if (static_cast<double>(degree_stats(gp).max_degree) > gp.m() / 4350.0)
            throw construction_error("small_degree_unavailable",
                                     "max degree exceeds m/4350; the small-degree threshold "
                                     "does not apply");
        eps = 2.3e-4;
        diag["eps_mode"] = "small_degree";
    } else {
        eps = 2.7e-5;
        diag["eps_mode"] = "main";
    }

    LargeGraphContext ctx = split_large_degree(gp, eps);
    diag["eps"] = eps;
    diag["b0_size"] = ctx.b0().size();
    diag["bs_size"] = ctx.bs().size();
    diag["m_prime"] = ctx.m_prime;
    diag["e0"] = ctx.e0_raw;
    diag["eS"] = ctx.es_raw;
    diag["swapped"] = ctx.swapped;
    diag["regime_ok"] = ctx.regime_ok();

    VertexWeighting vw;
    std::string route;
    int attempts = 0;
    const CaseId cid = dispatch_case(ctx);
    diag["case"] = case_name(cid);

    const bool run_primary = ctx.regime_ok() || opts.eps_override.has_value();
    if (run_primary) {
        switch (cid) {
            case CaseId::case1: {
                Case1Context cc;
                vw = construct_case1(gp, ctx, opts.seed, &cc);
                diag["case1_route"] = cc.route;
                break;
            }
            case CaseId::case2: {
                Case2Context cc;
                vw = construct_case2(gp, ctx, opts.seed, &cc);
                diag["case2_route"] = cc.route;
                break;
            }
            case CaseId::case3:
                vw = construct_case3(gp, ctx);
                break;
            default: {
                SampleStats st;
                vw = sample_case4(gp, ctx, opts.seed, opts.max_resamples, &st);
                attempts = st.attempts;
                break;
            }
        }
        route = case_name(cid);
    } else {
        // The degree threshold classifies nearly every vertex as heavy, so the
        // split offers no room to sample. Treat the whole graph as ordinary
        // and sample every vertex; the guard check keeps this sound.
        diag["primary_skipped"] = "threshold out of range for this size";
        LargeGraphContext flat = split_large_degree(
            gp, (static_cast<double>(degree_stats(gp).max_degree) + 1.0) / gp.m());
        SampleStats st;
        vw = sample_case4(gp, flat, opts.seed, opts.max_resamples, &st);
        attempts = st.attempts;
        route = "case4_fallback";
    }
    diag["route"] = route;
    diag["attempts"] = attempts;

    const TotalWeighting padded_tw = vertex_to_total(gp, vw);
    TotalWeighting tw = restrict_to(g, padded_tw);
    if (!verify_total_irregular(g, tw).ok)
        throw std::logic_error("construct_auto: restricted weighting failed verification");
    if (tw.t != s + 1)
        throw std::logic_error("construct_auto: unexpected strength");

    AutoResult res;
    res.weighting = std::move(tw);
    res.strength = s + 1;
    res.route = route;
    res.attempts = attempts;
    res.diagnostics = diag.dump();
    return res;
}

} // namespace tes
