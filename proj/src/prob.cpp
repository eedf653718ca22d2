#include "tes/prob.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tes/errors.hpp"
#include "tes/rng.hpp"

namespace tes {

WeightDistribution weight_distribution(double e0, double es) {
    if (!(e0 >= 0.0) || !(es >= 0.0))
        throw std::invalid_argument("weight_distribution: e0 and eS must be nonnegative");
    if (30.0 * std::max(e0, es) > 19.0)
        throw std::invalid_argument("weight_distribution: 30*max(e0,eS) exceeds 19 (negative mass)");
    WeightDistribution d;
    d.e0 = e0;
    d.es = es;
    d.beta = 57.0 - 30.0 * (e0 + es);
    d.p[0] = (19.0 - 30.0 * e0) / d.beta;
    for (int i = 1; i < 20; ++i) d.p[i] = 1.0 / d.beta;
    d.p[20] = (19.0 - 30.0 * es) / d.beta;
    return d;
}

double edge_pmf(const WeightDistribution& dist, int i) {
    if (i < 0 || i > 19) throw std::invalid_argument("edge_pmf: index must be in 0..19");
    double sum = 0.0;
    for (int k = 0; k <= i; ++k) sum += dist.p[k] * dist.p[i - k];
    return sum;
}

double expected_fraction(double e0, double es, int i) {
    if (i < 0 || i > 19) throw std::invalid_argument("expected_fraction: index must be in 0..19");
    const double beta = 57.0 - 30.0 * (e0 + es);
    if (!(beta > 0.0))
        throw std::invalid_argument("expected_fraction: beta = 57-30(e0+eS) must be positive");
    const double p0 = (19.0 - 30.0 * e0) / beta;
    const double p1 = 1.0 / beta;
    const double di = static_cast<double>(i);
    return e0 * (p0 + di * p1) +
           (1.0 - e0 - es) * (p0 * p0 + 2.0 * di * p0 * p1 + (di * di - di) / 2.0 * p1 * p1);
}

// --- critical curves --------------------------------------------------------

CriticalCurves critical_curves(int i) {
    if (i < 0 || i > 19) throw std::invalid_argument("critical_curves: index must be in 0..19");
    const double x = static_cast<double>(i);
    CriticalCurves c;
    c.i = i;
    // p0's quadratic term is negative: stationarity of expected_fraction in
    // e0 requires it, and only then does 100*p0 + 10*p1 + p2 == 0 hold (both
    // curves vanish at eS = 0.1).
    c.poly[0] = 1444.0 + 39.0 * x - x * x;
    c.poly[1] = 10.0 * (-1558.0 - 45.0 * x + x * x);
    c.poly[2] = 600.0 * (19.0 + x);
    c.poly[3] = 10.0 * (2660.0 - 147.0 * x + x * x);
    c.poly[4] = 600.0 * (-35.0 + x);
    c.poly[5] = 10.0 * (1216.0 + 27.0 * x - x * x);
    c.poly[6] = 600.0 * (19.0 + x);
    c.poly[7] = 100.0 * (2085136.0 + 111336.0 * x - 2663.0 * x * x - 78.0 * x * x * x +
                         x * x * x * x);
    c.poly[8] = 12000.0 * (-27436.0 - 2077.0 * x + 88.0 * x * x + x * x * x);
    c.poly[9] = 360000.0 * (361.0 + 38.0 * x + x * x);
    c.poly[10] = 1200.0 * (35.0 - x);
    return c;
}

double CriticalCurves::f1(double es) const {
    const double den = poly[3] + poly[4] * es;
    if (den == 0.0)
        throw construction_error("curve_pole", "f1: zero denominator at eS=" + std::to_string(es));
    return -(poly[0] + poly[1] * es + poly[2] * es * es) / den;
}

double CriticalCurves::f2(double es) const {
    const double rad = poly[7] + poly[8] * es + poly[9] * es * es;
    if (rad < 0.0)
        throw construction_error("curve_radicand",
                                 "f2: negative radicand at eS=" + std::to_string(es));
    if (poly[10] == 0.0)
        throw construction_error("curve_pole", "f2: zero denominator");
    return (poly[5] + poly[6] * es - std::sqrt(rad)) / poly[10];
}

double estar(int i) {
    const double x = static_cast<double>(i);
    return (-361.0 + 18.0 * x + x * x) / (20.0 * (152.0 - 36.0 * x + x * x));
}

double ebar(int i) {
    return (361.0 + 19.0 * static_cast<double>(i)) / 1350.0;
}

// --- slack table -------------------------------------------------------------

SlackTable slack_table() {
    SlackTable t;
    for (int i = 0; i < 20; ++i) {
        const double lo = (i + 1) / (60.0 * 0.99);
        const double es = estar(i);
        const double eb = ebar(i);
        const std::pair<double, double> pts[5] = {
            {0.0, 0.52}, {0.0, 0.0}, {es, es}, {0.43, 0.43}, {0.52, 0.0}};
        for (int j = 0; j < 5; ++j)
            t.rows[i][j] = expected_fraction(pts[j].first, pts[j].second, i) - lo;
        t.rows[i][5] = (i + 20) / 60.0 - expected_fraction(eb, 0.86 - eb, i);
    }
    return t;
}

const SlackTable& reference_slack_table() {
    static const SlackTable t = [] {
        SlackTable r;
        const double vals[20][6] = {
            {0.0842642, 0.0942761, 0.0945847, 0.0725870, 0.0291077, 0.221914},
            {0.0780712, 0.0891370, 0.0894879, 0.0712887, 0.0267374, 0.226687},
            {0.0721583, 0.0843057, 0.0847193, 0.0701341, 0.0246472, 0.230987},
            {0.0665254, 0.0797821, 0.0803057, 0.0691234, 0.0228371, 0.234814},
            {0.0611725, 0.0755664, 0.0763530, 0.0682565, 0.0213070, 0.238167},
            {0.0560997, 0.0716584, 0.0741222, 0.0675334, 0.0200569, 0.241046},
            {0.0513070, 0.0680582, 0.0669080, 0.0669542, 0.0190869, 0.243452},
            {0.0467943, 0.0647658, 0.0644259, 0.0665187, 0.0183969, 0.245385},
            {0.0425617, 0.0617812, 0.0616330, 0.0662271, 0.0179871, 0.246844},
            {0.0386092, 0.0591044, 0.0590379, 0.0660793, 0.0178572, 0.247830},
            {0.0349366, 0.0567354, 0.0567098, 0.0660753, 0.0180074, 0.248342},
            {0.0315442, 0.0546742, 0.0546683, 0.0662151, 0.0184377, 0.248381},
            {0.0284318, 0.0529207, 0.0529207, 0.0664988, 0.0191480, 0.247946},
            {0.0255994, 0.0514750, 0.0514703, 0.0669263, 0.0201384, 0.247038},
            {0.0230471, 0.0503372, 0.0503181, 0.0674976, 0.0214088, 0.245657},
            {0.0207749, 0.0495071, 0.0494643, 0.0682127, 0.0229593, 0.243802},
            {0.0187827, 0.0489848, 0.0489084, 0.0690716, 0.0247898, 0.241473},
            {0.0170705, 0.0487703, 0.0486493, 0.0700744, 0.0269004, 0.238671},
            {0.0156384, 0.0488635, 0.0486852, 0.0712209, 0.0292910, 0.235396},
            {0.0144864, 0.0492646, 0.0490139, 0.0725113, 0.0319617, 0.231647},
        };
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 6; ++j) r.rows[i][j] = vals[i][j];
        return r;
    }();
    return t;
}

// --- delta tables ------------------------------------------------------------

DeltaTables delta_tables(DeltaMode mode) {
    DeltaTables t;
    t.mode = mode;
    if (mode == DeltaMode::main_eps) {
        t.eps = 2.7e-5;
        const int d[20] = {29, 26, 24, 22, 21, 20, 19, 18, 17, 17,
                           18, 18, 19, 20, 21, 22, 24, 26, 29, 31};
        const int dh[20] = {72, 71, 70, 66, 61, 56, 51, 46, 42, 38,
                            34, 31, 28, 25, 23, 20, 18, 17, 15, 14};
        for (int i = 0; i < 20; ++i) {
            t.delta[i] = d[i] / 1000.0;
            t.delta_hat[i] = dh[i] / 1000.0;
        }
    } else {
        t.eps = 2.3e-4;
        const int d[20] = {94, 89, 84, 80, 76, 72, 69, 66, 63, 60,
                           58, 56, 55, 53, 52, 52, 51, 51, 52, 52};
        for (int i = 0; i < 20; ++i) {
            t.delta[i] = d[i] / 1000.0;
            t.delta_hat[i] = d[i] / 1000.0;
        }
    }
    return t;
}

std::array<double, 40> DeltaTables::full_delta() const {
    std::array<double, 40> out{};
    for (int i = 0; i < 20; ++i) out[i] = delta[i];
    // Thresholds 20..39 take the role-swapped values: delta_j = delta_hat_{39-j}.
    for (int j = 20; j < 40; ++j) out[j] = delta_hat[39 - j];
    return out;
}

std::array<double, 40> DeltaTables::full_delta_hat() const {
    std::array<double, 40> out{};
    for (int i = 0; i < 20; ++i) out[i] = delta_hat[i];
    for (int j = 20; j < 40; ++j) out[j] = delta[39 - j];
    return out;
}

DeltaValidation validate_delta_tables(const DeltaTables& tables) {
    DeltaValidation v;
    const bool small = tables.mode == DeltaMode::small_degree;
    for (int i = 0; i < 20; ++i) {
        double mind, mindh;
        if (small) {
            // B is empty in this regime, so the only evaluation point is
            // e0 = eS = 0, and m' = m removes the 0.99 correction.
            mind = mindh = expected_fraction(0.0, 0.0, i) - (i + 1) / 60.0;
        } else {
            const double lo = (i + 1) / (60.0 * 0.99);
            const double es = estar(i);
            mind = std::min({expected_fraction(0.0, 0.0, i), expected_fraction(0.43, 0.43, i),
                             expected_fraction(0.52, 0.0, i)}) -
                   lo;
            mindh = std::min({expected_fraction(0.0, 0.0, i), expected_fraction(0.43, 0.43, i),
                              expected_fraction(0.0, 0.52, i)}) -
                    lo;
            if (es >= 0.0 && es <= 0.43) {
                const double ye = expected_fraction(es, es, i) - lo;
                mind = std::min(mind, ye);
                mindh = std::min(mindh, ye);
            }
        }
        v.min_slack_delta[i] = mind;
        v.min_slack_delta_hat[i] = mindh;
        const double fl = std::floor(mind * 1000.0) / 1000.0;
        const double flh = std::floor(mindh * 1000.0) / 1000.0;
        if (std::abs(fl - tables.delta[i]) > 1e-12 || std::abs(flh - tables.delta_hat[i]) > 1e-12)
            v.floor_mismatches.push_back(i);
    }
    v.ok = true;
    for (int i = 0; i < 20; ++i)
        if (tables.delta[i] > v.min_slack_delta[i] || tables.delta_hat[i] > v.min_slack_delta_hat[i])
            v.ok = false;

    const auto fd = tables.full_delta();
    const auto fdh = tables.full_delta_hat();
    v.symmetry_ok = true;
    for (int j = 0; j < 40; ++j)
        if (fd[j] != fdh[39 - j]) v.symmetry_ok = false;

    // Fixed 0.2 margin row: the sixth slack column must clear 0.2 everywhere.
    v.margin_row_ok = true;
    const SlackTable st = slack_table();
    for (int i = 0; i < 20; ++i)
        if (st.rows[i][5] < 0.2) v.margin_row_ok = false;
    return v;
}

double azuma_failure_bound(double eps, const DeltaTables& tables) {
    if (!(eps > 0.0)) throw std::invalid_argument("azuma_failure_bound: eps must be positive");
    double total = 40.0 * std::exp(-0.0099 / eps);
    for (int i = 0; i < 20; ++i) {
        total += std::exp(-0.99 * tables.delta[i] * tables.delta[i] / (4.0 * eps));
        total += std::exp(-0.99 * tables.delta_hat[i] * tables.delta_hat[i] / (4.0 * eps));
    }
    return total;
}

// --- sampler -----------------------------------------------------------------

VertexWeighting sample_case4(const Graph& g, const LargeGraphContext& ctx, std::uint64_t seed,
                             int max_resamples, SampleStats* stats) {
    if (g.m() % 3 != 1)
        throw std::invalid_argument("sample_case4: edge count must be 1 mod 3");
    if (dispatch_case(ctx) != CaseId::case4)
        throw std::invalid_argument("sample_case4: context does not select the sampling route");
    if (std::max(ctx.e0_raw, ctx.es_raw) > 0.52)
        throw std::invalid_argument("sample_case4: max(e0,eS) exceeds 0.52");
    if (max_resamples < 1)
        throw std::invalid_argument("sample_case4: max_resamples must be at least 1");

    const int s = (g.m() - 1) / 3;
    const WeightDistribution dist = weight_distribution(ctx.e0_raw, ctx.es_raw);
    const std::vector<double> probs(dist.p.begin(), dist.p.end());

    // Integer support: round(s*i/20) with ties rounded up.
    std::array<int, 21> support{};
    for (int i = 0; i <= 20; ++i)
        support[i] = static_cast<int>((2LL * s * i + 20LL) / 40LL);

    std::vector<char> in_b(g.n(), 0);
    for (int v : ctx.b0_raw) in_b[v] = 1;
    for (int v : ctx.bs_raw) in_b[v] = 1;
    std::vector<int> eprime;
    eprime.reserve(g.m());
    for (int e = 0; e < g.m(); ++e) {
        const auto& [u, w] = g.edges()[e];
        if (!(in_b[u] && in_b[w])) eprime.push_back(e);
    }

    VertexWeighting vw;
    vw.s = s;
    vw.values.assign(g.n(), 0);
    for (int v : ctx.bs_raw) vw.values[v] = s;

    for (int attempt = 1; attempt <= max_resamples; ++attempt) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(attempt)));
        for (int v : ctx.vprime) vw.values[v] = support[rng.pick(probs)];
        if (is_guarding_set(g, vw, eprime).ok) {
            if (stats) stats->attempts = attempt;
            return vw;
        }
    }
    if (stats) stats->attempts = max_resamples;
    throw construction_error("resamples_exhausted",
                             "sample_case4: no accepted draw after " +
                                 std::to_string(max_resamples) + " attempts (seed " +
                                 std::to_string(seed) + ")");
}

} // namespace tes
