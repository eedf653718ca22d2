#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tes/graph.hpp"
#include "tes/pipeline.hpp"
#include "tes/weighting.hpp"

namespace tes {

// Vertex-weight distribution for the sampling construction: 21 support
// points indexed 0..20 (vertex weight = round(s*i/20)), with
//   P_0 = (19-30*e0)/beta, P_i = 1/beta for 0<i<20, P_20 = (19-30*eS)/beta,
//   beta = 57 - 30*(e0+eS).
struct WeightDistribution {
    double e0 = 0.0;
    double es = 0.0;
    double beta = 0.0;
    std::array<double, 21> p{};
};

// Requires 0 <= e0, eS and 30*max(e0,eS) <= 19 (else some P_i < 0).
WeightDistribution weight_distribution(double e0, double es);

// Probability that an edge between two independently weighted vertices gets
// weight index i (0 <= i <= 19), computed as the literal convolution
// sum_k P_k * P_{i-k}. The closed forms P_0^2 and 2*P_0*P_i + (i-1)*P_i^2
// must agree; tests hold the implementation to that.
double edge_pmf(const WeightDistribution& dist, int i);

// (1/m') * E[#edges with weight index <= i] as a function of (e0, eS):
//   e0*(P0 + i*P1) + (1-e0-eS)*(P0^2 + 2i*P0*P1 + (i^2-i)/2 * P1^2).
// Defined wherever beta > 0; e0/eS may be negative (the critical curves
// evaluate slightly outside the feasible square).
double expected_fraction(double e0, double es, int i);

// Stationary-point curves of expected_fraction in the (e0, eS) square,
// expressed through eleven integer-coefficient polynomials in i:
//   f1(eS) = -(p0 + p1*eS + p2*eS^2) / (p3 + p4*eS)      (d/d e0 = 0)
//   f2(eS) = (p5 + p6*eS - sqrt(p7 + p8*eS + p9*eS^2)) / p10  (d/d eS = 0)
struct CriticalCurves {
    int i = 0;
    std::array<double, 11> poly{};  // p0..p10 evaluated at i
    double f1(double es) const;     // throws construction_error on zero denominator
    double f2(double es) const;     // throws construction_error on negative radicand
};
CriticalCurves critical_curves(int i);

double estar(int i);  // (-361 + 18i + i^2) / (20*(152 - 36i + i^2))
double ebar(int i);   // (361 + 19i) / 1350

// Slack table: rows i = 0..19; columns are evaluation points
//   (0,0.52), (0,0), (e*,e*), (0.43,0.43), (0.52,0), (ebar, 0.86-ebar).
// The first five columns hold Y_i - (i+1)/(60*0.99); the sixth holds
// (i+20)/60 - Y_i.
struct SlackTable {
    std::array<std::array<double, 6>, 20> rows{};
};
SlackTable slack_table();                   // recomputed from expected_fraction
const SlackTable& reference_slack_table();  // published reference values

// Margin tables for the two epsilon regimes. The printed 20-entry tables are
// ground truth; the combined-index views extend them to thresholds 0..39 via
// the role-swap symmetry delta_i = delta_hat_{39-i}.
enum class DeltaMode { main_eps, small_degree };

struct DeltaTables {
    DeltaMode mode = DeltaMode::main_eps;
    double eps = 0.0;
    std::array<double, 20> delta{};
    std::array<double, 20> delta_hat{};
    std::array<double, 40> full_delta() const;
    std::array<double, 40> full_delta_hat() const;
};
DeltaTables delta_tables(DeltaMode mode);

// Checks each table entry against the recomputed minimum slack over the
// relevant extrema (e0 >= eS for delta, e0 <= eS for delta_hat; the
// small-degree mode compares against the slack at e0 = eS = 0 with lower
// bound (i+1)/60). Also verifies the combined-index symmetry and the fixed
// 0.2 margin row (sixth slack column >= 0.2). Entries where the apparent
// floor-to-3-decimals rounding disagrees are flagged, not failed.
struct DeltaValidation {
    bool ok = false;            // every delta/delta_hat <= its recomputed slack
    bool symmetry_ok = false;
    bool margin_row_ok = false;
    std::array<double, 20> min_slack_delta{};
    std::array<double, 20> min_slack_delta_hat{};
    std::vector<int> floor_mismatches;
};
DeltaValidation validate_delta_tables(const DeltaTables& tables);

// Failure probability bound of the sampling construction:
//   40*exp(-0.0099/eps) + sum_i [exp(-0.99*delta_i^2/(4 eps))
//                                + exp(-0.99*delta_hat_i^2/(4 eps))].
double azuma_failure_bound(double eps, const DeltaTables& tables);

// Las Vegas sampler: fixes weight 0 on B0 and s on BS (as the split
// produced them), draws every V' vertex weight from the distribution at the
// raw (e0, eS), and accepts the first draw whose weighting makes
// E' = E \ E(B) a guarding set (checked at every threshold). Deterministic
// given the seed. Throws construction_error("resamples_exhausted") with
// attempt statistics if max_resamples draws all fail.
struct SampleStats {
    int attempts = 0;
};
VertexWeighting sample_case4(const Graph& g, const LargeGraphContext& ctx,
                             std::uint64_t seed, int max_resamples,
                             SampleStats* stats = nullptr);

} // namespace tes
