#pragma once

#include <cstdint>
#include <vector>

#include "wiener/measure.hpp"
#include "wiener/path_sets.hpp"
#include "wiener/rng.hpp"

namespace wiener {

// A continuous path on [0, R] known through per-unit dyadic grids with a
// common level: values at k / 2^(level_per_unit), k = 1..R*2^(level_per_unit);
// x(0) = 0 implicit.
struct LongPath {
    int horizon;        // R, positive integer
    int level_per_unit; // dyadic level within each unit interval
    std::vector<double> values;

    LongPath(int R, int npu, std::vector<double> vals);

    std::size_t points_per_unit() const { return std::size_t{1} << level_per_unit; }
    double spacing() const { return 1.0 / static_cast<double>(points_per_unit()); }
};

// Brownian sample on [0, R]: i.i.d. N(0, 2^-npu) increments.
LongPath sample_long_path(int horizon, int npu, SeedSpec seed);

// One evaluated metric: a truncated series value in [0, 1]; the untruncated
// series exceeds it by at most tail_bound = 2^-depth.
struct MetricValue {
    double value = 0.0;
    int depth = 0;
    double tail_bound = 0.0;
};

// d(f,g) = sum_{n=1}^depth 2^-n s_n/(1+s_n), s_n = sup over grid points of
// |f-g| on [0, n].
MetricValue metric_d(const LongPath& f, const LongPath& g, int depth);

// The C_r metric: the same series truncated at r (monotone nondecreasing
// in r; equals metric_d at depth r).
MetricValue metric_d_r(const LongPath& f, const LongPath& g, int r);

// Grid evaluations of the weighted Hoelder metrics. Per window [0, n] and
// pair set {grid s < t, 0 < t - s < 1}:
//   d_alpha       uses sup |u(t) - u(s)| / (t-s)^alpha,   u = x - y
//   d_alpha_star  uses sup max(|u(t)|, |u(s)|) / (t-s)^alpha
// Two orderings hold identically on every call and are asserted here:
// d <= d_alpha_star and d_alpha <= 2 d_alpha_star. The source's third
// ordering (d_alpha_star <= d_alpha) fails for generic paths and is
// reported by the diagnostics rather than asserted (see README).
struct HolderMetricPair {
    MetricValue d_alpha;
    MetricValue d_alpha_star;
    bool star_below_alpha = false; // whether d_alpha_star <= d_alpha held
};

HolderMetricPair holder_metrics(const LongPath& x, const LongPath& y, double alpha,
                                int depth);

// Q_r: restriction to [0, r]. truncate(truncate(f, r+1), r) == truncate(f, r).
LongPath truncate(const LongPath& f, int r);

// The section-3 sequence mu_r(Q_r K) for a Hoelder ball K on [0, inf),
// estimated per horizon r with one path sample shared across horizons
// (exact monotone counts), plus the printed lower bound e^{-r/lambda^2}
// checked at r = floor(lambda) when that horizon is in range.
struct MuInftyReport {
    MeasureSequence sequence; // estimate.level carries the horizon r
    double alpha = 0.0;
    double lambda = 0.0;
    double window = 1.0;
    int level_per_unit = 0;
    bool bound_checked = false;
    int bound_r = 0;
    double bound_value = 0.0;      // e^{-r/lambda^2}
    double bound_value_weak = 0.0; // e^{-1/lambda}
    bool bound_pass = false;
};

MuInftyReport mu_sequence_infty(const HolderBall& ball, int r_lo, int r_hi, int npu,
                                std::uint64_t samples, SeedSpec seed,
                                bool common_random_numbers = true, int workers = 0);

} // namespace wiener
