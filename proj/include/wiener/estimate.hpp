#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wiener/path_sets.hpp"
#include "wiener/rng.hpp"

namespace wiener {

// One Monte Carlo estimate of a set probability with its uncertainty.
struct EstimateResult {
    int level = 0;
    std::uint64_t samples = 0;
    std::uint64_t hits = 0;
    double p_hat = 0.0;
    double std_error = 0.0;
    double ci_low = 0.0;  // Wilson, 99%
    double ci_high = 0.0;
    SeedSpec seed;
};

struct WilsonInterval {
    double low;
    double high;
};

// Wilson score interval at 99% (z = Phi^{-1}(0.995)).
WilsonInterval wilson99(std::uint64_t hits, std::uint64_t samples);

EstimateResult make_estimate(int level, std::uint64_t hits, std::uint64_t samples,
                             SeedSpec seed);

double combined_se(std::span<const double> errors);

// A catalog predicate evaluated on the restriction of a fine path to a
// coarser dyadic level.
struct LevelPredicate {
    int level;
    const PathSetSpec* spec;
};

// The engine core: samples `samples` paths at `fine_level` on [0, horizon]
// (increment law nu_{fine_level}) and evaluates every predicate on the same
// paths (common random numbers). Returns exact integer hit counts.
//
// Work is split into fixed-size chunks, one RNG stream per chunk; counts
// combine by integer addition, so results do not depend on worker count.
std::vector<std::uint64_t> mc_counts(double horizon, int fine_level,
                                     std::span<const LevelPredicate> predicates,
                                     std::uint64_t samples, SeedSpec seed,
                                     int workers = 0);

// Same engine over unit-interval grids on [0, r_max] with 2^(level_per_unit)
// increments per unit; predicates see the path truncated to [0, horizon_r].
struct HorizonPredicate {
    int horizon_r;
    const PathSetSpec* spec;
};

std::vector<std::uint64_t> mc_counts_long(int r_max, int level_per_unit,
                                          std::span<const HorizonPredicate> predicates,
                                          std::uint64_t samples, SeedSpec seed,
                                          int workers = 0);

} // namespace wiener
