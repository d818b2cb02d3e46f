#pragma once

#include <cstdint>

#include "wiener/dyadic.hpp"
#include "wiener/estimate.hpp"
#include "wiener/rng.hpp"

namespace wiener {

// Truncated alternating series with the first-omitted-term error bound.
struct SeriesValue {
    double value = 0.0;
    double error_bound = 0.0;
    int terms = 0;
};

// Classical reflection-principle series for P(sup_{[0,a]} |W| <= m):
// (4/pi) * sum_{j>=0} ((-1)^j / (2j+1)) exp(-(2j+1)^2 pi^2 a / (8 m^2)),
// truncated at `terms`.
SeriesValue reflection_supball(double a, double m, int terms);

// Exact probability that all 2^n grid values of the dyadic path stay in
// [-m, m] (the level-constraint region), for n in {1, 2}. Deterministic
// Gauss-Legendre transfer-operator evaluation; absolute error <= 1e-10.
double quadrature_orthant(const SupBall& ball, const DyadicGrid& grid);

// Donsker-style cross-check at finer-than-dyadic resolution: plain Monte
// Carlo with i.i.d. N(0, a/steps) increments.
struct RandomWalkEstimate {
    double p_hat = 0.0;
    double std_error = 0.0;
    std::uint64_t steps = 0;
    std::uint64_t samples = 0;
    SeedSpec seed;
};

RandomWalkEstimate random_walk_supball(double a, double m, std::uint64_t steps,
                                       std::uint64_t samples, SeedSpec seed,
                                       int workers = 0);

} // namespace wiener
