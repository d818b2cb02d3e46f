#pragma once

#include "wiener/dyadic.hpp"
#include "wiener/rng.hpp"

namespace wiener {

// Law of one dyadic increment: N(0, a/2^n).
struct NormalLaw {
    double variance;
    explicit NormalLaw(double var);
};

// Standard normal CDF via erfc; absolute error well below 1e-15.
double normal_cdf(double x);

// P(|xi| <= x) for standard normal xi, x >= 0.
double normal_abs_cdf(double x);

// E|xi|^p = 2^{p/2} Gamma((p+1)/2) / sqrt(pi), p > 0.
double abs_moment(double p);

// Chebyshev/Markov bound min(1, E|xi|^p / x^p) on P(|xi| > x).
double chebyshev_tail(double x, double p);

// 2^n i.i.d. draws, each N(0, a/2^n); deterministic given the seed.
IncrementVector sample_increments(const DyadicGrid& grid, SeedSpec seed);

} // namespace wiener
