#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wiener/estimate.hpp"
#include "wiener/path_sets.hpp"

namespace wiener {

// Pass/fail tolerance used throughout: discrepancies are measured in
// combined standard errors and pass at <= 3.
inline constexpr double kSigmaTolerance = 3.0;

// Per-level sequence of estimates tracking the decreasing sequence that
// defines phi. phi_hat is the last-level estimate (reported with a trend
// slope, not as a claimed limit).
struct MeasureSequence {
    std::vector<EstimateResult> estimates;
    bool common_samples = true;
    bool exact_nonincreasing = false;   // meaningful under common samples
    bool consistent_decreasing = false; // every increase within 3 combined SE
    double phi_hat = 0.0;
    double trend_slope = 0.0; // least-squares slope of p_hat against level
};

// Monte Carlo estimate of nu_n(p_n K) = alpha_n(p_n^{-1} p_n K).
EstimateResult estimate(const PathSetSpec& spec, const DyadicGrid& grid,
                        std::uint64_t samples, SeedSpec seed, int workers = 0);

// The sequence over levels n_lo..n_hi. With common random numbers one
// fine path per replicate is restricted to every level, which makes the
// monotonicity of Theorem-1.1 type an exact indicator-algebra fact for
// the catalog sets; without, levels are sampled independently.
MeasureSequence sequence_phi(const PathSetSpec& spec, double horizon, int n_lo,
                             int n_hi, std::uint64_t samples, SeedSpec seed,
                             bool common_random_numbers = true, int workers = 0);

// The printed sup-ball bound chain: Chebyshev pre-limit value
// (1 - a/(m^2 2^n))^{2^n} (clamped at 0), its limit e^{-a/m^2}, and the
// exact per-increment product (P(|xi| <= 2^{n/2} m / sqrt(a)))^{2^n}.
struct SupBallBound {
    double a = 0.0;
    double m = 0.0;
    int level = 0;
    double chebyshev_prelimit = 0.0;
    double limit = 0.0;
    double exact_increment_product = 0.0;
};

SupBallBound supball_paper_bound(double a, double m, int n);

// psi(lambda) = a E|xi|^{2/(1-2 alpha)} / lambda^{2/(1-2 alpha)}.
double psi(double alpha, double a, double lambda);

// Hoelder-ball bound chain: pre-limit [1 - psi/2^n]^{2^n}, limit
// e^{-psi(lambda)}, and the exact probability of the adjacent-increment
// event A_n, (P(|xi| <= lambda 2^{n(1-2a)/2} / a^{(1-2a)/2}))^{2^n}.
struct HolderBound {
    double alpha = 0.0;
    double a = 0.0;
    double lambda = 0.0;
    int level = 0;
    double psi_value = 0.0;
    double prelimit = 0.0;
    double limit = 0.0;
    double exact_increment_product = 0.0;
};

HolderBound holder_lower_bound(double alpha, double a, double lambda, int n);

// Shared report shape for the theorem checks. Discrepancies are in
// combined-SE units; under shared samples the identities are exact and
// `exact_identity` is set.
struct CheckReport {
    std::string name;
    bool pass = false;
    bool exact_identity = false;
    double discrepancy = 0.0;
    double discrepancy_se_units = 0.0;
    std::vector<EstimateResult> estimates;
    std::string detail;
};

// |p(A u B) - p(A) - p(B)| for sets with certified positive separation
// (or a provably empty side). Exact under shared samples.
CheckReport additivity_check(const PathSetSpec& a_spec, const PathSetSpec& b_spec,
                             double horizon, int n, std::uint64_t samples,
                             SeedSpec seed, bool common_random_numbers = true,
                             int workers = 0);

// Annulus SupBall(m2) \ SupBall(m1) against the difference of the two
// ball estimates (Theorem 1.3 with phi(boundary) = 0).
CheckReport difference_check(double m1, double m2, double horizon, int n,
                             std::uint64_t samples, SeedSpec seed,
                             bool common_random_numbers = true, int workers = 0);

// Nested SupBall family radii -> limit radius (Theorem 1.4, both
// directions). Radii must approach the limit monotonically.
struct MonotoneFamilyReport {
    CheckReport check;
    std::vector<double> radii;
    bool decreasing_family = true;
};

MonotoneFamilyReport monotone_limit_check(const std::vector<double>& radii,
                                          double limit_radius, double horizon, int n,
                                          std::uint64_t samples, SeedSpec seed,
                                          bool common_random_numbers = true,
                                          int workers = 0);

// Finite partition of SupBall(M) into annuli 0 = m_0 < ... < m_J = M;
// compares the sum of annulus estimates with the ball estimate.
CheckReport countable_additivity_check(const std::vector<double>& radii,
                                       double horizon, int n, std::uint64_t samples,
                                       SeedSpec seed,
                                       bool common_random_numbers = true,
                                       int workers = 0);

} // namespace wiener
