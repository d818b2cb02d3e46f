#include "wiener/gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace wiener {

NormalLaw::NormalLaw(double var) : variance(var) {
    if (!(var > 0.0)) throw std::invalid_argument("variance must be positive");
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.7071067811865475244); // 1/sqrt(2)
}

double normal_abs_cdf(double x) {
    if (x < 0.0) throw std::invalid_argument("normal_abs_cdf needs x >= 0");
    return std::erf(x * 0.7071067811865475244);
}

double abs_moment(double p) {
    if (!(p > 0.0)) throw std::invalid_argument("abs_moment needs p > 0");
    // 2^{p/2} Gamma((p+1)/2) / sqrt(pi)
    static const double log_sqrt_pi = 0.5 * std::log(std::acos(-1.0));
    return std::exp(0.5 * p * std::log(2.0) + std::lgamma(0.5 * (p + 1.0)) - log_sqrt_pi);
}

double chebyshev_tail(double x, double p) {
    if (!(x > 0.0)) throw std::invalid_argument("chebyshev_tail needs x > 0");
    const double bound = abs_moment(p) / std::pow(x, p);
    return bound < 1.0 ? bound : 1.0;
}

IncrementVector sample_increments(const DyadicGrid& grid, SeedSpec seed) {
    NormalSampler sampler(seed);
    const double scale = std::sqrt(grid.spacing());
    std::vector<double> incs(grid.count());
    for (auto& v : incs) v = scale * sampler.next();
    return IncrementVector(grid, std::move(incs));
}

} // namespace wiener
