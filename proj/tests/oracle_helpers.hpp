#pragma once

// Test-side ground truth, kept independent of the library implementation:
// adaptive Simpson quadrature, brute-force pair enumeration, and a
// Kolmogorov-Smirnov statistic.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

inline double simpson(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                                   double b, double whole, double tol, int depth) {
    const double c = 0.5 * (a + b);
    const double left = simpson(f, a, c);
    const double right = simpson(f, c, b);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, c, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, c, b, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-13) {
    return adaptive_simpson_rec(f, a, b, simpson(f, a, b), tol, 48);
}

inline double normal_density(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::acos(-1.0));
}

// Phi(x) by quadrature of the density from 0 (plus symmetry), no erf.
inline double cdf_by_quadrature(double x) {
    const double ax = std::min(std::fabs(x), 40.0);
    const double half = integrate([](double t) { return normal_density(t); }, 0.0, ax);
    return x >= 0.0 ? 0.5 + half : 0.5 - half;
}

// E|xi|^p by quadrature.
inline double abs_moment_by_quadrature(double p) {
    return 2.0 * integrate(
                     [p](double t) { return std::pow(t, p) * normal_density(t); }, 0.0,
                     48.0, 1e-14);
}

// Discrete Hoelder seminorm by exhaustive pair enumeration over values
// (values[0] = x(0) = 0), pairs with 0 < gap*spacing < window.
inline double brute_force_seminorm(const std::vector<double>& values, double spacing,
                                   double alpha, double window) {
    double best = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            const double gap = static_cast<double>(j - i) * spacing;
            if (!(gap > 0.0 && gap < window)) continue;
            best = std::max(best,
                            std::fabs(values[j] - values[i]) / std::pow(gap, alpha));
        }
    }
    return best;
}

// Kolmogorov-Smirnov distance sqrt(n) * D_n against a reference CDF.
inline double ks_statistic(std::vector<double> sample,
                           const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
    }
    return std::sqrt(n) * d;
}

} // namespace oracle
