#include "wiener/oracles.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "wiener/gaussian.hpp"

namespace wiener {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

constexpr double kPi = 3.141592653589793238462643383279502884;

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on the
// Legendre recurrence.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int mid = (n + 1) / 2;
    for (int i = 0; i < mid; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

} // namespace

SeriesValue reflection_supball(double a, double m, int terms) {
    if (!(m > 0.0)) fail("reflection series needs m > 0");
    if (!(a > 0.0)) fail("reflection series needs a > 0");
    if (terms < 1) fail("reflection series needs terms >= 1");

    const double c = kPi * kPi * a / (8.0 * m * m);
    SeriesValue out;
    out.terms = terms;
    double sum = 0.0;
    for (int j = 0; j < terms; ++j) {
        const double k = 2.0 * j + 1.0;
        const double term = ((j % 2 == 0) ? 1.0 : -1.0) / k * std::exp(-k * k * c);
        sum += term;
    }
    out.value = (4.0 / kPi) * sum;
    // alternating series with decreasing magnitudes: error within the
    // first omitted term
    const double k = 2.0 * terms + 1.0;
    out.error_bound = (4.0 / kPi) / k * std::exp(-k * k * c);
    return out;
}

double quadrature_orthant(const SupBall& ball, const DyadicGrid& grid) {
    if (grid.level > 2) fail("quadrature oracle supports levels 1 and 2 only");
    const double m = ball.radius;
    const double a = grid.horizon;
    if (!(m > 0.0)) return 0.0;

    // beyond ~8 total standard deviations the barrier is inactive
    if (m >= 8.0 * std::sqrt(a)) return 1.0;

    const int n_nodes = 320;
    std::vector<double> x, w;
    gauss_legendre(n_nodes, x, w);
    const double L = m;
    for (int i = 0; i < n_nodes; ++i) {
        x[i] *= L;
        w[i] *= L;
    }

    const double sigma = std::sqrt(grid.spacing());
    const double inv = 1.0 / sigma;
    const double norm = inv / std::sqrt(2.0 * kPi);
    auto kernel = [&](double from, double to) {
        const double z = (to - from) * inv;
        return norm * std::exp(-0.5 * z * z);
    };

    // V_k(y) = P(next k grid values stay inside | current value y)
    std::vector<double> v(n_nodes, 1.0), next(n_nodes);
    const std::size_t steps = grid.count();
    for (std::size_t s = 1; s < steps; ++s) {
        for (int i = 0; i < n_nodes; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n_nodes; ++j) acc += w[j] * kernel(x[i], x[j]) * v[j];
            next[i] = acc;
        }
        v.swap(next);
    }
    double p = 0.0;
    for (int j = 0; j < n_nodes; ++j) p += w[j] * kernel(0.0, x[j]) * v[j];
    return p;
}

RandomWalkEstimate random_walk_supball(double a, double m, std::uint64_t steps,
                                       std::uint64_t samples, SeedSpec seed,
                                       int workers) {
    if (!(m > 0.0)) fail("random walk oracle needs m > 0");
    if (steps < 2) fail("random walk oracle needs steps >= 2");
    if (samples == 0) fail("random walk oracle needs samples > 0");

    const double scale = std::sqrt(a / static_cast<double>(steps));
    const std::uint64_t chunk_size = 1024;
    const std::uint64_t n_chunks = (samples + chunk_size - 1) / chunk_size;

    int n_workers = workers > 0 ? workers
                                : std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::uint64_t> next_chunk{0};
    std::vector<std::uint64_t> partial(static_cast<std::size_t>(n_workers), 0);

    auto work = [&](int wi) {
        std::uint64_t local = 0;
        for (;;) {
            const std::uint64_t c = next_chunk.fetch_add(1);
            if (c >= n_chunks) break;
            const std::uint64_t lo = c * chunk_size;
            const std::uint64_t hi = std::min(lo + chunk_size, samples);
            NormalSampler sampler(seed, c);
            for (std::uint64_t i = lo; i < hi; ++i) {
                double sum = 0.0;
                bool inside = true;
                for (std::uint64_t k = 0; k < steps; ++k) {
                    sum += scale * sampler.next();
                    if (std::fabs(sum) > m) {
                        inside = false;
                        break;
                    }
                }
                local += inside ? 1u : 0u;
            }
        }
        partial[static_cast<std::size_t>(wi)] = local;
    };

    if (n_workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int wi = 0; wi < n_workers; ++wi) pool.emplace_back(work, wi);
        for (auto& t : pool) t.join();
    }

    std::uint64_t hits = 0;
    for (auto h : partial) hits += h;

    RandomWalkEstimate out;
    out.steps = steps;
    out.samples = samples;
    out.seed = seed;
    out.p_hat = static_cast<double>(hits) / static_cast<double>(samples);
    out.std_error =
        std::sqrt(out.p_hat * (1.0 - out.p_hat) / static_cast<double>(samples));
    return out;
}

} // namespace wiener
