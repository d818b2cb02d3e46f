#include "wiener/estimate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace wiener {

namespace {

constexpr double kZ99 = 2.5758293035489004; // Phi^{-1}(0.995)
constexpr std::uint64_t kChunkSamples = 8192;

int resolve_workers(int workers) {
    if (workers > 0) return workers;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

} // namespace

WilsonInterval wilson99(std::uint64_t hits, std::uint64_t samples) {
    if (samples == 0) throw std::invalid_argument("wilson interval needs samples > 0");
    const double n = static_cast<double>(samples);
    const double p = static_cast<double>(hits) / n;
    const double z2 = kZ99 * kZ99;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half =
        kZ99 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return WilsonInterval{std::max(0.0, center - half), std::min(1.0, center + half)};
}

EstimateResult make_estimate(int level, std::uint64_t hits, std::uint64_t samples,
                             SeedSpec seed) {
    EstimateResult r;
    r.level = level;
    r.samples = samples;
    r.hits = hits;
    r.p_hat = static_cast<double>(hits) / static_cast<double>(samples);
    r.std_error = std::sqrt(r.p_hat * (1.0 - r.p_hat) / static_cast<double>(samples));
    const auto ci = wilson99(hits, samples);
    r.ci_low = ci.low;
    r.ci_high = ci.high;
    r.seed = seed;
    return r;
}

double combined_se(std::span<const double> errors) {
    double s = 0.0;
    for (double e : errors) s += e * e;
    return std::sqrt(s);
}

namespace {

// Runs `total` samples split into fixed chunks across workers. `body`
// consumes (chunk_index, count, local_counts) and must be deterministic
// per chunk.
template <typename Body>
std::vector<std::uint64_t> run_chunked(std::uint64_t total, std::size_t n_counters,
                                       int workers, Body&& body) {
    const std::uint64_t n_chunks = (total + kChunkSamples - 1) / kChunkSamples;
    std::atomic<std::uint64_t> next_chunk{0};
    std::vector<std::vector<std::uint64_t>> partial(
        static_cast<std::size_t>(workers), std::vector<std::uint64_t>(n_counters, 0));

    auto work = [&](int w) {
        auto& counts = partial[static_cast<std::size_t>(w)];
        for (;;) {
            const std::uint64_t c = next_chunk.fetch_add(1);
            if (c >= n_chunks) break;
            const std::uint64_t lo = c * kChunkSamples;
            const std::uint64_t hi = std::min(lo + kChunkSamples, total);
            body(c, hi - lo, counts);
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }

    std::vector<std::uint64_t> counts(n_counters, 0);
    for (const auto& part : partial)
        for (std::size_t i = 0; i < n_counters; ++i) counts[i] += part[i];
    return counts;
}

} // namespace

std::vector<std::uint64_t> mc_counts(double horizon, int fine_level,
                                     std::span<const LevelPredicate> predicates,
                                     std::uint64_t samples, SeedSpec seed,
                                     int workers) {
    if (samples == 0) throw std::invalid_argument("sample count must be positive");
    if (predicates.empty()) throw std::invalid_argument("no predicates given");

    const DyadicGrid fine(horizon, fine_level);
    struct Prepared {
        CompiledSet set;
        std::size_t stride;
        std::size_t points; // including t = 0
    };
    std::vector<Prepared> prepared;
    prepared.reserve(predicates.size());
    for (const auto& pred : predicates) {
        if (pred.level < 1 || pred.level > fine_level)
            throw std::invalid_argument("predicate level must be in [1, fine_level]");
        const DyadicGrid grid(horizon, pred.level);
        prepared.push_back(Prepared{CompiledSet(*pred.spec, grid),
                                    std::size_t{1} << (fine_level - pred.level),
                                    grid.count() + 1});
    }

    const std::size_t fine_count = fine.count();
    const double scale = std::sqrt(fine.spacing());

    return run_chunked(
        samples, predicates.size(), resolve_workers(workers),
        [&](std::uint64_t chunk, std::uint64_t count, std::vector<std::uint64_t>& counts) {
            NormalSampler sampler(seed, chunk);
            std::vector<double> values(fine_count + 1);
            std::vector<double> scratch(fine_count + 1);
            for (std::uint64_t i = 0; i < count; ++i) {
                values[0] = 0.0;
                double sum = 0.0;
                for (std::size_t k = 1; k <= fine_count; ++k) {
                    sum += scale * sampler.next();
                    values[k] = sum;
                }
                for (std::size_t p = 0; p < prepared.size(); ++p) {
                    const auto& prep = prepared[p];
                    bool hit;
                    if (prep.stride == 1) {
                        hit = prep.set.contains(values);
                    } else {
                        for (std::size_t k = 0; k < prep.points; ++k)
                            scratch[k] = values[k * prep.stride];
                        hit = prep.set.contains(
                            std::span<const double>(scratch.data(), prep.points));
                    }
                    counts[p] += hit ? 1u : 0u;
                }
            }
        });
}

std::vector<std::uint64_t> mc_counts_long(int r_max, int level_per_unit,
                                          std::span<const HorizonPredicate> predicates,
                                          std::uint64_t samples, SeedSpec seed,
                                          int workers) {
    if (samples == 0) throw std::invalid_argument("sample count must be positive");
    if (r_max < 1) throw std::invalid_argument("r_max must be >= 1");
    if (level_per_unit < 1 || level_per_unit > 20)
        throw std::invalid_argument("level_per_unit must be in [1, 20]");

    const std::size_t per_unit = std::size_t{1} << level_per_unit;
    const double spacing = 1.0 / static_cast<double>(per_unit);

    struct Prepared {
        CompiledSet set;
        std::size_t points; // including t = 0
    };
    std::vector<Prepared> prepared;
    prepared.reserve(predicates.size());
    for (const auto& pred : predicates) {
        if (pred.horizon_r < 1 || pred.horizon_r > r_max)
            throw std::invalid_argument("predicate horizon must be in [1, r_max]");
        const std::size_t points = static_cast<std::size_t>(pred.horizon_r) * per_unit + 1;
        prepared.push_back(Prepared{
            CompiledSet(*pred.spec, spacing, points, static_cast<double>(pred.horizon_r)),
            points});
    }

    const std::size_t total_count = static_cast<std::size_t>(r_max) * per_unit;
    const double scale = std::sqrt(spacing);

    return run_chunked(
        samples, predicates.size(), resolve_workers(workers),
        [&](std::uint64_t chunk, std::uint64_t count, std::vector<std::uint64_t>& counts) {
            NormalSampler sampler(seed, chunk);
            std::vector<double> values(total_count + 1);
            for (std::uint64_t i = 0; i < count; ++i) {
                values[0] = 0.0;
                double sum = 0.0;
                for (std::size_t k = 1; k <= total_count; ++k) {
                    sum += scale * sampler.next();
                    values[k] = sum;
                }
                for (std::size_t p = 0; p < prepared.size(); ++p) {
                    const bool hit = prepared[p].set.contains(
                        std::span<const double>(values.data(), prepared[p].points));
                    counts[p] += hit ? 1u : 0u;
                }
            }
        });
}

} // namespace wiener
