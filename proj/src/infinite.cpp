#include "wiener/infinite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wiener {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void require_compatible(const LongPath& f, const LongPath& g, int depth) {
    if (depth < 1) fail("metric depth must be >= 1");
    if (f.level_per_unit != g.level_per_unit) fail("mismatched grids");
    if (f.horizon < depth || g.horizon < depth)
        fail("metric depth exceeds available path horizon");
}

double compress(double s) { return s / (1.0 + s); }

// sup of |f - g| over grid points in [0, n]
double window_sup(const LongPath& f, const LongPath& g, int n) {
    const std::size_t points = static_cast<std::size_t>(n) * f.points_per_unit();
    double m = 0.0;
    for (std::size_t k = 0; k < points; ++k)
        m = std::max(m, std::fabs(f.values[k] - g.values[k]));
    return m;
}

} // namespace

LongPath::LongPath(int R, int npu, std::vector<double> vals)
    : horizon(R), level_per_unit(npu), values(std::move(vals)) {
    if (R < 1) fail("long path horizon must be a positive integer");
    if (npu < 1 || npu > 20) fail("level per unit must be in [1, 20]");
    if (values.size() != static_cast<std::size_t>(R) * points_per_unit())
        fail("long path value count must be R * 2^npu");
}

LongPath sample_long_path(int horizon, int npu, SeedSpec seed) {
    if (horizon < 1) fail("horizon must be >= 1");
    LongPath p(horizon, npu, std::vector<double>(
                                 static_cast<std::size_t>(horizon)
                                 << npu));
    NormalSampler sampler(seed);
    const double scale = std::sqrt(p.spacing());
    double sum = 0.0;
    for (auto& v : p.values) {
        sum += scale * sampler.next();
        v = sum;
    }
    return p;
}

MetricValue metric_d(const LongPath& f, const LongPath& g, int depth) {
    require_compatible(f, g, depth);
    double value = 0.0;
    for (int n = 1; n <= depth; ++n)
        value += std::ldexp(compress(window_sup(f, g, n)), -n);
    return MetricValue{value, depth, std::ldexp(1.0, -depth)};
}

MetricValue metric_d_r(const LongPath& f, const LongPath& g, int r) {
    return metric_d(f, g, r);
}

HolderMetricPair holder_metrics(const LongPath& x, const LongPath& y, double alpha,
                                int depth) {
    require_compatible(x, y, depth);
    if (!(alpha > 0.0 && alpha < 0.5)) fail("alpha must be in (0, 1/2)");

    const double h = x.spacing();
    const std::size_t per_unit = x.points_per_unit();

    // difference path with the anchor u(0) = 0 at index 0
    const std::size_t total = static_cast<std::size_t>(depth) * per_unit;
    std::vector<double> u(total + 1, 0.0);
    for (std::size_t k = 0; k < total; ++k) u[k + 1] = x.values[k] - y.values[k];

    MetricValue d_alpha{0.0, depth, std::ldexp(1.0, -depth)};
    MetricValue d_star = d_alpha;
    double plain = 0.0;
    bool star_below = true;

    for (int n = 1; n <= depth; ++n) {
        const std::size_t points = static_cast<std::size_t>(n) * per_unit + 1;
        double sup_pairs = 0.0;
        double sup_value = 0.0;
        double sup_plain = 0.0;
        for (std::size_t k = 0; k < points; ++k)
            sup_plain = std::max(sup_plain, std::fabs(u[k]));
        for (std::size_t g = 1; g < points; ++g) {
            const double gap = static_cast<double>(g) * h;
            if (!(gap < 1.0)) break;
            const double denom = std::pow(gap, alpha);
            for (std::size_t s = 0; s + g < points; ++s) {
                const double lo = std::fabs(u[s]);
                const double hi = std::fabs(u[s + g]);
                sup_pairs = std::max(sup_pairs, std::fabs(u[s + g] - u[s]) / denom);
                sup_value = std::max(sup_value, std::max(lo, hi) / denom);
            }
        }
        d_alpha.value += std::ldexp(compress(sup_pairs), -n);
        d_star.value += std::ldexp(compress(sup_value), -n);
        plain += std::ldexp(compress(sup_plain), -n);
        if (sup_value > sup_pairs) star_below = false;
    }

    // identities that hold for these grid functionals on every input
    if (plain > d_star.value + 1e-12)
        throw std::logic_error("metric ordering d <= d*_alpha violated");
    if (d_alpha.value > 2.0 * d_star.value + 1e-12)
        throw std::logic_error("metric ordering d_alpha <= 2 d*_alpha violated");

    HolderMetricPair out;
    out.d_alpha = d_alpha;
    out.d_alpha_star = d_star;
    out.star_below_alpha = star_below;
    return out;
}

LongPath truncate(const LongPath& f, int r) {
    if (r < 1) fail("truncation horizon must be >= 1");
    if (r > f.horizon) fail("truncation horizon exceeds path horizon");
    if (r == f.horizon) return f;
    const std::size_t points = static_cast<std::size_t>(r) * f.points_per_unit();
    return LongPath(r, f.level_per_unit,
                    std::vector<double>(f.values.begin(),
                                        f.values.begin() + static_cast<long>(points)));
}

MuInftyReport mu_sequence_infty(const HolderBall& ball, int r_lo, int r_hi, int npu,
                                std::uint64_t samples, SeedSpec seed,
                                bool common_random_numbers, int workers) {
    if (samples < 1000) fail("sample count must be >= 1e3");
    if (r_lo < 1 || r_hi < r_lo) fail("horizon range must satisfy 1 <= r_lo <= r_hi");
    if (!(ball.alpha > 0.0 && ball.alpha < 0.5)) fail("alpha must be in (0, 1/2)");

    const PathSetSpec spec = PathSetSpec::holder_ball(ball.alpha, ball.bound, ball.window);

    MuInftyReport rep;
    rep.alpha = ball.alpha;
    rep.lambda = ball.bound;
    rep.window = ball.window;
    rep.level_per_unit = npu;
    rep.sequence.common_samples = common_random_numbers;

    if (common_random_numbers) {
        std::vector<HorizonPredicate> preds;
        for (int r = r_lo; r <= r_hi; ++r) preds.push_back(HorizonPredicate{r, &spec});
        const auto counts = mc_counts_long(r_hi, npu, preds, samples, seed, workers);
        for (std::size_t i = 0; i < counts.size(); ++i)
            rep.sequence.estimates.push_back(
                make_estimate(r_lo + static_cast<int>(i), counts[i], samples, seed));
    } else {
        for (int r = r_lo; r <= r_hi; ++r) {
            const SeedSpec sub = substream(seed, static_cast<std::uint64_t>(r));
            const HorizonPredicate pred{r, &spec};
            const auto counts = mc_counts_long(r, npu, {&pred, 1}, samples, sub, workers);
            rep.sequence.estimates.push_back(make_estimate(r, counts[0], samples, sub));
        }
    }

    auto& seq = rep.sequence;
    seq.exact_nonincreasing = true;
    seq.consistent_decreasing = true;
    for (std::size_t i = 0; i + 1 < seq.estimates.size(); ++i) {
        const auto& cur = seq.estimates[i];
        const auto& nxt = seq.estimates[i + 1];
        if (nxt.hits > cur.hits) seq.exact_nonincreasing = false;
        const double se[] = {cur.std_error, nxt.std_error};
        if (nxt.p_hat - cur.p_hat > kSigmaTolerance * combined_se(se))
            seq.consistent_decreasing = false;
    }
    seq.phi_hat = seq.estimates.back().p_hat;

    const int r_bound = static_cast<int>(std::floor(ball.bound));
    if (r_bound >= r_lo && r_bound <= r_hi) {
        rep.bound_checked = true;
        rep.bound_r = r_bound;
        rep.bound_value = std::exp(-static_cast<double>(r_bound) /
                                   (ball.bound * ball.bound));
        rep.bound_value_weak = std::exp(-1.0 / ball.bound);
        const auto& e = seq.estimates[static_cast<std::size_t>(r_bound - r_lo)];
        rep.bound_pass = e.p_hat >= rep.bound_value - kSigmaTolerance * e.std_error;
    }
    return rep;
}

} // namespace wiener
