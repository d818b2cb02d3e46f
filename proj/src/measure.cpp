#include "wiener/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wiener/gaussian.hpp"

namespace wiener {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void require_samples(std::uint64_t samples) {
    if (samples < 1000) fail("sample count must be >= 1e3");
}

double diff_se(const EstimateResult& x, const EstimateResult& y) {
    const double se[] = {x.std_error, y.std_error};
    return combined_se(se);
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

} // namespace

EstimateResult estimate(const PathSetSpec& spec, const DyadicGrid& grid,
                        std::uint64_t samples, SeedSpec seed, int workers) {
    require_samples(samples);
    validate_catalog(spec);
    const LevelPredicate pred{grid.level, &spec};
    const auto counts = mc_counts(grid.horizon, grid.level, {&pred, 1}, samples,
                                  seed, workers);
    return make_estimate(grid.level, counts[0], samples, seed);
}

MeasureSequence sequence_phi(const PathSetSpec& spec, double horizon, int n_lo,
                             int n_hi, std::uint64_t samples, SeedSpec seed,
                             bool common_random_numbers, int workers) {
    require_samples(samples);
    if (n_lo < 1 || n_hi < n_lo) fail("level range must satisfy 1 <= n_lo <= n_hi");
    validate_catalog(spec);

    MeasureSequence seq;
    seq.common_samples = common_random_numbers;

    if (common_random_numbers) {
        std::vector<LevelPredicate> preds;
        for (int n = n_lo; n <= n_hi; ++n) preds.push_back(LevelPredicate{n, &spec});
        const auto counts = mc_counts(horizon, n_hi, preds, samples, seed, workers);
        for (std::size_t i = 0; i < counts.size(); ++i)
            seq.estimates.push_back(
                make_estimate(n_lo + static_cast<int>(i), counts[i], samples, seed));
    } else {
        for (int n = n_lo; n <= n_hi; ++n) {
            const SeedSpec level_seed = substream(seed, static_cast<std::uint64_t>(n));
            const DyadicGrid grid(horizon, n);
            seq.estimates.push_back(estimate(spec, grid, samples, level_seed, workers));
        }
    }

    seq.exact_nonincreasing = true;
    seq.consistent_decreasing = true;
    for (std::size_t i = 0; i + 1 < seq.estimates.size(); ++i) {
        const auto& cur = seq.estimates[i];
        const auto& nxt = seq.estimates[i + 1];
        if (nxt.hits > cur.hits) seq.exact_nonincreasing = false;
        if (nxt.p_hat - cur.p_hat > kSigmaTolerance * diff_se(cur, nxt))
            seq.consistent_decreasing = false;
    }

    seq.phi_hat = seq.estimates.back().p_hat;

    // least-squares slope of p_hat against level
    const double count = static_cast<double>(seq.estimates.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& e : seq.estimates) {
        const double x = e.level;
        sx += x;
        sy += e.p_hat;
        sxx += x * x;
        sxy += x * e.p_hat;
    }
    const double denom = count * sxx - sx * sx;
    seq.trend_slope = denom != 0.0 ? (count * sxy - sx * sy) / denom : 0.0;
    return seq;
}

SupBallBound supball_paper_bound(double a, double m, int n) {
    if (!(m > 0.0)) fail("sup ball bound needs m > 0");
    if (!(a > 0.0)) fail("horizon must be positive");
    if (n < 1) fail("level must be >= 1");
    SupBallBound b;
    b.a = a;
    b.m = m;
    b.level = n;
    const double points = std::pow(2.0, n);
    const double base = 1.0 - a / (m * m * points);
    b.chebyshev_prelimit = base > 0.0 ? std::pow(base, points) : 0.0;
    b.limit = std::exp(-a / (m * m));
    const double threshold = std::sqrt(points / a) * m; // 2^{n/2} m / sqrt(a)
    b.exact_increment_product = std::pow(normal_abs_cdf(threshold), points);
    return b;
}

double psi(double alpha, double a, double lambda) {
    if (!(alpha > 0.0 && alpha < 0.5))
        fail("alpha must be in (0, 1/2)"); // exponent 2/(1-2a) undefined otherwise
    if (!(lambda > 0.0)) fail("lambda must be positive");
    if (!(a > 0.0)) fail("horizon must be positive");
    const double p = 2.0 / (1.0 - 2.0 * alpha);
    return a * abs_moment(p) / std::pow(lambda, p);
}

HolderBound holder_lower_bound(double alpha, double a, double lambda, int n) {
    if (n < 1) fail("level must be >= 1");
    HolderBound b;
    b.alpha = alpha;
    b.a = a;
    b.lambda = lambda;
    b.level = n;
    b.psi_value = psi(alpha, a, lambda);
    const double points = std::pow(2.0, n);
    const double base = 1.0 - b.psi_value / points;
    b.prelimit = base > 0.0 ? std::pow(base, points) : 0.0;
    b.limit = std::exp(-b.psi_value);
    // |xi| threshold for the adjacent-increment event A_n
    const double threshold = lambda * std::pow(2.0, 0.5 * n * (1.0 - 2.0 * alpha)) /
                             std::pow(a, 0.5 * (1.0 - 2.0 * alpha));
    b.exact_increment_product = std::pow(normal_abs_cdf(threshold), points);
    return b;
}

namespace {

CheckReport three_way_report(std::string name, const EstimateResult& whole,
                             double parts_sum, double parts_se,
                             std::uint64_t parts_hits, bool shared_samples) {
    CheckReport rep;
    rep.name = std::move(name);
    rep.discrepancy = std::fabs(whole.p_hat - parts_sum);
    const double se[] = {whole.std_error, parts_se};
    const double denom = combined_se(se);
    rep.discrepancy_se_units = denom > 0.0 ? rep.discrepancy / denom
                                           : (rep.discrepancy == 0.0 ? 0.0 : 1e300);
    rep.exact_identity = shared_samples && whole.hits == parts_hits;
    rep.pass = rep.exact_identity || rep.discrepancy_se_units <= kSigmaTolerance;
    return rep;
}

} // namespace

CheckReport additivity_check(const PathSetSpec& a_spec, const PathSetSpec& b_spec,
                             double horizon, int n, std::uint64_t samples,
                             SeedSpec seed, bool common_random_numbers, int workers) {
    require_samples(samples);
    validate_catalog(a_spec);
    validate_catalog(b_spec);

    const bool a_empty = provably_empty(a_spec);
    const bool b_empty = provably_empty(b_spec);
    if (!a_empty && !b_empty) {
        const double q = separation(a_spec, b_spec, horizon, n);
        if (!(q > 0.0)) fail("sets not certified disjoint");
    }

    PathSetSpec both = PathSetSpec::set_union({a_spec, b_spec});
    const DyadicGrid grid(horizon, n);

    EstimateResult ea, eb, eu;
    if (common_random_numbers) {
        const LevelPredicate preds[] = {{n, &a_spec}, {n, &b_spec}, {n, &both}};
        const auto counts = mc_counts(horizon, n, preds, samples, seed, workers);
        ea = make_estimate(n, counts[0], samples, seed);
        eb = make_estimate(n, counts[1], samples, seed);
        eu = make_estimate(n, counts[2], samples, seed);
    } else {
        ea = estimate(a_spec, grid, samples, substream(seed, 1), workers);
        eb = estimate(b_spec, grid, samples, substream(seed, 2), workers);
        eu = estimate(both, grid, samples, substream(seed, 3), workers);
    }

    const double se[] = {ea.std_error, eb.std_error};
    auto rep = three_way_report("additivity", eu, ea.p_hat + eb.p_hat,
                                combined_se(se), ea.hits + eb.hits,
                                common_random_numbers);
    rep.estimates = {ea, eb, eu};
    rep.detail = "p(AuB) = " + format_double(eu.p_hat) + ", p(A)+p(B) = " +
                 format_double(ea.p_hat + eb.p_hat);
    return rep;
}

CheckReport difference_check(double m1, double m2, double horizon, int n,
                             std::uint64_t samples, SeedSpec seed,
                             bool common_random_numbers, int workers) {
    require_samples(samples);
    if (!(m1 >= 0.0 && m2 >= m1)) fail("difference check needs 0 <= m1 <= m2");

    const PathSetSpec inner = PathSetSpec::sup_ball(m1);
    const PathSetSpec outer = PathSetSpec::sup_ball(m2);
    const PathSetSpec ann = PathSetSpec::annulus(m1, m2);
    const DyadicGrid grid(horizon, n);

    EstimateResult e1, e2, ea;
    if (common_random_numbers) {
        const LevelPredicate preds[] = {{n, &inner}, {n, &outer}, {n, &ann}};
        const auto counts = mc_counts(horizon, n, preds, samples, seed, workers);
        e1 = make_estimate(n, counts[0], samples, seed);
        e2 = make_estimate(n, counts[1], samples, seed);
        ea = make_estimate(n, counts[2], samples, seed);
    } else {
        e1 = estimate(inner, grid, samples, substream(seed, 1), workers);
        e2 = estimate(outer, grid, samples, substream(seed, 2), workers);
        ea = estimate(ann, grid, samples, substream(seed, 3), workers);
    }

    const double se[] = {e1.std_error, e2.std_error};
    const std::uint64_t parts_hits =
        common_random_numbers ? e2.hits - e1.hits : 0; // B1 within B2 under CRN
    auto rep = three_way_report("difference", ea, e2.p_hat - e1.p_hat,
                                combined_se(se), parts_hits, common_random_numbers);
    rep.estimates = {e1, e2, ea};
    rep.detail = "p(annulus) = " + format_double(ea.p_hat) + ", p(B2)-p(B1) = " +
                 format_double(e2.p_hat - e1.p_hat);
    return rep;
}

MonotoneFamilyReport monotone_limit_check(const std::vector<double>& radii,
                                          double limit_radius, double horizon, int n,
                                          std::uint64_t samples, SeedSpec seed,
                                          bool common_random_numbers, int workers) {
    require_samples(samples);
    if (radii.size() < 2) fail("family needs at least 2 radii");

    const bool decreasing = radii.front() >= radii.back();
    for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
        const bool ok = decreasing ? radii[i] >= radii[i + 1] : radii[i] <= radii[i + 1];
        if (!ok) fail("family radii are not monotone (non-nested family)");
    }
    if (decreasing ? radii.back() < limit_radius : radii.back() > limit_radius)
        fail("family does not approach the limit radius from the nested side");

    std::vector<PathSetSpec> family;
    family.reserve(radii.size());
    for (double m : radii) family.push_back(PathSetSpec::sup_ball(m));
    const PathSetSpec limit_set = PathSetSpec::sup_ball(limit_radius);

    std::vector<EstimateResult> est;
    if (common_random_numbers) {
        std::vector<LevelPredicate> preds;
        for (const auto& s : family) preds.push_back(LevelPredicate{n, &s});
        preds.push_back(LevelPredicate{n, &limit_set});
        const auto counts = mc_counts(horizon, n, preds, samples, seed, workers);
        for (auto c : counts) est.push_back(make_estimate(n, c, samples, seed));
    } else {
        const DyadicGrid grid(horizon, n);
        for (std::size_t i = 0; i < family.size(); ++i)
            est.push_back(estimate(family[i], grid, samples, substream(seed, i + 1),
                                   workers));
        est.push_back(
            estimate(limit_set, grid, samples, substream(seed, family.size() + 1),
                     workers));
    }

    const EstimateResult limit_est = est.back();
    est.pop_back();

    MonotoneFamilyReport rep;
    rep.radii = radii;
    rep.decreasing_family = decreasing;
    rep.check.name = decreasing ? "monotone-limit-decreasing" : "monotone-limit-increasing";
    rep.check.estimates = est;
    rep.check.estimates.push_back(limit_est);

    bool monotone_exact = true;
    for (std::size_t i = 0; i + 1 < est.size(); ++i) {
        const bool ok = decreasing ? est[i + 1].hits <= est[i].hits
                                   : est[i + 1].hits >= est[i].hits;
        if (!ok) monotone_exact = false;
    }
    // the limit set is contained in (or contains) every family member
    for (const auto& e : est) {
        const bool ok = decreasing ? limit_est.hits <= e.hits : limit_est.hits >= e.hits;
        if (!ok) monotone_exact = false;
    }
    rep.check.exact_identity = common_random_numbers && monotone_exact;

    const auto& last = est.back();
    rep.check.discrepancy = std::fabs(last.p_hat - limit_est.p_hat);
    const double denom = diff_se(last, limit_est);
    rep.check.discrepancy_se_units =
        denom > 0.0 ? rep.check.discrepancy / denom
                    : (rep.check.discrepancy == 0.0 ? 0.0 : 1e300);
    const bool converged = rep.check.discrepancy_se_units <= kSigmaTolerance;
    rep.check.pass = (common_random_numbers ? monotone_exact : true) && converged;
    rep.check.detail = "last family estimate " + format_double(last.p_hat) +
                       " vs limit estimate " + format_double(limit_est.p_hat);
    return rep;
}

CheckReport countable_additivity_check(const std::vector<double>& radii,
                                       double horizon, int n, std::uint64_t samples,
                                       SeedSpec seed, bool common_random_numbers,
                                       int workers) {
    require_samples(samples);
    if (radii.size() < 2 || radii.front() != 0.0)
        fail("partition radii must start at 0 and contain at least one annulus");
    for (std::size_t i = 0; i + 1 < radii.size(); ++i)
        if (!(radii[i] < radii[i + 1])) fail("partition radii overlap or decrease");

    const double big_m = radii.back();
    const PathSetSpec ball = PathSetSpec::sup_ball(big_m);
    std::vector<PathSetSpec> annuli;
    for (std::size_t j = 1; j < radii.size(); ++j) {
        if (radii[j - 1] == 0.0)
            annuli.push_back(PathSetSpec::sup_ball(radii[j]));
        else
            annuli.push_back(PathSetSpec::annulus(radii[j - 1], radii[j]));
    }

    std::vector<EstimateResult> est;
    if (common_random_numbers) {
        std::vector<LevelPredicate> preds;
        for (const auto& s : annuli) preds.push_back(LevelPredicate{n, &s});
        preds.push_back(LevelPredicate{n, &ball});
        const auto counts = mc_counts(horizon, n, preds, samples, seed, workers);
        for (auto c : counts) est.push_back(make_estimate(n, c, samples, seed));
    } else {
        const DyadicGrid grid(horizon, n);
        for (std::size_t i = 0; i < annuli.size(); ++i)
            est.push_back(
                estimate(annuli[i], grid, samples, substream(seed, i + 1), workers));
        est.push_back(
            estimate(ball, grid, samples, substream(seed, annuli.size() + 1), workers));
    }

    const EstimateResult ball_est = est.back();
    est.pop_back();

    double parts_sum = 0.0;
    std::uint64_t parts_hits = 0;
    std::vector<double> ses;
    for (const auto& e : est) {
        parts_sum += e.p_hat;
        parts_hits += e.hits;
        ses.push_back(e.std_error);
    }

    auto rep = three_way_report("finite-partition-additivity", ball_est, parts_sum,
                                combined_se(ses), parts_hits, common_random_numbers);
    rep.estimates = est;
    rep.estimates.push_back(ball_est);
    rep.detail = "sum of " + std::to_string(est.size()) + " annuli = " +
                 format_double(parts_sum) + ", ball = " + format_double(ball_est.p_hat);
    return rep;
}

} // namespace wiener
