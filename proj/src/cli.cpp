#include "wiener/cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wiener/gaussian.hpp"
#include "wiener/infinite.hpp"
#include "wiener/measure.hpp"
#include "wiener/oracles.hpp"
#include "wiener/report.hpp"

namespace wiener::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void config_error(const std::string& msg) {
    throw std::invalid_argument(msg);
}

const json& require_field(const json& j, const char* name) {
    if (!j.contains(name)) config_error(std::string("config missing field '") + name + "'");
    return j.at(name);
}

SeedSpec seed_from(const json& cfg, std::optional<std::uint64_t> master_override) {
    SeedSpec seed;
    if (cfg.contains("seed")) {
        const auto& s = cfg.at("seed");
        seed.master = require_field(s, "master").get<std::uint64_t>();
        seed.stream = s.value("stream", std::uint64_t{0});
    }
    if (master_override) seed.master = *master_override;
    return seed;
}

PathSetSpec spec_from(const json& cfg, const char* field = "spec") {
    return path_set_from_json(require_field(cfg, field).dump());
}

std::pair<int, int> range_from(const json& cfg, const char* field) {
    const auto& r = require_field(cfg, field);
    if (!r.is_array() || r.size() != 2)
        config_error(std::string("config field '") + field + "' must be [lo, hi]");
    return {r[0].get<int>(), r[1].get<int>()};
}

struct Options {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed_override;
    int workers = 0;
    std::string format = "json";
};

json load_config(const Options& opt) {
    std::ifstream in(opt.config_path);
    if (!in) config_error("cannot open config file: " + opt.config_path);
    json cfg;
    in >> cfg;
    return cfg;
}

void emit(const Options& opt, const ordered_json& report, const std::string& csv) {
    if (!opt.out_dir.empty()) {
        std::filesystem::create_directories(opt.out_dir);
        std::ofstream(std::filesystem::path(opt.out_dir) / "report.json")
            << report.dump(2) << "\n";
        if (!csv.empty())
            std::ofstream(std::filesystem::path(opt.out_dir) / "report.csv") << csv;
    } else if (opt.format == "csv" && !csv.empty()) {
        std::cout << csv;
    } else {
        std::cout << report.dump(2) << "\n";
    }
}

ordered_json report_shell(const std::string& command, const json& cfg, SeedSpec seed) {
    ordered_json report;
    report["schema"] = kReportSchema;
    report["command"] = command;
    report["config"] = cfg;
    report["seed_used"] = to_json(seed);
    return report;
}

// --- estimate -------------------------------------------------------------

int cmd_estimate(const Options& opt) {
    const json cfg = load_config(opt);
    const PathSetSpec spec = spec_from(cfg);
    const double horizon = require_field(cfg, "horizon").get<double>();
    const auto samples = require_field(cfg, "samples").get<std::uint64_t>();
    const SeedSpec seed = seed_from(cfg, opt.seed_override);

    ordered_json report = report_shell("estimate", cfg, seed);
    std::string csv;

    if (cfg.contains("n_range")) {
        const auto [lo, hi] = range_from(cfg, "n_range");
        const bool crn = cfg.value("common_random_numbers", true);
        const auto seq =
            sequence_phi(spec, horizon, lo, hi, samples, seed, crn, opt.workers);
        report["result"] = to_json(seq);
        csv = sequence_csv(seq);
    } else {
        const int n = require_field(cfg, "n").get<int>();
        const auto est = estimate(spec, DyadicGrid(horizon, n), samples, seed,
                                  opt.workers);
        report["result"] = to_json(est);
    }
    emit(opt, report, csv);
    return 0;
}

// --- verify ---------------------------------------------------------------

struct VerifyOutcome {
    ordered_json report;
    bool pass = false;
};

VerifyOutcome verify_monotone(const json& cfg, SeedSpec seed, int workers) {
    const PathSetSpec spec = spec_from(cfg);
    const double horizon = require_field(cfg, "horizon").get<double>();
    const auto [lo, hi] = range_from(cfg, "n_range");
    const auto samples = require_field(cfg, "samples").get<std::uint64_t>();
    const bool crn = cfg.value("common_random_numbers", true);
    const auto seq = sequence_phi(spec, horizon, lo, hi, samples, seed, crn, workers);
    VerifyOutcome out;
    out.report["result"] = to_json(seq);
    out.pass = crn ? seq.exact_nonincreasing : seq.consistent_decreasing;
    return out;
}

VerifyOutcome verify_bounds(const json& cfg, SeedSpec seed, int workers) {
    const double m = require_field(cfg, "m").get<double>();
    const double horizon = require_field(cfg, "horizon").get<double>();
    const auto [lo, hi] = range_from(cfg, "n_range");
    const auto samples = require_field(cfg, "samples").get<std::uint64_t>();
    const PathSetSpec spec = PathSetSpec::sup_ball(m);
    const auto seq = sequence_phi(spec, horizon, lo, hi, samples, seed, true, workers);

    VerifyOutcome out;
    out.pass = true;
    out.report["result"]["sequence"] = to_json(seq);
    auto& bounds = out.report["result"]["bounds"];
    bounds = ordered_json::array();
    for (const auto& e : seq.estimates) {
        const auto b = supball_paper_bound(horizon, m, e.level);
        const double margin = kSigmaTolerance * e.std_error;
        const bool above_prelimit = e.p_hat >= b.chebyshev_prelimit - margin;
        // Anderson direction: the level event is dominated by the
        // per-increment product
        const bool below_product = e.p_hat <= b.exact_increment_product + margin;
        ordered_json row = to_json(b);
        row["p_hat"] = e.p_hat;
        row["above_chebyshev_prelimit"] = above_prelimit;
        row["below_increment_product"] = below_product;
        bounds.push_back(row);
        out.pass = out.pass && above_prelimit && below_product;
    }
    const auto& last = seq.estimates.back();
    const double limit = std::exp(-horizon / (m * m));
    const bool above_limit =
        last.p_hat >= limit - kSigmaTolerance * last.std_error;
    out.report["result"]["limit"] = limit;
    out.report["result"]["above_limit_at_last_level"] = above_limit;
    out.pass = out.pass && above_limit;
    return out;
}

VerifyOutcome verify_holder_bound(const json& cfg, SeedSpec seed, int workers) {
    const double alpha = require_field(cfg, "alpha").get<double>();
    const double lambda = require_field(cfg, "lambda").get<double>();
    const double horizon = require_field(cfg, "horizon").get<double>();
    const int n = require_field(cfg, "n").get<int>();
    const auto samples = require_field(cfg, "samples").get<std::uint64_t>();
    const double window = cfg.value("window", 1.0);

    const PathSetSpec spec = PathSetSpec::holder_ball(alpha, lambda, window);
    const auto est = estimate(spec, DyadicGrid(horizon, n), samples, seed, workers);
    const auto bound = holder_lower_bound(alpha, horizon, lambda, n);

    VerifyOutcome out;
    out.report["result"]["estimate"] = to_json(est);
    out.report["result"]["bound"] = to_json(bound);
    out.pass = est.p_hat >= bound.limit - kSigmaTolerance * est.std_error;
    out.report["result"]["above_exp_minus_psi"] = out.pass;
    return out;
}

VerifyOutcome verify_additivity(const json& cfg, SeedSpec seed, int workers) {
    const PathSetSpec a = spec_from(cfg, "spec_a");
    const PathSetSpec b = spec_from(cfg, "spec_b");
    const double horizon = require_field(cfg, "horizon").get<double>();
    const int n = require_field(cfg, "n").get<int>();
    const auto samples = require_field(cfg, "samples").get<std::uint64_t>();
    const bool crn = cfg.value("common_random_numbers", true);
    const auto rep = additivity_check(a, b, horizon, n, samples, seed, crn, workers);
    VerifyOutcome out;
    out.report["result"] = to_json(rep);
    out.pass = rep.pass;
    return out;
}

VerifyOutcome verify_difference(const json& cfg, SeedSpec seed, int workers) {
    const double m1 = require_field(cfg, "m1").get<double>();
    const double m2 = require_field(cfg, "m2").get<double>();
    const double horizon = require_field(cfg, "horizon").get<double>();
    const int n = require_field(cfg, "n").get<int>();
    const auto samples = require_field(cfg, "samples").get<std::uint64_t>();
    const bool crn = cfg.value("common_random_numbers", true);
    const auto rep = difference_check(m1, m2, horizon, n, samples, seed, crn, workers);
    VerifyOutcome out;
    out.report["result"] = to_json(rep);
    out.pass = rep.pass;
    return out;
}

VerifyOutcome verify_partition(const json& cfg, SeedSpec seed, int workers) {
    const auto radii = require_field(cfg, "radii").get<std::vector<double>>();
    const double horizon = require_field(cfg, "horizon").get<double>();
    const int n = require_field(cfg, "n").get<int>();
    const auto samples = require_field(cfg, "samples").get<std::uint64_t>();
    const bool crn = cfg.value("common_random_numbers", true);
    const auto rep =
        countable_additivity_check(radii, horizon, n, samples, seed, crn, workers);
    VerifyOutcome out;
    out.report["result"] = to_json(rep);
    out.pass = rep.pass;
    return out;
}

VerifyOutcome verify_monotone_family(const json& cfg, SeedSpec seed, int workers) {
    const auto radii = require_field(cfg, "radii").get<std::vector<double>>();
    const double limit = require_field(cfg, "limit").get<double>();
    const double horizon = require_field(cfg, "horizon").get<double>();
    const int n = require_field(cfg, "n").get<int>();
    const auto samples = require_field(cfg, "samples").get<std::uint64_t>();
    const bool crn = cfg.value("common_random_numbers", true);
    const auto rep =
        monotone_limit_check(radii, limit, horizon, n, samples, seed, crn, workers);
    VerifyOutcome out;
    out.report["result"] = to_json(rep.check);
    out.report["result"]["radii"] = rep.radii;
    out.report["result"]["direction"] = rep.decreasing_family ? "decreasing" : "increasing";
    out.pass = rep.check.pass;
    return out;
}

VerifyOutcome verify_mu_infinity(const json& cfg, SeedSpec seed, int workers) {
    const double alpha = require_field(cfg, "alpha").get<double>();
    const double lambda = require_field(cfg, "lambda").get<double>();
    const double window = cfg.value("window", 1.0);
    const auto [lo, hi] = range_from(cfg, "r_range");
    const int npu = require_field(cfg, "level_per_unit").get<int>();
    const auto samples = require_field(cfg, "samples").get<std::uint64_t>();
    const bool crn = cfg.value("common_random_numbers", true);
    const auto rep = mu_sequence_infty(HolderBall{alpha, lambda, window}, lo, hi, npu,
                                       samples, seed, crn, workers);
    VerifyOutcome out;
    out.report["result"] = to_json(rep);
    const bool monotone =
        crn ? rep.sequence.exact_nonincreasing : rep.sequence.consistent_decreasing;
    out.pass = monotone && (!rep.bound_checked || rep.bound_pass);
    return out;
}

VerifyOutcome verify_oracle_agreement(const json& cfg, SeedSpec seed, int workers) {
    const double horizon = cfg.value("horizon", 1.0);
    const double m = cfg.value("m", 1.0);
    const int n = cfg.value("n", 8);
    const auto samples = cfg.value("samples", std::uint64_t{100000});
    const int terms = cfg.value("terms", 50);
    const auto walk_steps = cfg.value("walk_steps", std::uint64_t{40000});
    const auto walk_samples = cfg.value("walk_samples", std::uint64_t{4000});
    const double rel_tol = cfg.value("relative_tolerance", 0.01);

    const auto series = reflection_supball(horizon, m, terms);
    const auto walk = random_walk_supball(horizon, m, walk_steps, walk_samples,
                                          substream(seed, 1), workers);
    const PathSetSpec ball = PathSetSpec::sup_ball(m);
    const auto dyadic = estimate(ball, DyadicGrid(horizon, n), samples,
                                 substream(seed, 2), workers);

    VerifyOutcome out;
    out.report["result"]["reflection"] = to_json(series);
    out.report["result"]["random_walk"] = to_json(walk);
    out.report["result"]["dyadic"] = to_json(dyadic);

    const double walk_gap = std::fabs(series.value - walk.p_hat);
    const double walk_tol = series.error_bound + kSigmaTolerance * walk.std_error;
    const bool walk_ok = walk_gap <= walk_tol;

    const double dy_gap = std::fabs(series.value - dyadic.p_hat);
    const double dy_tol = std::max(rel_tol * series.value,
                                   kSigmaTolerance * dyadic.std_error);
    const bool dy_ok = dy_gap <= dy_tol;

    out.report["result"]["reflection_vs_walk"] =
        ordered_json{{"gap", walk_gap}, {"tolerance", walk_tol}, {"pass", walk_ok}};
    out.report["result"]["reflection_vs_dyadic"] =
        ordered_json{{"gap", dy_gap}, {"tolerance", dy_tol}, {"pass", dy_ok}};

    bool quad_ok = true;
    if (n <= 2) {
        const double q = quadrature_orthant(SupBall{m}, DyadicGrid(horizon, n));
        const double gap = std::fabs(q - dyadic.p_hat);
        const bool ok = gap <= kSigmaTolerance * dyadic.std_error;
        out.report["result"]["quadrature_vs_dyadic"] =
            ordered_json{{"quadrature", q}, {"gap", gap}, {"pass", ok}};
        quad_ok = ok;
    }

    out.pass = walk_ok && dy_ok && quad_ok;
    return out;
}

int cmd_verify(const Options& opt) {
    const json cfg = load_config(opt);
    const std::string check = require_field(cfg, "check").get<std::string>();
    const SeedSpec seed = seed_from(cfg, opt.seed_override);

    VerifyOutcome outcome;
    if (check == "monotone") outcome = verify_monotone(cfg, seed, opt.workers);
    else if (check == "bounds") outcome = verify_bounds(cfg, seed, opt.workers);
    else if (check == "holder-bound") outcome = verify_holder_bound(cfg, seed, opt.workers);
    else if (check == "additivity") outcome = verify_additivity(cfg, seed, opt.workers);
    else if (check == "difference") outcome = verify_difference(cfg, seed, opt.workers);
    else if (check == "partition") outcome = verify_partition(cfg, seed, opt.workers);
    else if (check == "monotone-family")
        outcome = verify_monotone_family(cfg, seed, opt.workers);
    else if (check == "mu-infinity") outcome = verify_mu_infinity(cfg, seed, opt.workers);
    else if (check == "oracle-agreement")
        outcome = verify_oracle_agreement(cfg, seed, opt.workers);
    else
        config_error("unknown check '" + check +
                     "'; available: monotone, bounds, holder-bound, additivity, "
                     "difference, partition, monotone-family, mu-infinity, "
                     "oracle-agreement");

    ordered_json report = report_shell("verify", cfg, seed);
    report["check"] = check;
    report["pass"] = outcome.pass;
    report.update(outcome.report);
    emit(opt, report, "");
    return outcome.pass ? 0 : 1;
}

// --- sweep ----------------------------------------------------------------

namespace {
std::string csv_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}
} // namespace

int cmd_sweep(const Options& opt) {
    const json cfg = load_config(opt);
    const std::string kind = require_field(cfg, "sweep").get<std::string>();
    const SeedSpec seed = seed_from(cfg, opt.seed_override);

    ordered_json report = report_shell("sweep", cfg, seed);
    std::string csv;
    auto& rows = report["rows"];
    rows = ordered_json::array();

    if (kind == "supball-bound") {
        const double horizon = require_field(cfg, "horizon").get<double>();
        const int n = require_field(cfg, "n").get<int>();
        const auto grid = require_field(cfg, "m_grid").get<std::vector<double>>();
        if (grid.empty()) config_error("empty sweep grid");
        csv = "m,n,chebyshev_prelimit,exact_increment_product,limit\n";
        for (double m : grid) {
            const auto b = supball_paper_bound(horizon, m, n);
            rows.push_back(to_json(b));
            csv += csv_double(m) + "," + std::to_string(n) + "," +
                   csv_double(b.chebyshev_prelimit) + "," +
                   csv_double(b.exact_increment_product) + "," + csv_double(b.limit) +
                   "\n";
        }
    } else if (kind == "psi") {
        const double alpha = require_field(cfg, "alpha").get<double>();
        const double horizon = require_field(cfg, "horizon").get<double>();
        const auto grid = require_field(cfg, "lambda_grid").get<std::vector<double>>();
        if (grid.empty()) config_error("empty sweep grid");
        csv = "lambda,psi,exp_minus_psi\n";
        for (double lam : grid) {
            const double p = psi(alpha, horizon, lam);
            rows.push_back(ordered_json{{"lambda", lam},
                                        {"psi", p},
                                        {"exp_minus_psi", std::exp(-p)}});
            csv += csv_double(lam) + "," + csv_double(p) + "," +
                   csv_double(std::exp(-p)) + "\n";
        }
    } else if (kind == "mu-r") {
        const double alpha = require_field(cfg, "alpha").get<double>();
        const double lambda = require_field(cfg, "lambda").get<double>();
        const double window = cfg.value("window", 1.0);
        const auto [lo, hi] = range_from(cfg, "r_range");
        const int npu = require_field(cfg, "level_per_unit").get<int>();
        const auto samples = require_field(cfg, "samples").get<std::uint64_t>();
        const auto rep = mu_sequence_infty(HolderBall{alpha, lambda, window}, lo, hi,
                                           npu, samples, seed, true, opt.workers);
        rows.push_back(to_json(rep));
        csv = sequence_csv(rep.sequence, "r");
    } else {
        config_error("unknown sweep '" + kind +
                     "'; available: supball-bound, psi, mu-r");
    }

    emit(opt, report, csv);
    return 0;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"dyadic approximation meter for the Wiener measure construction"};
    app.require_subcommand(1);

    Options opt;
    std::uint64_t seed_flag = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "JSON config file")->required();
        sub->add_option("--out", opt.out_dir, "output directory for reports");
        sub->add_option("--seed", seed_flag, "override the master seed")
            ->each([&](const std::string&) { opt.seed_override = seed_flag; });
        sub->add_option("--workers", opt.workers, "worker threads (0 = auto)");
        sub->add_option("--format", opt.format, "stdout format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    auto* est = app.add_subcommand("estimate", "estimate set probabilities");
    auto* ver = app.add_subcommand("verify", "run a named theorem/bound check");
    auto* swp = app.add_subcommand("sweep", "tabulate bound curves over a grid");
    add_common(est);
    add_common(ver);
    add_common(swp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0; // --help
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (est->parsed()) return cmd_estimate(opt);
        if (ver->parsed()) return cmd_verify(opt);
        if (swp->parsed()) return cmd_sweep(opt);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace wiener::cli
