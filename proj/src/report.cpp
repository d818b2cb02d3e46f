#include "wiener/report.hpp"

#include <charconv>

namespace wiener {

namespace {

std::string shortest(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

} // namespace

using nlohmann::ordered_json;

ordered_json to_json(const SeedSpec& seed) {
    return ordered_json{{"master", seed.master}, {"stream", seed.stream}};
}

ordered_json to_json(const EstimateResult& e) {
    ordered_json j;
    j["n"] = e.level;
    j["N"] = e.samples;
    j["hits"] = e.hits;
    j["p_hat"] = e.p_hat;
    j["se"] = e.std_error;
    j["ci"] = ordered_json::array({e.ci_low, e.ci_high});
    j["seed"] = to_json(e.seed);
    return j;
}

ordered_json to_json(const MeasureSequence& seq) {
    ordered_json j;
    j["common_random_numbers"] = seq.common_samples;
    j["estimates"] = ordered_json::array();
    for (const auto& e : seq.estimates) j["estimates"].push_back(to_json(e));
    j["exact_nonincreasing"] = seq.exact_nonincreasing;
    j["consistent_with_decreasing"] = seq.consistent_decreasing;
    j["phi_hat"] = seq.phi_hat;
    j["trend_slope"] = seq.trend_slope;
    return j;
}

ordered_json to_json(const SupBallBound& b) {
    ordered_json j;
    j["a"] = b.a;
    j["m"] = b.m;
    j["n"] = b.level;
    j["chebyshev_prelimit"] = b.chebyshev_prelimit;
    j["limit"] = b.limit;
    j["exact_increment_product"] = b.exact_increment_product;
    return j;
}

ordered_json to_json(const HolderBound& b) {
    ordered_json j;
    j["alpha"] = b.alpha;
    j["a"] = b.a;
    j["lambda"] = b.lambda;
    j["n"] = b.level;
    j["psi"] = b.psi_value;
    j["prelimit"] = b.prelimit;
    j["limit"] = b.limit;
    j["exact_increment_product"] = b.exact_increment_product;
    return j;
}

ordered_json to_json(const CheckReport& c) {
    ordered_json j;
    j["check"] = c.name;
    j["pass"] = c.pass;
    j["exact_identity"] = c.exact_identity;
    j["discrepancy"] = c.discrepancy;
    j["discrepancy_se_units"] = c.discrepancy_se_units;
    j["estimates"] = ordered_json::array();
    for (const auto& e : c.estimates) j["estimates"].push_back(to_json(e));
    j["detail"] = c.detail;
    return j;
}

ordered_json to_json(const MuInftyReport& r) {
    ordered_json j;
    j["alpha"] = r.alpha;
    j["lambda"] = r.lambda;
    j["window"] = r.window;
    j["level_per_unit"] = r.level_per_unit;
    auto seq = to_json(r.sequence);
    for (auto& e : seq["estimates"]) {
        e["r"] = e["n"];
        e.erase("n");
    }
    j["sequence"] = seq;
    if (r.bound_checked) {
        j["bound"] = ordered_json{{"r", r.bound_r},
                                  {"exp_minus_r_over_lambda2", r.bound_value},
                                  {"exp_minus_1_over_lambda", r.bound_value_weak},
                                  {"pass", r.bound_pass}};
    }
    return j;
}

ordered_json to_json(const SeriesValue& s) {
    ordered_json j;
    j["value"] = s.value;
    j["error_bound"] = s.error_bound;
    j["terms"] = s.terms;
    return j;
}

ordered_json to_json(const RandomWalkEstimate& r) {
    ordered_json j;
    j["p_hat"] = r.p_hat;
    j["se"] = r.std_error;
    j["steps"] = r.steps;
    j["N"] = r.samples;
    j["seed"] = to_json(r.seed);
    return j;
}

std::string sequence_csv(const MeasureSequence& seq, const std::string& level_column) {
    std::string out = level_column + ",N,hits,p_hat,se,ci_low,ci_high\n";
    for (const auto& e : seq.estimates) {
        out += std::to_string(e.level);
        out += ",";
        out += std::to_string(e.samples);
        out += ",";
        out += std::to_string(e.hits);
        out += ",";
        out += shortest(e.p_hat);
        out += ",";
        out += shortest(e.std_error);
        out += ",";
        out += shortest(e.ci_low);
        out += ",";
        out += shortest(e.ci_high);
        out += "\n";
    }
    return out;
}

} // namespace wiener
