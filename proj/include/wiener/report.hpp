#pragma once

#include <string>

#include <json.hpp>

#include "wiener/infinite.hpp"
#include "wiener/measure.hpp"
#include "wiener/oracles.hpp"

namespace wiener {

inline constexpr const char* kReportSchema = "wiener-meter/1";

nlohmann::ordered_json to_json(const SeedSpec& seed);
nlohmann::ordered_json to_json(const EstimateResult& e);
nlohmann::ordered_json to_json(const MeasureSequence& seq);
nlohmann::ordered_json to_json(const SupBallBound& b);
nlohmann::ordered_json to_json(const HolderBound& b);
nlohmann::ordered_json to_json(const CheckReport& c);
nlohmann::ordered_json to_json(const MuInftyReport& r);
nlohmann::ordered_json to_json(const SeriesValue& s);
nlohmann::ordered_json to_json(const RandomWalkEstimate& r);

// CSV of a per-level sequence, plot-ready. `level_column` names the first
// column ("n" for dyadic levels, "r" for horizons).
std::string sequence_csv(const MeasureSequence& seq,
                         const std::string& level_column = "n");

} // namespace wiener
