#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "sigmarev/backtest.hpp"
#include "sigmarev/normality.hpp"
#include "sigmarev/screener.hpp"
#include "sigmarev/signal.hpp"

namespace sigmarev::report {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchemaVersion = "1.0.0";
inline constexpr std::string_view kPinnedTimestamp = "1970-01-01T00:00:00Z";

/// Every floating-point value in a report is rounded to 10 significant
/// digits, which keeps payloads identical across kernel variants.
double round10(double x);
Json number(double x);
Json number(const std::optional<double>& x);

Json to_json(const NormalityReport& r, std::string_view sample);
Json to_json(const MomentumEstimate& m);
Json to_json(const SignalDecision& d, const BandConfig& config);
Json to_json(const BacktestReport& r, PriceField field);
Json to_json(const ScreenResult& r, const ScreenConfig& config);

Json envelope(std::string_view command, Json payload, std::string_view generated_at);

/// Two-space indented output, byte-compatible with Python's
/// `json.dumps(obj, indent=2)` plus a trailing newline. Doubles use the
/// shortest round-trip form.
std::string dump(const Json& j);

}  // namespace sigmarev::report
