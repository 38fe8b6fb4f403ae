#pragma once

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sigmarev/date.hpp"
#include "sigmarev/market_data.hpp"
#include "sigmarev/normality.hpp"
#include "sigmarev/signal.hpp"

namespace sigmarev {

struct ScreenConfig {
  BandConfig band;
  double alpha = 0.05;
  PriceField price_field = PriceField::Close;
  /// Minimum number of bars per ticker.
  std::size_t min_history = 756;
  /// A ticker whose last bar is more than this many weekdays before as_of is stale.
  int stale_days = 5;
  /// Test normality on every return instead of the band window.
  bool full_history_normality = false;
  /// Defaults to the latest bar date across the universe.
  std::optional<Date> as_of;
};

enum class SkipReason {
  InsufficientHistory,
  Stale,
  ZeroVariance,
  DegenerateSample,
  NormalityRejected,
  InsideBand,
  MissingData,
  DataError,
};
std::string_view to_string(SkipReason reason) noexcept;

struct NormalitySummary {
  std::size_t n = 0;
  double w = 0.0;
  double p_value = 0.0;
};

struct ScreenCandidate {
  std::string ticker;
  Date date;
  double today_return = 0.0;
  double sigma = 0.0;
  double band = 0.0;
  double breach_ratio = 0.0;  // |r − baseline| / band
  NormalitySummary normality;
  MomentumEstimate momentum;
};

struct ScreenSkip {
  std::string ticker;
  SkipReason reason;
  std::string detail;
};

struct ScreenResult {
  Date as_of;
  std::vector<ScreenCandidate> candidates;  // descending breach ratio, then ticker
  std::vector<ScreenSkip> skipped;          // by ticker
};

/// Runs every ticker's pipeline concurrently; each ticker ends up either as a
/// candidate or in `skipped` with one reason. EmptyUniverse, DuplicateTicker.
ScreenResult screen(std::span<const PriceSeries> universe, const ScreenConfig& config);

/// One ticker per line; '#' starts a comment; blank lines ignored. Tickers
/// are uppercased. InvalidTicker on malformed symbols.
std::vector<std::string> read_manifest(std::istream& in);

/// Restores the documented ordering after callers append their own skips.
void sort_result(ScreenResult& result);

}  // namespace sigmarev
