#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sigmarev/date.hpp"
#include "sigmarev/returns.hpp"
#include "sigmarev/signal.hpp"

namespace sigmarev {

/// One band breach and what the next trading day did.
struct TriggerEvent {
  std::string ticker;
  Date trigger_date;
  double trigger_return = 0.0;
  double band = 0.0;
  Date next_date;
  double next_return = 0.0;
  bool reverted_positive = false;      // next return above baseline
  bool within_expected_range = false;  // baseline < next <= baseline + band
};

struct TickerSummary {
  std::string ticker;
  std::size_t evaluable_dates = 0;
  std::size_t n_triggers = 0;
  std::size_t open_triggers = 0;
  std::optional<double> p_positive;
};

struct SkippedSeries {
  std::string ticker;
  std::string reason;
};

/// Pooled outcome of replaying the band rule. Triggers on a series' last date
/// have no next day yet; they are counted in `open_triggers` and excluded from
/// every aggregate. Consecutive-day triggers are independent events.
struct BacktestReport {
  BandConfig config;
  std::vector<TriggerEvent> events;  // sorted by (ticker, trigger_date)
  std::size_t n_triggers = 0;
  std::size_t open_triggers = 0;
  std::optional<double> p_positive;
  std::optional<double> p_within_range;
  std::optional<double> mean_next_return;
  std::vector<TickerSummary> per_ticker;  // sorted by ticker
  std::vector<SkippedSeries> skipped;     // too short for one band evaluation
};

/// Per-series extraction runs concurrently; aggregation is a sorted fold.
/// InsufficientData when no series can be evaluated.
BacktestReport run_backtest(std::span<const ReturnSeries> series, const BandConfig& config);

/// Fraction of evaluable dates (positive sigma) whose return breaches the band.
double outside_band_fraction(const ReturnSeries& returns, const BandConfig& config);

/// `Ticker,TriggerDate,TriggerReturn,Band,NextDate,NextReturn,RevertedPositive`.
void write_events_csv(std::span<const TriggerEvent> events, std::ostream& out);

}  // namespace sigmarev
