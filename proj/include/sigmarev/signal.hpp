#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "sigmarev/date.hpp"
#include "sigmarev/returns.hpp"

namespace sigmarev {

/// Rolling band parameters. The band at date d is k times the sample standard
/// deviation of the `window` returns strictly before d.
struct BandConfig {
  std::size_t window = 252;
  double k = 2.0;
  ReturnMode mode = ReturnMode::Simple;
  /// Consecutive-return pairs averaged into the momentum slope.
  std::size_t momentum_pairs = 1;
  /// Experimental: positive breaches map to a short verdict instead of long.
  bool short_on_positive_breach = false;

  static constexpr std::size_t kMinWindow = 30;
  /// InvalidArgument unless window >= 30, k > 0 and 1 <= momentum_pairs <= window.
  void validate() const;
};

enum class Direction { None, LongNextDay, ShortNextDay };
std::string_view to_string(Direction d) noexcept;

/// Linear extrapolation of the return path one trading day ahead:
/// r1_forecast = slope · t_span + r0.
struct MomentumEstimate {
  double slope = 0.0;
  double r0 = 0.0;
  double r1_forecast = 0.0;
  int t_span = 1;
  std::size_t lookback_pairs = 1;
};

struct SignalDecision {
  Date date;
  double today_return = 0.0;
  double sigma = 0.0;
  double band = 0.0;
  bool triggered = false;
  Direction direction = Direction::None;
  /// (baseline, baseline + band) when triggered.
  std::optional<std::pair<double, double>> expected_range;
  MomentumEstimate momentum;
};

struct SigmaPoint {
  Date date;
  double sigma = 0.0;
};

/// Sample standard deviation of values[i-window, i) for every i in
/// [window, n). Requires window >= 2 and n >= window + 1 (InsufficientData).
std::vector<double> rolling_std(std::span<const double> values, std::size_t window);

/// Dated rolling sigma for every evaluable return.
std::vector<SigmaPoint> rolling_sigma(const ReturnSeries& returns, const BandConfig& config);

/// The band rule on its own: trigger iff |r − baseline| > k·sigma.
SignalDecision decide(Date date, double today_return, double sigma, const BandConfig& config);

/// UnknownDate, InsufficientHistory (fewer than `window` prior returns),
/// ZeroVariance.
SignalDecision evaluate_signal(const ReturnSeries& returns, Date date, const BandConfig& config);

/// Slope averaged over the `lookback_pairs` most recent consecutive pairs
/// ending at `date`, forecast one trading day ahead. InsufficientHistory when
/// fewer than lookback_pairs + 1 returns are available.
MomentumEstimate momentum_estimate(const ReturnSeries& returns, Date date,
                                   std::size_t lookback_pairs = 1);

/// `Date,Sigma,UpperBand,LowerBand`.
void write_band_csv(const ReturnSeries& returns, const BandConfig& config, std::ostream& out);

}  // namespace sigmarev
