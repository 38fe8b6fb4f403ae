#include "sigmarev/signal.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "sigmarev/error.hpp"
#include "sigmarev/kernels.hpp"

namespace sigmarev {

void BandConfig::validate() const {
  if (window < kMinWindow)
    throw Error(ErrorCode::InvalidArgument,
                "window must be at least " + std::to_string(kMinWindow) + ", got " +
                    std::to_string(window));
  if (!(k > 0.0) || !std::isfinite(k))
    throw Error(ErrorCode::InvalidArgument, "band multiplier k must be positive");
  if (momentum_pairs < 1 || momentum_pairs > window)
    throw Error(ErrorCode::InvalidArgument, "momentum pairs must lie in [1, window]");
}

std::string_view to_string(Direction d) noexcept {
  switch (d) {
    case Direction::None: return "none";
    case Direction::LongNextDay: return "long-next-day";
    case Direction::ShortNextDay: return "short-next-day";
  }
  return "none";
}

std::vector<double> rolling_std(std::span<const double> values, std::size_t window) {
  if (window < 2) throw Error(ErrorCode::InvalidArgument, "rolling window must be >= 2");
  if (values.size() < window + 1)
    throw Error(ErrorCode::InsufficientData,
                "need " + std::to_string(window + 1) + " returns for a " + std::to_string(window) +
                    "-day band, have " + std::to_string(values.size()));
  const auto& k = kernels::active();
  const double denom = static_cast<double>(window - 1);
  std::vector<double> out(values.size() - window);
  for (std::size_t i = window; i < values.size(); ++i) {
    const double* w = values.data() + (i - window);
    const double mu = k.sum(w, window) / static_cast<double>(window);
    out[i - window] = std::sqrt(k.sum_sq_dev(w, window, mu) / denom);
  }
  return out;
}

std::vector<SigmaPoint> rolling_sigma(const ReturnSeries& returns, const BandConfig& config) {
  config.validate();
  const auto values = returns.values();
  const auto sig = rolling_std(values, config.window);
  std::vector<SigmaPoint> out(sig.size());
  for (std::size_t j = 0; j < sig.size(); ++j)
    out[j] = {returns.points()[j + config.window].date, sig[j]};
  return out;
}

SignalDecision decide(Date date, double today_return, double sigma, const BandConfig& config) {
  const double base = baseline(config.mode);
  SignalDecision d;
  d.date = date;
  d.today_return = today_return;
  d.sigma = sigma;
  d.band = config.k * sigma;
  const double excess = today_return - base;
  d.triggered = std::abs(excess) > d.band;
  if (d.triggered) {
    d.direction = (config.short_on_positive_breach && excess > 0.0) ? Direction::ShortNextDay
                                                                     : Direction::LongNextDay;
    d.expected_range = std::pair{base, base + d.band};
  }
  return d;
}

namespace {

std::size_t require_index(const ReturnSeries& returns, Date date) {
  const auto idx = returns.index_of(date);
  if (!idx) throw Error(ErrorCode::UnknownDate, returns.ticker() + " has no return on " + date.iso());
  return *idx;
}

MomentumEstimate momentum_at(std::span<const double> r, std::size_t i, std::size_t pairs) {
  MomentumEstimate m;
  double total = 0.0;
  for (std::size_t j = 0; j < pairs; ++j) total += r[i - j] - r[i - j - 1];
  m.slope = total / static_cast<double>(pairs);
  m.r0 = r[i];
  m.t_span = 1;
  m.lookback_pairs = pairs;
  m.r1_forecast = m.slope * static_cast<double>(m.t_span) + m.r0;
  return m;
}

}  // namespace

MomentumEstimate momentum_estimate(const ReturnSeries& returns, Date date,
                                   std::size_t lookback_pairs) {
  if (lookback_pairs < 1) throw Error(ErrorCode::InvalidArgument, "lookback_pairs must be >= 1");
  const std::size_t i = require_index(returns, date);
  if (i < lookback_pairs)
    throw Error(ErrorCode::InsufficientHistory,
                "momentum over " + std::to_string(lookback_pairs) + " pair(s) needs " +
                    std::to_string(lookback_pairs + 1) + " returns up to " + date.iso());
  const auto values = returns.values();
  return momentum_at(values, i, lookback_pairs);
}

SignalDecision evaluate_signal(const ReturnSeries& returns, Date date, const BandConfig& config) {
  config.validate();
  const std::size_t i = require_index(returns, date);
  if (i < config.window)
    throw Error(ErrorCode::InsufficientHistory,
                returns.ticker() + ": " + std::to_string(i) + " returns before " + date.iso() +
                    ", band needs " + std::to_string(config.window));
  const auto values = returns.values();
  const std::span<const double> window(values.data() + (i - config.window), config.window);
  const double mu = kernels::sum(window) / static_cast<double>(config.window);
  const double sigma =
      std::sqrt(kernels::sum_sq_dev(window, mu) / static_cast<double>(config.window - 1));
  if (!(sigma > 0.0))
    throw Error(ErrorCode::ZeroVariance, returns.ticker() + ": band is zero on " + date.iso());
  SignalDecision d = decide(date, values[i], sigma, config);
  d.momentum = momentum_at(values, i, config.momentum_pairs);
  return d;
}

void write_band_csv(const ReturnSeries& returns, const BandConfig& config, std::ostream& out) {
  const double base = baseline(config.mode);
  out << "Date,Sigma,UpperBand,LowerBand\n";
  char buf[96];
  for (const SigmaPoint& p : rolling_sigma(returns, config)) {
    std::snprintf(buf, sizeof buf, ",%.10g,%.10g,%.10g\n", p.sigma, base + config.k * p.sigma,
                  base - config.k * p.sigma);
    out << p.date.iso() << buf;
  }
}

}  // namespace sigmarev
