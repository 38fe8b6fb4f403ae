#include "sigmarev/backtest.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <tuple>

#include "sigmarev/error.hpp"
#include "sigmarev/kernels.hpp"

namespace sigmarev {
namespace {

struct SeriesScan {
  TickerSummary summary;
  std::vector<TriggerEvent> events;
  std::size_t outside = 0;
};

SeriesScan scan_series(const ReturnSeries& rs, const BandConfig& config) {
  SeriesScan scan;
  scan.summary.ticker = rs.ticker();
  const auto values = rs.values();
  const auto sigmas = rolling_std(values, config.window);
  const double base = baseline(config.mode);
  const auto& pts = rs.points();

  for (std::size_t j = 0; j < sigmas.size(); ++j) {
    if (!(sigmas[j] > 0.0)) continue;
    const std::size_t i = j + config.window;
    ++scan.summary.evaluable_dates;
    const SignalDecision d = decide(pts[i].date, values[i], sigmas[j], config);
    if (!d.triggered) continue;
    ++scan.outside;
    if (i + 1 >= values.size()) {
      ++scan.summary.open_triggers;
      continue;
    }
    TriggerEvent ev;
    ev.ticker = rs.ticker();
    ev.trigger_date = pts[i].date;
    ev.trigger_return = values[i];
    ev.band = d.band;
    ev.next_date = pts[i + 1].date;
    ev.next_return = values[i + 1];
    const double excess = ev.next_return - base;
    ev.reverted_positive = excess > 0.0;
    ev.within_expected_range = excess > 0.0 && excess <= d.band;
    scan.events.push_back(std::move(ev));
  }
  scan.summary.n_triggers = scan.events.size();
  if (!scan.events.empty()) {
    const auto pos = std::count_if(scan.events.begin(), scan.events.end(),
                                   [](const TriggerEvent& e) { return e.reverted_positive; });
    scan.summary.p_positive =
        static_cast<double>(pos) / static_cast<double>(scan.events.size());
  }
  return scan;
}

}  // namespace

BacktestReport run_backtest(std::span<const ReturnSeries> series, const BandConfig& config) {
  config.validate();
  BacktestReport rep;
  rep.config = config;

  std::vector<std::future<SeriesScan>> jobs;
  for (const ReturnSeries& rs : series) {
    if (rs.mode() != config.mode)
      throw Error(ErrorCode::InvalidArgument, rs.ticker() + ": return mode differs from config");
    if (rs.size() < config.window + 1) {
      rep.skipped.push_back({rs.ticker(), std::string(to_string(ErrorCode::InsufficientHistory))});
      continue;
    }
    jobs.push_back(std::async(std::launch::async, scan_series, std::cref(rs), std::cref(config)));
  }
  if (jobs.empty())
    throw Error(ErrorCode::InsufficientData,
                "no series has the " + std::to_string(config.window + 1) +
                    " returns one band evaluation needs");

  for (auto& job : jobs) {
    SeriesScan scan = job.get();
    rep.open_triggers += scan.summary.open_triggers;
    rep.events.insert(rep.events.end(), std::make_move_iterator(scan.events.begin()),
                      std::make_move_iterator(scan.events.end()));
    rep.per_ticker.push_back(std::move(scan.summary));
  }

  std::sort(rep.events.begin(), rep.events.end(), [](const TriggerEvent& a, const TriggerEvent& b) {
    return std::tie(a.ticker, a.trigger_date) < std::tie(b.ticker, b.trigger_date);
  });
  std::sort(rep.per_ticker.begin(), rep.per_ticker.end(),
            [](const auto& a, const auto& b) { return a.ticker < b.ticker; });
  std::sort(rep.skipped.begin(), rep.skipped.end(),
            [](const auto& a, const auto& b) { return a.ticker < b.ticker; });

  rep.n_triggers = rep.events.size();
  if (rep.n_triggers > 0) {
    const double n = static_cast<double>(rep.n_triggers);
    std::size_t pos = 0, within = 0;
    std::vector<double> next(rep.n_triggers);
    for (std::size_t i = 0; i < rep.n_triggers; ++i) {
      pos += rep.events[i].reverted_positive;
      within += rep.events[i].within_expected_range;
      next[i] = rep.events[i].next_return;
    }
    rep.p_positive = static_cast<double>(pos) / n;
    rep.p_within_range = static_cast<double>(within) / n;
    rep.mean_next_return = kernels::sum(next) / n;
  }
  return rep;
}

double outside_band_fraction(const ReturnSeries& returns, const BandConfig& config) {
  config.validate();
  const SeriesScan scan = scan_series(returns, config);
  if (scan.summary.evaluable_dates == 0)
    throw Error(ErrorCode::InsufficientData, returns.ticker() + ": no date has a positive band");
  return static_cast<double>(scan.outside) / static_cast<double>(scan.summary.evaluable_dates);
}

void write_events_csv(std::span<const TriggerEvent> events, std::ostream& out) {
  out << "Ticker,TriggerDate,TriggerReturn,Band,NextDate,NextReturn,RevertedPositive\n";
  char buf[160];
  for (const TriggerEvent& e : events) {
    std::snprintf(buf, sizeof buf, "%s,%s,%.10g,%.10g,%s,%.10g,%s\n", e.ticker.c_str(),
                  e.trigger_date.iso().c_str(), e.trigger_return, e.band,
                  e.next_date.iso().c_str(), e.next_return, e.reverted_positive ? "true" : "false");
    out << buf;
  }
}

}  // namespace sigmarev
