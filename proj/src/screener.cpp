#include "sigmarev/screener.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <future>
#include <set>
#include <variant>

#include "sigmarev/error.hpp"
#include "sigmarev/kernels.hpp"
#include "sigmarev/returns.hpp"

namespace sigmarev {

std::string_view to_string(SkipReason reason) noexcept {
  switch (reason) {
    case SkipReason::InsufficientHistory: return "InsufficientHistory";
    case SkipReason::Stale: return "Stale";
    case SkipReason::ZeroVariance: return "ZeroVariance";
    case SkipReason::DegenerateSample: return "DegenerateSample";
    case SkipReason::NormalityRejected: return "NormalityRejected";
    case SkipReason::InsideBand: return "InsideBand";
    case SkipReason::MissingData: return "MissingData";
    case SkipReason::DataError: return "DataError";
  }
  return "DataError";
}

namespace {

using Outcome = std::variant<ScreenCandidate, ScreenSkip>;

Outcome screen_one(const PriceSeries& full, const ScreenConfig& cfg, Date as_of) {
  const BandConfig& band = cfg.band;
  const PriceSeries ps = (cfg.as_of && !full.empty()) ? full.between(full.bars().front().date, as_of)
                                                      : full;
  const auto skip = [&](SkipReason r, std::string detail) {
    return ScreenSkip{ps.ticker(), r, std::move(detail)};
  };
  const std::size_t need = std::max(cfg.min_history, band.window + 2);
  if (ps.size() < need)
    return skip(SkipReason::InsufficientHistory,
                std::to_string(ps.size()) + " bars, need " + std::to_string(need));
  const Date last = ps.bars().back().date;
  if (weekdays_between(last, as_of) > cfg.stale_days)
    return skip(SkipReason::Stale, "last bar " + last.iso());

  const ReturnSeries rs = daily_returns(ps, band.mode, cfg.price_field);
  const auto values = rs.values();
  const std::size_t i = values.size() - 1;
  const Date today = rs.points()[i].date;

  SignalDecision decision;
  try {
    decision = evaluate_signal(rs, today, band);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ZeroVariance) return skip(SkipReason::ZeroVariance, e.what());
    throw;
  }

  std::span<const double> sample(values.data() + (i - band.window), band.window);
  if (cfg.full_history_normality) {
    const std::size_t n = std::min(values.size(), kShapiroMaxN);
    sample = std::span<const double>(values.data() + (values.size() - n), n);
  }
  NormalityReport norm;
  try {
    norm = shapiro_wilk(sample, cfg.alpha);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DegenerateSample)
      return skip(SkipReason::DegenerateSample, e.what());
    throw;
  }
  if (norm.reject_normality)
    return skip(SkipReason::NormalityRejected, "p = " + std::to_string(norm.p_value));
  if (!decision.triggered) return skip(SkipReason::InsideBand, "");

  ScreenCandidate c;
  c.ticker = ps.ticker();
  c.date = today;
  c.today_return = decision.today_return;
  c.sigma = decision.sigma;
  c.band = decision.band;
  c.breach_ratio = std::abs(decision.today_return - baseline(band.mode)) / decision.band;
  c.normality = {norm.n, norm.w, norm.p_value};
  c.momentum = decision.momentum;
  return c;
}

}  // namespace

void sort_result(ScreenResult& result) {
  std::sort(result.candidates.begin(), result.candidates.end(),
            [](const ScreenCandidate& a, const ScreenCandidate& b) {
              if (a.breach_ratio != b.breach_ratio) return a.breach_ratio > b.breach_ratio;
              return a.ticker < b.ticker;
            });
  std::sort(result.skipped.begin(), result.skipped.end(),
            [](const ScreenSkip& a, const ScreenSkip& b) { return a.ticker < b.ticker; });
}

ScreenResult screen(std::span<const PriceSeries> universe, const ScreenConfig& config) {
  if (universe.empty()) throw Error(ErrorCode::EmptyUniverse, "no tickers to screen");
  config.band.validate();
  if (!(config.alpha > 0.0 && config.alpha < 1.0))
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1)");
  if (config.stale_days < 0) throw Error(ErrorCode::InvalidArgument, "negative staleness");

  std::set<std::string> seen;
  Date latest{};
  bool any = false;
  for (const PriceSeries& ps : universe) {
    if (!seen.insert(ps.ticker()).second)
      throw Error(ErrorCode::DuplicateTicker, ps.ticker() + " listed twice");
    if (!ps.empty() && (!any || latest < ps.bars().back().date)) {
      latest = ps.bars().back().date;
      any = true;
    }
  }

  ScreenResult result;
  result.as_of = config.as_of ? *config.as_of : latest;

  std::vector<std::future<Outcome>> jobs;
  jobs.reserve(universe.size());
  for (const PriceSeries& ps : universe)
    jobs.push_back(std::async(std::launch::async, [&ps, &config, as_of = result.as_of]() -> Outcome {
      try {
        return screen_one(ps, config, as_of);
      } catch (const Error& e) {
        return ScreenSkip{ps.ticker(), SkipReason::DataError, e.what()};
      }
    }));
  for (auto& job : jobs) {
    Outcome o = job.get();
    if (auto* c = std::get_if<ScreenCandidate>(&o))
      result.candidates.push_back(std::move(*c));
    else
      result.skipped.push_back(std::get<ScreenSkip>(std::move(o)));
  }
  sort_result(result);
  return result;
}

std::vector<std::string> read_manifest(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    std::string t = line.substr(first, last - first + 1);
    std::transform(t.begin(), t.end(), t.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (!valid_ticker(t)) throw Error(ErrorCode::InvalidTicker, "manifest entry '" + t + "'");
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace sigmarev
