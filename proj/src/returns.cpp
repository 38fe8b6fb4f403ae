#include "sigmarev/returns.hpp"

#include <algorithm>
#include <cstdio>

#include "sigmarev/error.hpp"
#include "sigmarev/kernels.hpp"

namespace sigmarev {

std::string_view to_string(ReturnMode mode) noexcept {
  return mode == ReturnMode::Simple ? "simple" : "ratio";
}

std::string_view to_string(PriceField field) noexcept {
  return field == PriceField::Close ? "close" : "adj_close";
}

std::optional<ReturnMode> parse_return_mode(std::string_view text) noexcept {
  if (text == "simple") return ReturnMode::Simple;
  if (text == "ratio") return ReturnMode::Ratio;
  return std::nullopt;
}

ReturnSeries::ReturnSeries(std::string ticker, ReturnMode mode, std::vector<ReturnPoint> points)
    : ticker_(std::move(ticker)), mode_(mode), points_(std::move(points)) {
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (!(points_[i - 1].date < points_[i].date))
      throw Error(ErrorCode::InvalidArgument, "return dates must strictly increase");
}

std::vector<double> ReturnSeries::values() const {
  std::vector<double> out(points_.size());
  std::transform(points_.begin(), points_.end(), out.begin(),
                 [](const ReturnPoint& p) { return p.value; });
  return out;
}

std::optional<std::size_t> ReturnSeries::index_of(Date date) const noexcept {
  auto it = std::lower_bound(points_.begin(), points_.end(), date,
                             [](const ReturnPoint& p, Date d) { return p.date < d; });
  if (it == points_.end() || it->date != date) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

ReturnSeries ReturnSeries::truncated_after(Date date) const {
  auto it = std::upper_bound(points_.begin(), points_.end(), date,
                             [](Date d, const ReturnPoint& p) { return d < p.date; });
  return ReturnSeries(ticker_, mode_, std::vector<ReturnPoint>(points_.begin(), it));
}

ReturnSeries daily_returns(const PriceSeries& series, ReturnMode mode, PriceField field) {
  const auto& bars = series.bars();
  if (bars.size() < 2)
    throw Error(ErrorCode::InsufficientData,
                series.ticker() + ": need at least 2 bars, have " + std::to_string(bars.size()));
  std::vector<double> prices(bars.size());
  std::transform(bars.begin(), bars.end(), prices.begin(), [field](const OhlcBar& b) {
    return field == PriceField::Close ? b.close : b.adj_close;
  });
  std::vector<double> ratios(bars.size() - 1);
  kernels::active().price_ratios(prices.data(), prices.size(), 1.0 - baseline(mode),
                                   ratios.data());

  std::vector<ReturnPoint> points(ratios.size());
  for (std::size_t i = 0; i < ratios.size(); ++i) points[i] = {bars[i + 1].date, ratios[i]};
  return ReturnSeries(series.ticker(), mode, std::move(points));
}

void write_returns_csv(const ReturnSeries& series, std::ostream& out) {
  out << "Date,Return\n";
  char buf[40];
  for (const ReturnPoint& p : series.points()) {
    std::snprintf(buf, sizeof buf, "%.10g", p.value);
    out << p.date.iso() << ',' << buf << '\n';
  }
}

}  // namespace sigmarev
