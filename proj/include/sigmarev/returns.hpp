#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sigmarev/date.hpp"
#include "sigmarev/market_data.hpp"

namespace sigmarev {

/// `Simple`: Close_t / Close_{t-1} − 1 (mean-zero). `Ratio`: the bare quotient.
enum class ReturnMode { Simple, Ratio };
enum class PriceField { Close, AdjClose };

std::string_view to_string(ReturnMode mode) noexcept;
std::string_view to_string(PriceField field) noexcept;
std::optional<ReturnMode> parse_return_mode(std::string_view text) noexcept;

/// The value a return takes when the price is unchanged: 0 (simple) or 1 (ratio).
constexpr double baseline(ReturnMode mode) noexcept { return mode == ReturnMode::Simple ? 0.0 : 1.0; }

struct ReturnPoint {
  Date date;
  double value = 0.0;
  friend bool operator==(const ReturnPoint&, const ReturnPoint&) = default;
};

/// Daily returns dated by the later of the two bars; one point per
/// consecutive bar pair, so calendar gaps are ignored.
class ReturnSeries {
public:
  ReturnSeries() = default;
  ReturnSeries(std::string ticker, ReturnMode mode, std::vector<ReturnPoint> points);

  const std::string& ticker() const noexcept { return ticker_; }
  ReturnMode mode() const noexcept { return mode_; }
  const std::vector<ReturnPoint>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }

  /// Contiguous copy of the return values, for the kernels.
  std::vector<double> values() const;
  std::optional<std::size_t> index_of(Date date) const noexcept;
  /// Points dated on or before `date`.
  ReturnSeries truncated_after(Date date) const;

private:
  std::string ticker_;
  ReturnMode mode_ = ReturnMode::Simple;
  std::vector<ReturnPoint> points_;
};

/// InsufficientData when fewer than two bars.
ReturnSeries daily_returns(const PriceSeries& series, ReturnMode mode = ReturnMode::Simple,
                           PriceField field = PriceField::Close);

/// `Date,Return` with 10 significant digits.
void write_returns_csv(const ReturnSeries& series, std::ostream& out);

}  // namespace sigmarev
