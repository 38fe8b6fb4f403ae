#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sigmarev/date.hpp"

namespace sigmarev {

struct OhlcBar {
  Date date;
  double open = 0.0;
  double high = 0.0;
  double low = 0.0;
  double close = 0.0;
  double adj_close = 0.0;
  std::uint64_t volume = 0;

  /// Positive prices and a high/low range that brackets open and close.
  bool valid() const noexcept;

  friend bool operator==(const OhlcBar&, const OhlcBar&) = default;
};

/// Ordered daily history for one ticker. Dates strictly increase; gaps
/// (weekends, holidays) are allowed.
class PriceSeries {
public:
  PriceSeries() = default;
  /// Validates the ticker, every bar, and strict date order.
  PriceSeries(std::string ticker, std::vector<OhlcBar> bars);

  const std::string& ticker() const noexcept { return ticker_; }
  const std::vector<OhlcBar>& bars() const noexcept { return bars_; }
  std::size_t size() const noexcept { return bars_.size(); }
  bool empty() const noexcept { return bars_.empty(); }

  /// Bars with from <= date <= to.
  PriceSeries between(Date from, Date to) const;

  friend bool operator==(const PriceSeries&, const PriceSeries&) = default;

private:
  std::string ticker_;
  std::vector<OhlcBar> bars_;
};

/// Uppercase symbol, 1-10 chars from [A-Z0-9.^-].
bool valid_ticker(std::string_view ticker) noexcept;

inline constexpr std::string_view kCsvHeader = "Date,Open,High,Low,Close,Adj Close,Volume";

/// Parses the seven-column daily CSV. Rows may arrive in any order; the result
/// is sorted by date. Errors: MalformedHeader, MalformedRow (with line),
/// DuplicateDate, EmptyInput.
PriceSeries parse_csv(std::string_view text, const std::string& ticker);
PriceSeries parse_csv(std::istream& in, const std::string& ticker);

/// Exact text written by save_series.
std::string format_csv(const PriceSeries& series);
void save_series(const PriceSeries& series, const std::filesystem::path& path);
/// Reads a CSV file; ticker defaults to the uppercased file stem.
PriceSeries load_series(const std::filesystem::path& path,
                        std::optional<std::string> ticker = std::nullopt);

std::string ticker_from_path(const std::filesystem::path& path);

// ---------------------------------------------------------------- remote

struct TransportResponse {
  int status = 0;  // 0 when the connection itself failed
  std::string body;
  std::string error;
};

/// GET `url`. Injected so tests can substitute canned responses.
using Transport = std::function<TransportResponse(const std::string& url)>;

/// http(s):// via cpp-httplib and file:// from the local filesystem.
Transport http_transport();

/// Placeholders: {ticker}, {from}, {to} (ISO dates), {from_epoch}, {to_epoch}
/// (Unix seconds; to_epoch is the end of the `to` day).
std::string expand_endpoint(std::string_view tmpl, std::string_view ticker, Date from, Date to);

inline constexpr std::string_view kDefaultEndpoint =
    "https://query1.finance.yahoo.com/v7/finance/download/"
    "{ticker}?period1={from_epoch}&period2={to_epoch}&interval=1d&events=history";

/// Downloads, parses, and clips to [from, to]. TransportError carries the
/// HTTP status when one was received.
PriceSeries fetch_remote(const std::string& ticker, Date from, Date to, std::string_view endpoint,
                         const Transport& transport);

}  // namespace sigmarev
