#include "sigmarev/market_data.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

#include "sigmarev/error.hpp"

namespace sigmarev {

bool OhlcBar::valid() const noexcept {
  const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(open) || !positive(high) || !positive(low) || !positive(close) ||
      !positive(adj_close))
    return false;
  return low <= high && low <= std::min(open, close) && high >= std::max(open, close);
}

bool valid_ticker(std::string_view ticker) noexcept {
  if (ticker.empty() || ticker.size() > 10) return false;
  return std::all_of(ticker.begin(), ticker.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '^';
  });
}

PriceSeries::PriceSeries(std::string ticker, std::vector<OhlcBar> bars)
    : ticker_(std::move(ticker)), bars_(std::move(bars)) {
  if (!valid_ticker(ticker_)) throw Error(ErrorCode::InvalidTicker, "'" + ticker_ + "'");
  for (std::size_t i = 0; i < bars_.size(); ++i) {
    if (!bars_[i].valid())
      throw Error(ErrorCode::MalformedRow, "bar " + bars_[i].date.iso() + " violates OHLC bounds");
    if (i > 0 && !(bars_[i - 1].date < bars_[i].date))
      throw Error(bars_[i - 1].date == bars_[i].date ? ErrorCode::DuplicateDate
                                                      : ErrorCode::InvalidArgument,
                  "bar dates must strictly increase at " + bars_[i].date.iso());
  }
}

PriceSeries PriceSeries::between(Date from, Date to) const {
  std::vector<OhlcBar> kept;
  std::copy_if(bars_.begin(), bars_.end(), std::back_inserter(kept),
               [&](const OhlcBar& b) { return from <= b.date && b.date <= to; });
  return PriceSeries(ticker_, std::move(kept));
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::optional<double> parse_price(std::string_view s) {
  if (s.empty()) return std::nullopt;
  int dots = 0;
  for (char c : s) {
    if (c == '.')
      ++dots;
    else if (c < '0' || c > '9')
      return std::nullopt;
  }
  if (dots > 1 || s == ".") return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, std::chars_format::fixed);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<std::uint64_t> parse_volume(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

OhlcBar parse_row(std::string_view line, std::size_t lineno) {
  const auto fields = split_fields(line);
  if (fields.size() != 7)
    throw Error::at_line(ErrorCode::MalformedRow, lineno,
                         "expected 7 fields, got " + std::to_string(fields.size()));
  OhlcBar bar;
  const auto date = Date::parse(fields[0]);
  if (!date)
    throw Error::at_line(ErrorCode::MalformedRow, lineno, "bad date '" + std::string(fields[0]) + "'");
  bar.date = *date;
  static constexpr const char* names[] = {"Open", "High", "Low", "Close", "Adj Close"};
  double* slots[] = {&bar.open, &bar.high, &bar.low, &bar.close, &bar.adj_close};
  for (int k = 0; k < 5; ++k) {
    const auto v = parse_price(fields[k + 1]);
    if (!v)
      throw Error::at_line(ErrorCode::MalformedRow, lineno,
                           std::string(names[k]) + " is not a decimal: '" +
                               std::string(fields[k + 1]) + "'");
    *slots[k] = *v;
  }
  const auto vol = parse_volume(fields[6]);
  if (!vol)
    throw Error::at_line(ErrorCode::MalformedRow, lineno,
                         "Volume is not a non-negative integer: '" + std::string(fields[6]) + "'");
  bar.volume = *vol;
  if (!bar.valid())
    throw Error::at_line(ErrorCode::MalformedRow, lineno, "prices violate OHLC bounds");
  return bar;
}

std::string_view chomp(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

void append_decimal(std::string& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  out.append(buf, ptr);
}

}  // namespace

PriceSeries parse_csv(std::string_view text, const std::string& ticker) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(chomp(text.substr(start, nl - start)));
    start = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();

  if (lines.empty() || lines.front() != kCsvHeader)
    throw Error::at_line(ErrorCode::MalformedHeader, 1,
                         "expected '" + std::string(kCsvHeader) + "'");
  if (lines.size() == 1) throw Error(ErrorCode::EmptyInput, "no data rows");

  std::vector<OhlcBar> bars;
  bars.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) bars.push_back(parse_row(lines[i], i + 1));

  std::vector<std::size_t> order(bars.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return bars[a].date < bars[b].date; });
  std::vector<OhlcBar> sorted;
  sorted.reserve(bars.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0 && bars[order[k]].date == bars[order[k - 1]].date)
      throw Error::at_line(ErrorCode::DuplicateDate, order[k] + 2,
                           "date " + bars[order[k]].date.iso() + " repeated");
    sorted.push_back(bars[order[k]]);
  }
  return PriceSeries(ticker, std::move(sorted));
}

PriceSeries parse_csv(std::istream& in, const std::string& ticker) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_csv(std::string_view(text), ticker);
}

std::string format_csv(const PriceSeries& series) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const OhlcBar& b : series.bars()) {
    out += b.date.iso();
    for (double v : {b.open, b.high, b.low, b.close, b.adj_close}) {
      out += ',';
      append_decimal(out, v);
    }
    out += ',';
    out += std::to_string(b.volume);
    out += '\n';
  }
  return out;
}

void save_series(const PriceSeries& series, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  const std::string text = format_csv(series);
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

std::string ticker_from_path(const std::filesystem::path& path) {
  std::string t = path.stem().string();
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return t;
}

PriceSeries load_series(const std::filesystem::path& path, std::optional<std::string> ticker) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  return parse_csv(f, ticker ? *ticker : ticker_from_path(path));
}

std::string expand_endpoint(std::string_view tmpl, std::string_view ticker, Date from, Date to) {
  const std::pair<std::string_view, std::string> subs[] = {
      {"{ticker}", std::string(ticker)},
      {"{from}", from.iso()},
      {"{to}", to.iso()},
      {"{from_epoch}", std::to_string(from.epoch_seconds())},
      {"{to_epoch}", std::to_string(to.plus_days(1).epoch_seconds())},
  };
  std::string out;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    bool replaced = false;
    if (tmpl[i] == '{') {
      for (const auto& [key, value] : subs) {
        if (tmpl.substr(i, key.size()) == key) {
          out += value;
          i += key.size();
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) out += tmpl[i++];
  }
  return out;
}

PriceSeries fetch_remote(const std::string& ticker, Date from, Date to, std::string_view endpoint,
                         const Transport& transport) {
  if (!valid_ticker(ticker)) throw Error(ErrorCode::InvalidTicker, "'" + ticker + "'");
  if (to < from) throw Error(ErrorCode::InvalidArgument, "range end precedes start");
  const std::string url = expand_endpoint(endpoint, ticker, from, to);
  const TransportResponse resp = transport(url);
  if (resp.status == 0)
    throw Error::transport("GET " + url + " failed: " + resp.error, std::nullopt);
  if (resp.status < 200 || resp.status >= 300)
    throw Error::transport("GET " + url + " returned an error status", resp.status);
  return parse_csv(std::string_view(resp.body), ticker).between(from, to);
}

}  // namespace sigmarev
