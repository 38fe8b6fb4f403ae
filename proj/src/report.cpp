#include "sigmarev/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace sigmarev::report {

double round10(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return std::strtod(buf, nullptr);
}

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round10(x);
}

Json number(const std::optional<double>& x) { return x ? number(*x) : Json(nullptr); }

Json to_json(const NormalityReport& r, std::string_view sample) {
  return Json{{"sample", sample},         {"n", r.n},
              {"w", number(r.w)},         {"p_value", number(r.p_value)},
              {"alpha", number(r.alpha)}, {"reject_normality", r.reject_normality}};
}

Json to_json(const MomentumEstimate& m) {
  return Json{{"slope", number(m.slope)},
              {"r0", number(m.r0)},
              {"r1_forecast", number(m.r1_forecast)},
              {"t_span", m.t_span},
              {"lookback_pairs", m.lookback_pairs}};
}

Json to_json(const SignalDecision& d, const BandConfig& config) {
  Json range = nullptr;
  if (d.expected_range)
    range = Json::array({number(d.expected_range->first), number(d.expected_range->second)});
  return Json{{"date", d.date.iso()},
              {"today_return", number(d.today_return)},
              {"sigma", number(d.sigma)},
              {"band", number(d.band)},
              {"k", number(config.k)},
              {"window", config.window},
              {"triggered", d.triggered},
              {"direction", to_string(d.direction)},
              {"expected_range", range},
              {"momentum", to_json(d.momentum)}};
}

Json to_json(const BacktestReport& r, PriceField field) {
  Json per = Json::array();
  for (const TickerSummary& t : r.per_ticker)
    per.push_back(Json{{"ticker", t.ticker},
                       {"evaluable_dates", t.evaluable_dates},
                       {"n_triggers", t.n_triggers},
                       {"open_triggers", t.open_triggers},
                       {"p_positive", number(t.p_positive)}});
  Json skipped = Json::array();
  for (const SkippedSeries& s : r.skipped)
    skipped.push_back(Json{{"ticker", s.ticker}, {"reason", s.reason}});
  Json events = Json::array();
  for (const TriggerEvent& e : r.events)
    events.push_back(Json{{"ticker", e.ticker},
                          {"trigger_date", e.trigger_date.iso()},
                          {"trigger_return", number(e.trigger_return)},
                          {"band", number(e.band)},
                          {"next_date", e.next_date.iso()},
                          {"next_return", number(e.next_return)},
                          {"reverted_positive", e.reverted_positive},
                          {"within_expected_range", e.within_expected_range}});
  return Json{{"config",
               {{"window", r.config.window},
                {"k", number(r.config.k)},
                {"return_mode", to_string(r.config.mode)},
                {"price_field", to_string(field)}}},
              {"overlap_policy", "independent"},
              {"series", r.per_ticker.size() + r.skipped.size()},
              {"n_triggers", r.n_triggers},
              {"open_triggers", r.open_triggers},
              {"p_positive", number(r.p_positive)},
              {"p_within_range", number(r.p_within_range)},
              {"mean_next_return", number(r.mean_next_return)},
              {"per_ticker", per},
              {"skipped", skipped},
              {"events", events}};
}

Json to_json(const ScreenResult& r, const ScreenConfig& config) {
  Json candidates = Json::array();
  for (const ScreenCandidate& c : r.candidates)
    candidates.push_back(Json{{"ticker", c.ticker},
                              {"date", c.date.iso()},
                              {"today_return", number(c.today_return)},
                              {"sigma", number(c.sigma)},
                              {"band", number(c.band)},
                              {"breach_ratio", number(c.breach_ratio)},
                              {"normality",
                               {{"n", c.normality.n},
                                {"w", number(c.normality.w)},
                                {"p_value", number(c.normality.p_value)}}},
                              {"momentum", to_json(c.momentum)}});
  Json skipped = Json::array();
  for (const ScreenSkip& s : r.skipped)
    skipped.push_back(Json{{"ticker", s.ticker}, {"reason", to_string(s.reason)}});
  return Json{{"as_of", r.as_of.iso()},
              {"config",
               {{"window", config.band.window},
                {"k", number(config.band.k)},
                {"alpha", number(config.alpha)},
                {"return_mode", to_string(config.band.mode)},
                {"min_history", config.min_history},
                {"stale_days", config.stale_days},
                {"normality_sample", config.full_history_normality ? "full" : "window"}}},
              {"candidates", candidates},
              {"skipped", skipped}};
}

Json envelope(std::string_view command, Json payload, std::string_view generated_at) {
  return Json{{"schema_version", kSchemaVersion},
              {"command", command},
              {"generated_at", generated_at},
              {"payload", std::move(payload)}};
}

namespace {

// Python float repr: shortest round-trip digits, scientific notation when the
// decimal exponent is < -4 or >= 16.
void append_double(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
  std::string_view sci(buf, static_cast<std::size_t>(end - buf));
  std::string sign;
  if (sci.front() == '-') {
    sign = "-";
    sci.remove_prefix(1);
  }
  const auto epos = sci.find('e');
  std::string digits;
  for (char c : sci.substr(0, epos))
    if (c != '.') digits += c;
  const int exp = std::atoi(std::string(sci.substr(epos + 1)).c_str());

  out += sign;
  if (exp < -4 || exp >= 16) {
    out += digits[0];
    if (digits.size() > 1) {
      out += '.';
      out.append(digits, 1);
    }
    char ebuf[16];
    std::snprintf(ebuf, sizeof ebuf, "e%c%02d", exp < 0 ? '-' : '+', std::abs(exp));
    out += ebuf;
  } else if (exp < 0) {
    out += "0.";
    out.append(static_cast<std::size_t>(-exp - 1), '0');
    out += digits;
  } else {
    const auto int_len = static_cast<std::size_t>(exp) + 1;
    if (digits.size() <= int_len) {
      out += digits;
      out.append(int_len - digits.size(), '0');
      out += ".0";
    } else {
      out.append(digits, 0, int_len);
      out += '.';
      out.append(digits, int_len);
    }
  }
}

void append_escape(std::string& out, unsigned cp) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "\\u%04x", cp);
  out += buf;
}

// Escapes like Python's json.dumps with ensure_ascii: every non-ASCII code
// point becomes a \\u escape, astral ones as a surrogate pair.
void append_string(std::string& out, const std::string& s) {
  out += '"';
  for (std::size_t i = 0; i < s.size();) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    switch (c) {
      case '"': out += "\\\""; ++i; continue;
      case '\\': out += "\\\\"; ++i; continue;
      case '\n': out += "\\n"; ++i; continue;
      case '\r': out += "\\r"; ++i; continue;
      case '\t': out += "\\t"; ++i; continue;
      case '\b': out += "\\b"; ++i; continue;
      case '\f': out += "\\f"; ++i; continue;
      default: break;
    }
    if (c < 0x20) {
      append_escape(out, c);
      ++i;
      continue;
    }
    if (c < 0x80) {
      out += static_cast<char>(c);
      ++i;
      continue;
    }
    const std::size_t len = c >= 0xf0 ? 4 : c >= 0xe0 ? 3 : c >= 0xc0 ? 2 : 1;
    unsigned cp = len == 4 ? c & 0x07u : len == 3 ? c & 0x0fu : len == 2 ? c & 0x1fu : 0xfffdu;
    for (std::size_t k = 1; k < len && i + k < s.size(); ++k)
      cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3fu);
    i += len;
    if (cp >= 0x10000) {
      cp -= 0x10000;
      append_escape(out, 0xd800 + (cp >> 10));
      append_escape(out, 0xdc00 + (cp & 0x3ff));
    } else {
      append_escape(out, cp);
    }
  }
  out += '"';
}

void write(std::string& out, const Json& j, int depth) {
  const auto pad = [&](int d) { out.append(static_cast<std::size_t>(2 * d), ' '); };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        pad(depth + 1);
        append_string(out, it.key());
        out += ": ";
        write(out, it.value(), depth + 1);
      }
      out += '\n';
      pad(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",\n";
        first = false;
        pad(depth + 1);
        write(out, v, depth + 1);
      }
      out += '\n';
      pad(depth);
      out += ']';
      return;
    }
    case Json::value_t::string: append_string(out, j.get<std::string>()); return;
    case Json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; return;
    case Json::value_t::number_integer: out += std::to_string(j.get<std::int64_t>()); return;
    case Json::value_t::number_unsigned: out += std::to_string(j.get<std::uint64_t>()); return;
    case Json::value_t::number_float: append_double(out, j.get<double>()); return;
    case Json::value_t::null:
    default: out += "null"; return;
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  write(out, j, 0);
  out += '\n';
  return out;
}

}  // namespace sigmarev::report
