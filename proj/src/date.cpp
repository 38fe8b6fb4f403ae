#include "sigmarev/date.hpp"

#include <charconv>
#include <cstdio>

namespace sigmarev {

using namespace std::chrono;

Date::Date(int y, unsigned m, unsigned d) : days_(sys_days{year{y} / month{m} / day{d}}) {}

namespace {

bool parse_digits(std::string_view s, int& out) {
  for (char c : s)
    if (c < '0' || c > '9') return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

std::optional<Date> Date::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_digits(text.substr(0, 4), y) || !parse_digits(text.substr(5, 2), m) ||
      !parse_digits(text.substr(8, 2), d))
    return std::nullopt;
  year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date{sys_days{ymd}};
}

std::string Date::iso() const {
  const auto v = ymd();
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(v.year()),
                static_cast<unsigned>(v.month()), static_cast<unsigned>(v.day()));
  return buf;
}

bool Date::is_weekday() const noexcept {
  const weekday w{days_};
  return w != Saturday && w != Sunday;
}

long long Date::epoch_seconds() const noexcept {
  return duration_cast<seconds>(days_.time_since_epoch()).count();
}

int weekdays_between(Date from, Date to) noexcept {
  if (to <= from) return 0;
  const long long span = (to.days() - from.days()).count();
  const long long full_weeks = span / 7;
  int count = static_cast<int>(full_weeks * 5);
  for (Date d = from.plus_days(static_cast<int>(full_weeks * 7) + 1); d <= to; d = d.plus_days(1))
    if (d.is_weekday()) ++count;
  return count;
}

}  // namespace sigmarev
