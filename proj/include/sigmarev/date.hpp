#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace sigmarev {

/// Calendar date without a time component.
class Date {
public:
  constexpr Date() = default;
  explicit constexpr Date(std::chrono::sys_days days) : days_(days) {}
  Date(int year, unsigned month, unsigned day);

  /// Strict `YYYY-MM-DD`; nullopt on any deviation or an impossible date.
  static std::optional<Date> parse(std::string_view text);

  std::string iso() const;
  std::chrono::sys_days days() const noexcept { return days_; }
  std::chrono::year_month_day ymd() const noexcept { return std::chrono::year_month_day{days_}; }
  bool is_weekday() const noexcept;
  /// Seconds since the Unix epoch at 00:00 UTC.
  long long epoch_seconds() const noexcept;
  Date plus_days(int n) const noexcept { return Date{days_ + std::chrono::days{n}}; }

  friend constexpr auto operator<=>(const Date&, const Date&) = default;

private:
  std::chrono::sys_days days_{};
};

/// Weekdays in the half-open interval (from, to]; 0 when to <= from.
int weekdays_between(Date from, Date to) noexcept;

}  // namespace sigmarev
