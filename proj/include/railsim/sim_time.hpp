#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace railsim {

/// Integer seconds since midnight of simulation day 0.
class SimTime {
 public:
  static constexpr std::int64_t kDay = 86400;
  static constexpr std::int64_t kHour = 3600;

  constexpr SimTime() = default;
  constexpr explicit SimTime(std::int64_t seconds) : seconds_(seconds) {}

  static constexpr SimTime hms(int h, int m, int s = 0) {
    return SimTime(std::int64_t{h} * kHour + std::int64_t{m} * 60 + s);
  }
  static constexpr SimTime hours(double h) {
    return SimTime(static_cast<std::int64_t>(h * kHour));
  }

  constexpr std::int64_t seconds() const { return seconds_; }
  constexpr std::int64_t day() const { return seconds_ / kDay; }
  constexpr std::int64_t time_of_day() const { return seconds_ % kDay; }
  constexpr std::int64_t hour_index() const { return seconds_ / kHour; }

  constexpr SimTime operator+(std::int64_t s) const { return SimTime(seconds_ + s); }
  constexpr SimTime operator-(std::int64_t s) const { return SimTime(seconds_ - s); }
  constexpr std::int64_t operator-(SimTime o) const { return seconds_ - o.seconds_; }
  constexpr SimTime& operator+=(std::int64_t s) {
    seconds_ += s;
    return *this;
  }

  constexpr auto operator<=>(const SimTime&) const = default;

  /// "HH:MM[:SS]" relative to day 0; hours may exceed 23.
  std::string to_clock() const;

 private:
  std::int64_t seconds_ = 0;
};

/// Parses "H:MM" or "H:MM:SS" into seconds of day; throws Error(ParseError).
SimTime parse_clock(std::string_view text);

}  // namespace railsim
