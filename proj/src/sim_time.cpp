#include "railsim/sim_time.hpp"

#include <charconv>
#include <cstdio>

#include "railsim/error.hpp"

namespace railsim {

std::string SimTime::to_clock() const {
  const auto h = seconds_ / kHour;
  const auto m = (seconds_ % kHour) / 60;
  const auto s = seconds_ % 60;
  char buf[32];
  if (s == 0) {
    std::snprintf(buf, sizeof buf, "%02lld:%02lld", static_cast<long long>(h),
                  static_cast<long long>(m));
  } else {
    std::snprintf(buf, sizeof buf, "%02lld:%02lld:%02lld", static_cast<long long>(h),
                  static_cast<long long>(m), static_cast<long long>(s));
  }
  return buf;
}

SimTime parse_clock(std::string_view text) {
  int parts[3] = {0, 0, 0};
  int count = 0;
  std::size_t pos = 0;
  while (pos <= text.size() && count < 3) {
    const auto next = text.find(':', pos);
    const auto piece = text.substr(pos, next == std::string_view::npos ? text.size() - pos
                                                                       : next - pos);
    int value = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (piece.empty() || ec != std::errc{} || ptr != piece.data() + piece.size() || value < 0) {
      throw Error(ErrorCode::ParseError, "bad clock time '" + std::string(text) + "'");
    }
    parts[count++] = value;
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  if (count < 2 || parts[1] >= 60 || parts[2] >= 60) {
    throw Error(ErrorCode::ParseError, "bad clock time '" + std::string(text) + "'");
  }
  return SimTime::hms(parts[0], parts[1], parts[2]);
}

}  // namespace railsim
