#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "railsim/network.hpp"
#include "railsim/sim_time.hpp"

namespace railsim {

/// Headway for origin departures whose time of day is in [from, to).
struct HeadwayBand {
  std::int64_t from_s = 0;
  std::int64_t to_s = 0;
  int headway_s = 300;
};

struct LineSchedule {
  std::int64_t first_departure_s = 5 * 3600 + 30 * 60;
  std::int64_t last_departure_s = 23 * 3600 + 30 * 60;
  int base_headway_s = 300;
  std::vector<HeadwayBand> bands;

  int headway_at(std::int64_t time_of_day) const;
  int min_headway() const;
};

/// Timetable for every line; both directions of a line share departure times
/// at their respective origins.
class TrainSchedule {
 public:
  TrainSchedule() = default;
  TrainSchedule(const TransitNetwork& network, std::map<LineId, LineSchedule> lines);

  const LineSchedule& line(LineId id) const { return lines_.at(id); }
  /// Origin departure times (seconds of day) for one service day.
  const std::vector<std::int64_t>& origin_departures(RouteId route) const {
    return departures_.at(route);
  }
  /// Count of origin departures within [hour_start, hour_start + 1h) of any day.
  int departures_in_hour(RouteId route, std::int64_t hour_of_day) const;
  /// Trains needed to cover the route pair at the tightest headway.
  int fleet_size(LineId id) const;

 private:
  const TransitNetwork* network_ = nullptr;
  std::map<LineId, LineSchedule> lines_;
  std::vector<std::vector<std::int64_t>> departures_;
};

/// Live state of one scheduled run, as reported by station masters.
struct RunStatus {
  RouteId route = 0;
  SimTime scheduled_origin;  // scheduled departure from stop 0
  std::size_t next_stop = 0;  // first stop not yet departed
  std::int64_t delay_s = 0;   // lateness at the last report
  std::optional<std::pair<std::size_t, SimTime>> held;  // (stop index, halt start)
};

/// Read-only schedule and delay queries used by travellers.
class TrainInquiry {
 public:
  TrainInquiry(const TransitNetwork& network, const TrainSchedule& schedule)
      : network_(&network), schedule_(&schedule) {}

  const TransitNetwork& network() const { return *network_; }
  const TrainSchedule& schedule() const { return *schedule_; }

  /// Planning estimate: departure time from stop `index` of `route` for a
  /// traveller reaching it at `t`, waiting half the headway. Non-decreasing
  /// in `t`. nullopt after the last service of that day.
  std::optional<SimTime> expected_departure(RouteId route, std::size_t index, SimTime t) const;

  /// Predicted departures after `t` from `station`, including delays of
  /// running trains. Empty at a route's final stop or past the last service.
  /// Throws Error(UnknownStation).
  std::vector<SimTime> next_departures(RouteId route, StationId station, SimTime t,
                                       std::size_t max_results = 3) const;

  // Live feed, written by the transit layer.
  void report(std::uint64_t run_id, const RunStatus& status) { runs_[run_id] = status; }
  void finish(std::uint64_t run_id) { runs_.erase(run_id); }
  void set_now(SimTime now) { now_ = now; }

 private:
  const TransitNetwork* network_;
  const TrainSchedule* schedule_;
  std::map<std::uint64_t, RunStatus> runs_;
  SimTime now_;
};

}  // namespace railsim
