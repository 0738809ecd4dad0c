#include "railsim/schedule.hpp"

#include <algorithm>
#include <cmath>

#include "railsim/error.hpp"

namespace railsim {

namespace {

std::int64_t wrap_day(std::int64_t s) {
  return ((s % SimTime::kDay) + SimTime::kDay) % SimTime::kDay;
}

}  // namespace

int LineSchedule::headway_at(std::int64_t time_of_day) const {
  for (const auto& band : bands) {
    if (time_of_day >= band.from_s && time_of_day < band.to_s) return band.headway_s;
  }
  return base_headway_s;
}

int LineSchedule::min_headway() const {
  int h = base_headway_s;
  for (const auto& band : bands) h = std::min(h, band.headway_s);
  return h;
}

TrainSchedule::TrainSchedule(const TransitNetwork& network, std::map<LineId, LineSchedule> lines)
    : network_(&network), lines_(std::move(lines)) {
  for (const auto& line : network.lines()) {
    auto& ls = lines_[line.id];  // missing lines get the default timetable
    if (ls.base_headway_s <= 0) {
      throw Error(ErrorCode::InvariantViolation, "line " + line.code + ": headway must be > 0");
    }
    for (const auto& band : ls.bands) {
      if (band.headway_s <= 0) {
        throw Error(ErrorCode::InvariantViolation, "line " + line.code + ": headway must be > 0");
      }
    }
    if (ls.last_departure_s < ls.first_departure_s) {
      throw Error(ErrorCode::InvariantViolation,
                  "line " + line.code + ": last departure precedes first departure");
    }
  }
  departures_.assign(network.routes().size(), {});
  for (const auto& route : network.routes()) {
    const auto& ls = lines_.at(route.line);
    for (auto t = ls.first_departure_s; t <= ls.last_departure_s; t += ls.headway_at(t)) {
      departures_[route.id].push_back(t);
    }
  }
}

int TrainSchedule::departures_in_hour(RouteId route, std::int64_t hour_of_day) const {
  const auto lo = hour_of_day * SimTime::kHour;
  const auto hi = lo + SimTime::kHour;
  const auto& deps = departures_.at(route);
  return static_cast<int>(std::lower_bound(deps.begin(), deps.end(), hi) -
                          std::lower_bound(deps.begin(), deps.end(), lo));
}

int TrainSchedule::fleet_size(LineId id) const {
  const auto& line = network_->line(id);
  const auto& forward = network_->route(id * 2);
  const double h = lines_.at(id).min_headway();
  if (line.circular) {
    const double cycle = static_cast<double>(forward.one_way_seconds() + line.dwell_s);
    return 2 * static_cast<int>(std::ceil(cycle / h));
  }
  const double round_trip = 2.0 * static_cast<double>(forward.one_way_seconds() + line.dwell_s);
  return static_cast<int>(std::ceil(round_trip / h));
}

std::optional<SimTime> TrainInquiry::expected_departure(RouteId route_id, std::size_t index,
                                                        SimTime t) const {
  const auto& route = network_->route(route_id);
  if (index >= route.last_index()) return std::nullopt;
  const auto& ls = schedule_->line(route.line);
  const auto offset = route.depart_offset[index];
  const auto day_base = t.day() * SimTime::kDay;
  const auto tod = t.time_of_day();
  const auto first = ls.first_departure_s + offset;
  const auto last = ls.last_departure_s + offset;
  if (tod > last) return std::nullopt;
  if (tod <= first) return SimTime(day_base + first);

  auto board_at = [&](std::int64_t station_time) {
    return station_time + ls.headway_at(wrap_day(station_time - offset)) / 2;
  };
  std::int64_t best = board_at(tod);
  // Headway can shrink at a band edge; never promise a later arrival an
  // earlier train than waiting for that edge would give.
  for (const auto& band : ls.bands) {
    for (auto edge : {band.from_s + offset, band.to_s + offset}) {
      if (edge > tod && edge <= last) best = std::min(best, board_at(edge));
    }
  }
  best = std::min(best, last);
  return SimTime(day_base + best);
}

std::vector<SimTime> TrainInquiry::next_departures(RouteId route_id, StationId station, SimTime t,
                                                   std::size_t max_results) const {
  if (station >= network_->stations().size()) {
    throw Error(ErrorCode::UnknownStation, "unknown station index " + std::to_string(station));
  }
  const auto& route = network_->route(route_id);
  const auto idx = route.index_of(station);
  if (!idx) {
    throw Error(ErrorCode::UnknownStation, "station " + network_->station(station).code +
                                               " is not served by this route");
  }
  std::vector<SimTime> out;
  if (*idx >= route.last_index()) return out;

  const auto offset = route.depart_offset[*idx];
  for (const auto& [run_id, run] : runs_) {
    if (run.route != route_id || run.next_stop > *idx) continue;
    auto delay = run.delay_s;
    if (run.held) {
      const auto sched_arrival = run.scheduled_origin + route.arrive_offset[run.held->first];
      delay = std::max(delay, now_ - sched_arrival);
    } else if (run.next_stop == 0) {
      // Not yet departed from the origin: lateness grows with the clock.
      delay = std::max(delay, now_ - run.scheduled_origin);
    }
    const auto predicted = run.scheduled_origin + offset + std::max<std::int64_t>(0, delay);
    if (predicted >= t) out.push_back(predicted);
  }
  const auto& deps = schedule_->origin_departures(route_id);
  for (std::int64_t day = std::max<std::int64_t>(0, t.day() - 1); day <= t.day(); ++day) {
    for (auto tod : deps) {
      const SimTime origin(day * SimTime::kDay + tod);
      if (origin <= now_) continue;  // live or finished runs
      const auto at_station = origin + offset;
      if (at_station >= t) out.push_back(at_station);
    }
  }
  std::sort(out.begin(), out.end());
  if (out.size() > max_results) out.resize(max_results);
  return out;
}

}  // namespace railsim
