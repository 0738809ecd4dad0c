#include "railsim/transit.hpp"

#include <algorithm>
#include <cmath>

#include "railsim/error.hpp"

namespace railsim {

StationMaster::StationMaster(StationId station, int platforms)
    : station_(station), platforms_(platforms) {
  if (platforms < 1) throw Error(ErrorCode::InvariantViolation, "station needs a platform");
}

TokenId StationMaster::issue_token(HumanId h, StationId destination, SimTime now) {
  if (by_human_.count(h)) {
    throw Error(ErrorCode::DuplicatePresence,
                "human " + std::to_string(h) + " already holds a token at station " +
                    std::to_string(station_));
  }
  const TokenId id = (TokenId{station_} << 32) | next_token_++;
  tokens_[id] = Token{id, h, destination, now};
  by_human_[h] = id;
  ++issued_;
  return id;
}

Token StationMaster::return_token(TokenId id) {
  auto it = tokens_.find(id);
  if (it == tokens_.end()) {
    throw Error(ErrorCode::UnknownToken, "token " + std::to_string(id) + " is not outstanding");
  }
  Token t = it->second;
  tokens_.erase(it);
  by_human_.erase(t.human);
  ++returned_;
  return t;
}

void StationMaster::redirect(TokenId id, StationId destination) {
  auto it = tokens_.find(id);
  if (it == tokens_.end()) {
    throw Error(ErrorCode::UnknownToken, "token " + std::to_string(id) + " is not outstanding");
  }
  it->second.destination = destination;
}

std::optional<TokenId> StationMaster::token_of(HumanId h) const {
  auto it = by_human_.find(h);
  if (it == by_human_.end()) return std::nullopt;
  return it->second;
}

Admission StationMaster::request_arrival(TrainId train, SimTime now) {
  if (static_cast<int>(occupied_.size()) < platforms_) {
    occupied_.push_back(train);
    return Admission::Admit;
  }
  held_.emplace_back(now, train);
  return Admission::Hold;
}

std::optional<TrainId> StationMaster::release_platform(TrainId train) {
  auto it = std::find(occupied_.begin(), occupied_.end(), train);
  if (it == occupied_.end()) {
    throw Error(ErrorCode::InvariantViolation, "train " + std::to_string(train) +
                                                   " does not hold a platform at station " +
                                                   std::to_string(station_));
  }
  occupied_.erase(it);
  if (held_.empty()) return std::nullopt;
  auto next = std::min_element(held_.begin(), held_.end());
  const auto admitted = next->second;
  held_.erase(next);
  occupied_.push_back(admitted);
  return admitted;
}

BoardingSplit split_boarding(const StationMaster& master, int free_seats,
                             const std::function<bool(const Token&)>& wants) {
  BoardingSplit out;
  // Token ids grow with issue order at a station.
  for (const auto& [id, tok] : master.tokens()) {
    if (!wants(tok)) continue;
    if (static_cast<int>(out.board.size()) < free_seats) {
      out.board.push_back(id);
    } else {
      out.left.push_back(id);
    }
  }
  return out;
}

int initial_capacity(double sim_daily_ridership, double real_daily_ridership, double real_capacity,
                     int compartment_seats) {
  if (!(sim_daily_ridership > 0 && real_daily_ridership > 0 && real_capacity > 0) ||
      compartment_seats <= 0) {
    throw Error(ErrorCode::BadParameter, "capacity inputs must be positive");
  }
  const double raw = sim_daily_ridership * real_capacity / real_daily_ridership;
  const auto compartments =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(raw / compartment_seats)));
  return static_cast<int>(compartments * compartment_seats);
}

GeoPoint estimated_source(const Human& h, SimTime t) {
  const auto tod = t.time_of_day();
  switch (h.category) {
    case Category::WorkingProfessional:
      if (h.office && tod >= 9 * 3600 && tod < 18 * 3600) return *h.office;
      break;
    case Category::Student:
      if (h.school && tod >= 7 * 3600 + 1800 && tod < 14 * 3600) return *h.school;
      break;
    default:
      break;
  }
  return h.home;
}

std::vector<int> ridership_delta(const TransitNetwork& network,
                                 std::span<const EventAttendees> events, std::int64_t hour) {
  std::vector<int> delta(network.routes().size(), 0);
  const SimTime at(hour * SimTime::kHour);
  for (const auto& group : events) {
    if (group.event->start.hour_index() != hour) continue;
    const auto dest = nearest_station(group.event->location, network);
    std::vector<StationId> sources;
    for (const auto* h : group.humans) {
      sources.push_back(nearest_station(estimated_source(*h, at), network));
    }
    for (const auto& route : network.routes()) {
      // Destination position: its last occurrence, so a loop can end there.
      std::optional<std::size_t> dest_at;
      for (std::size_t k = 0; k < route.stops.size(); ++k) {
        if (route.stops[k] == dest) dest_at = k;
      }
      if (!dest_at) continue;
      for (auto src : sources) {
        if (src == dest) continue;
        const auto src_at = route.index_of(src);
        if (src_at && *src_at < *dest_at) ++delta[route.id];
      }
    }
  }
  return delta;
}

RidershipEstimate::RidershipEstimate(std::size_t routes, std::int64_t first_hour,
                                     std::size_t hours)
    : routes_(routes),
      first_hour_(first_hour),
      hours_(hours),
      baseline_(routes * hours, 0),
      delta_(routes * hours, 0) {}

std::size_t RidershipEstimate::slot(RouteId r, std::int64_t hour) const {
  if (r >= routes_ || hour < first_hour_ ||
      hour >= first_hour_ + static_cast<std::int64_t>(hours_)) {
    throw Error(ErrorCode::BadParameter, "estimate slot out of range");
  }
  return static_cast<std::size_t>(hour - first_hour_) * routes_ + r;
}

int RidershipEstimate::baseline(RouteId r, std::int64_t hour) const { return baseline_[slot(r, hour)]; }
int RidershipEstimate::delta(RouteId r, std::int64_t hour) const { return delta_[slot(r, hour)]; }
void RidershipEstimate::set_baseline(RouteId r, std::int64_t hour, int v) { baseline_[slot(r, hour)] = v; }
void RidershipEstimate::set_delta(RouteId r, std::int64_t hour, int v) { delta_[slot(r, hour)] = v; }

TransportManager::TransportManager(const TransitNetwork& network, const TrainSchedule& schedule)
    : network_(&network), schedule_(&schedule) {}

void TransportManager::record_rider(RouteId route, SimTime t) { ++riders_[{route, t.hour_index()}]; }

int TransportManager::history(RouteId route, std::int64_t hour) const {
  auto it = riders_.find({route, hour});
  return it == riders_.end() ? 0 : it->second;
}

RidershipEstimate TransportManager::estimate_ridership(
    std::int64_t from_hour, std::span<const EventAttendees> events) const {
  const auto routes = network_->routes().size();
  RidershipEstimate est(routes, from_hour, 24);
  for (auto hour = from_hour; hour < from_hour + 24; ++hour) {
    const auto delta = ridership_delta(*network_, events, hour);
    for (RouteId r = 0; r < routes; ++r) {
      est.set_baseline(r, hour, hour >= 24 ? history(r, hour - 24) : 0);
      est.set_delta(r, hour, delta[r]);
    }
  }
  return est;
}

}  // namespace railsim
