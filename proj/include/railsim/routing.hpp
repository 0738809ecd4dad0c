#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "railsim/geo.hpp"
#include "railsim/network.hpp"
#include "railsim/schedule.hpp"
#include "railsim/social_event.hpp"

namespace railsim {

/// Read-only services a traveller consults when planning.
struct TravelContext {
  const TransitNetwork* network = nullptr;
  const RoadRouter* road = nullptr;
  const TrainInquiry* inquiry = nullptr;
};

struct TrainLeg {
  RouteId route = 0;
  std::size_t board_index = 0;
  std::size_t alight_index = 0;
  SimTime depart;  // expected departure from the boarding stop
  SimTime arrive;  // expected arrival at the alighting stop

  StationId board_station(const TransitNetwork& net) const {
    return net.route(route).stops[board_index];
  }
  StationId alight_station(const TransitNetwork& net) const {
    return net.route(route).stops[alight_index];
  }
};

struct Route {
  GeoPoint origin;
  GeoPoint destination;
  SimTime departure;         // leaves origin
  std::int64_t access_s = 0;  // road time to the boarding station
  StationId board = 0;
  StationId alight = 0;
  std::vector<TrainLeg> legs;
  std::int64_t egress_s = 0;  // road time from the alighting station
  std::int64_t total_s = 0;   // door to door, including expected waits

  bool road_only() const { return legs.empty(); }
  SimTime arrival() const { return departure + total_s; }
  /// Sum of expected platform waits.
  std::int64_t expected_wait_s() const;
};

/// Fastest door-to-door plan leaving `origin` at `depart`. Boards at the
/// station nearest the origin and alights at the station nearest the
/// destination; falls back to road travel when that is strictly faster or no
/// train runs. Throws Error(Unreachable) when the two stations are not
/// connected by any line sequence.
Route plan_route(GeoPoint origin, GeoPoint destination, SimTime depart, const TravelContext& ctx);

/// Earliest arrival at `to` from `from` over rail only, starting on the
/// platform at `t`. Exposed for tests.
struct RailPlan {
  SimTime arrival;
  std::vector<TrainLeg> legs;
};
std::optional<RailPlan> earliest_rail_arrival(StationId from, StationId to, SimTime t,
                                              const TravelContext& ctx);

/// Outcome of reconsidering a trip at a station whose next train is full.
struct Alternative {
  enum class Kind { Wait, Reroute, Road };
  Kind kind = Kind::Wait;
  Route route;  // remaining plan from the station
};

/// Picks the cheapest way on from `station` at `now`: wait for a later train
/// on `current.legs.front()`'s route (the train departing at `full_departs`
/// is full), a re-planned rail trip using live departures, or the road.
/// Ties go to waiting.
Alternative choose_alternative_route(const Route& current, StationId station, SimTime now,
                                     SimTime full_departs, const TravelContext& ctx);

/// Tolerance around an event start: one tenth of its duration.
std::int64_t attendance_tolerance(const SocialEvent& ev);

/// attend iff arrival <= start + tolerance. Throws Error(EventEnded) when
/// `decided_at` is at or past the end of the event.
bool decide_attendance(SimTime arrival, SimTime decided_at, const SocialEvent& ev);

/// Plans the trip from `from`, leaving at `ready`, and applies the rule above.
bool decide_attendance(GeoPoint from, SimTime ready, const SocialEvent& ev,
                       const TravelContext& ctx);

}  // namespace railsim
