#include "railsim/routing.hpp"

#include <functional>
#include <limits>
#include <queue>

#include "railsim/error.hpp"

namespace railsim {

std::int64_t Route::expected_wait_s() const {
  std::int64_t wait = 0;
  SimTime ready = departure + access_s;
  for (const auto& leg : legs) {
    wait += leg.depart - ready;
    ready = leg.arrive;
  }
  return wait;
}

namespace {

using DepartFn = std::function<std::optional<SimTime>(RouteId, std::size_t, SimTime, bool)>;

constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max();

std::optional<RailPlan> time_dependent_search(StationId from, StationId to, SimTime t,
                                              const TravelContext& ctx, const DepartFn& depart) {
  const auto& net = *ctx.network;
  const auto n = net.stations().size();
  std::vector<std::int64_t> best(n, kNever);
  std::vector<std::optional<TrainLeg>> via(n);
  using Item = std::pair<std::int64_t, StationId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  best[from] = t.seconds();
  open.push({t.seconds(), from});
  while (!open.empty()) {
    const auto [at, s] = open.top();
    open.pop();
    if (at > best[s]) continue;
    if (s == to) break;
    for (RouteId r : net.routes_at(s)) {
      const auto& route = net.route(r);
      const auto idx = route.index_of(s);
      if (!idx || *idx >= route.last_index()) continue;
      const auto dep = depart(r, *idx, SimTime(at), s == from);
      if (!dep) continue;
      for (auto j = *idx + 1; j <= route.last_index(); ++j) {
        const auto arr = *dep + route.ride_seconds(*idx, j);
        const auto next = route.stops[j];
        if (arr.seconds() < best[next]) {
          best[next] = arr.seconds();
          via[next] = TrainLeg{r, *idx, j, *dep, arr};
          open.push({arr.seconds(), next});
        }
      }
    }
  }
  if (best[to] == kNever) return std::nullopt;
  RailPlan plan;
  plan.arrival = SimTime(best[to]);
  for (auto s = to; s != from;) {
    const auto& leg = *via[s];
    plan.legs.push_back(leg);
    s = leg.board_station(net);
  }
  std::reverse(plan.legs.begin(), plan.legs.end());
  return plan;
}

bool connected(StationId from, StationId to, const TransitNetwork& net) {
  std::vector<char> seen(net.stations().size(), 0);
  std::vector<StationId> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    const auto s = stack.back();
    stack.pop_back();
    if (s == to) return true;
    for (RouteId r : net.routes_at(s)) {
      for (auto next : net.route(r).stops) {
        if (!seen[next]) {
          seen[next] = 1;
          stack.push_back(next);
        }
      }
    }
  }
  return false;
}

DepartFn planned_departures(const TravelContext& ctx) {
  return [&ctx](RouteId r, std::size_t idx, SimTime t, bool) {
    return ctx.inquiry->expected_departure(r, idx, t);
  };
}

Route road_route(GeoPoint origin, GeoPoint destination, SimTime depart, const TravelContext& ctx) {
  Route route;
  route.origin = origin;
  route.destination = destination;
  route.departure = depart;
  route.total_s = ctx.road->travel_seconds(origin, destination);
  route.board = route.alight = nearest_station(origin, *ctx.network);
  return route;
}

}  // namespace

std::optional<RailPlan> earliest_rail_arrival(StationId from, StationId to, SimTime t,
                                              const TravelContext& ctx) {
  return time_dependent_search(from, to, t, ctx, planned_departures(ctx));
}

Route plan_route(GeoPoint origin, GeoPoint destination, SimTime depart, const TravelContext& ctx) {
  const auto& net = *ctx.network;
  const auto board = nearest_station(origin, net);
  const auto alight = nearest_station(destination, net);
  auto road = road_route(origin, destination, depart, ctx);
  if (board == alight) return road;

  Route rail;
  rail.origin = origin;
  rail.destination = destination;
  rail.departure = depart;
  rail.board = board;
  rail.alight = alight;
  rail.access_s = ctx.road->travel_seconds(origin, net.station(board).location);
  rail.egress_s = ctx.road->travel_seconds(net.station(alight).location, destination);
  const auto plan = earliest_rail_arrival(board, alight, depart + rail.access_s, ctx);
  if (!plan) {
    if (!connected(board, alight, net)) {
      throw Error(ErrorCode::Unreachable, "no line connects " + net.station(board).code +
                                              " to " + net.station(alight).code);
    }
    return road;  // no service left today
  }
  rail.legs = plan->legs;
  rail.total_s = (plan->arrival + rail.egress_s) - depart;
  return road.total_s < rail.total_s ? road : rail;
}

Alternative choose_alternative_route(const Route& current, StationId station, SimTime now,
                                     SimTime full_departs, const TravelContext& ctx) {
  const auto& net = *ctx.network;
  const auto& inquiry = *ctx.inquiry;
  if (current.legs.empty()) {
    throw Error(ErrorCode::BadParameter, "alternative routing needs a pending train leg");
  }
  const auto& first = current.legs.front();
  const auto here = net.station(station).location;

  auto live_next = [&](RouteId r, SimTime t) -> std::optional<SimTime> {
    for (auto d : inquiry.next_departures(r, station, t, 4)) {
      if (r == first.route ? d > full_departs : d >= t) return d;
    }
    return std::nullopt;
  };

  auto make = [&](std::vector<TrainLeg> legs, SimTime arrival_at_alight) {
    Route r;
    r.origin = here;
    r.destination = current.destination;
    r.departure = now;
    r.board = station;
    r.alight = legs.empty() ? station : legs.back().alight_station(net);
    r.legs = std::move(legs);
    r.egress_s = ctx.road->travel_seconds(net.station(r.alight).location, current.destination);
    r.total_s = (arrival_at_alight + r.egress_s) - now;
    return r;
  };

  // Stay: the next train on the same route, then the rest of the plan.
  std::optional<Route> stay;
  if (const auto d = live_next(first.route, now)) {
    std::vector<TrainLeg> legs;
    const auto& route = net.route(first.route);
    TrainLeg leg = first;
    leg.depart = *d;
    leg.arrive = *d + route.ride_seconds(first.board_index, first.alight_index);
    legs.push_back(leg);
    bool ok = true;
    for (std::size_t k = 1; k < current.legs.size() && ok; ++k) {
      TrainLeg next = current.legs[k];
      const auto dep = inquiry.expected_departure(next.route, next.board_index, legs.back().arrive);
      if (!dep) {
        ok = false;
        break;
      }
      next.depart = *dep;
      next.arrive = *dep + net.route(next.route).ride_seconds(next.board_index, next.alight_index);
      legs.push_back(next);
    }
    if (ok) {
      const auto arrive = legs.back().arrive;
      stay = make(std::move(legs), arrive);
    }
  }

  std::optional<Route> reroute;
  const auto target = current.alight;
  if (target != station) {
    const DepartFn depart = [&](RouteId r, std::size_t idx, SimTime t, bool at_source) {
      return at_source ? live_next(r, t) : inquiry.expected_departure(r, idx, t);
    };
    if (auto plan = time_dependent_search(station, target, now, ctx, depart)) {
      reroute = make(std::move(plan->legs), plan->arrival);
    }
  }

  Route road;
  road.origin = here;
  road.destination = current.destination;
  road.departure = now;
  road.board = road.alight = station;
  road.total_s = ctx.road->travel_seconds(here, current.destination);

  Alternative best;
  if (stay) {
    best = {Alternative::Kind::Wait, *stay};
  } else {
    best = {Alternative::Kind::Road, road};
  }
  if (reroute && reroute->total_s < best.route.total_s) best = {Alternative::Kind::Reroute, *reroute};
  if (road.total_s < best.route.total_s) best = {Alternative::Kind::Road, road};
  return best;
}

std::int64_t attendance_tolerance(const SocialEvent& ev) { return ev.duration_s() / 10; }

bool decide_attendance(SimTime arrival, SimTime decided_at, const SocialEvent& ev) {
  if (decided_at >= ev.end) {
    throw Error(ErrorCode::EventEnded, "event " + std::to_string(ev.id) + " has already ended");
  }
  return arrival <= ev.start + attendance_tolerance(ev);
}

bool decide_attendance(GeoPoint from, SimTime ready, const SocialEvent& ev,
                       const TravelContext& ctx) {
  if (ready >= ev.end) {
    throw Error(ErrorCode::EventEnded, "event " + std::to_string(ev.id) + " has already ended");
  }
  const auto route = plan_route(from, ev.location, ready, ctx);
  return decide_attendance(route.arrival(), ready, ev);
}

}  // namespace railsim
