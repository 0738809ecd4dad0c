#include "railsim/simulation.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <deque>
#include <map>
#include <ostream>
#include <set>

#include "railsim/error.hpp"
#include "railsim/events.hpp"
#include "railsim/rng.hpp"
#include "railsim/routing.hpp"
#include "railsim/scheduler.hpp"
#include "railsim/strategies.hpp"

namespace railsim {

namespace {

enum class Where : std::uint8_t { Place, Road, Station, Onboard };

enum class PlanKind : std::uint8_t { Regular, Outing, Return };

struct Plan {
  SimTime start;
  GeoPoint destination;
  PlaceKind kind = PlaceKind::Home;
  PlanKind plan = PlanKind::Regular;
  std::size_t commitment = 0;  // index into HumanRt::commitments for outings
};

struct Commitment {
  EventId event = 0;
  SimTime depart;
  SimTime end;
  std::optional<GeoPoint> return_to;  // destination of the last cancelled trip
  SimTime return_to_start;
  GeoPoint origin;
};

struct HumanRt {
  Where where = Where::Place;
  GeoPoint location;
  std::deque<Plan> agenda;
  bool travelling = false;
  Plan current;
  SimTime trip_started;
  Route route;
  std::size_t leg = 0;
  bool used_rail = false;
  StationId station = 0;
  std::optional<TokenId> token;
  TrainId train = 0;
  std::uint64_t wake_gen = 0;
  std::vector<Commitment> commitments;
  bool adopted = false;
};

struct PendingRun {
  RouteId route = 0;
  SimTime slot;  // scheduled origin departure
};

struct Depot {
  std::deque<TrainId> idle;
  std::deque<PendingRun> waiting;
};

struct RunInfo {
  RouteId route = 0;
  SimTime slot;
};

constexpr ActorId kSystem{ActorType::System, 0};
constexpr ActorId kManager{ActorType::Manager, 0};
constexpr ActorId kFeed{ActorType::Feed, 0};

ActorId human_actor(HumanId h) { return {ActorType::Human, h}; }
ActorId train_actor(TrainId t) { return {ActorType::Train, t}; }

}  // namespace

struct Simulation::Impl {
  Impl(const ScenarioConfig& config, SimulationLogs logs);

  // Setup.
  void build_population();
  void build_fleet();
  void schedule_static_actions();

  // Humans.
  void at(SimTime t, ActorId actor, const char* kind, std::function<void()> fn);
  void schedule_wake(HumanId h);
  void start_trip(HumanId h);
  void reach_station(HumanId h);
  void begin_leg(HumanId h, StationId station);
  void go_by_road(HumanId h, GeoPoint from);
  void finish_trip(HumanId h);
  void start_day(std::int64_t day);
  GeoPoint planned_location(HumanId h) const;

  // Events and diffusion.
  bool conflicts(HumanId h, const SocialEvent& ev) const;
  void commit(HumanId h, const SocialEvent& ev);
  void poll_all();
  void diffuse(EventId ev);

  // Trains.
  void dispatch(RouteId route, SimTime slot);
  void take_run(TrainId id, RouteId route, SimTime slot);
  void request_stop(TrainId id);
  void admitted(TrainId id);
  void depart(TrainId id);
  void leave_terminal(TrainId id);
  std::vector<HumanId> board(Train& train, std::size_t k);
  void alight(Train& train, std::size_t k);
  void after_left_behind(const Train& train, std::size_t k, const std::vector<HumanId>& left);
  int section_at(const Train& train) const;
  void note_train(const Train& train);
  void log_train(const Train& train, StationId station, const char* what);
  SimTime scheduled_departure(const Train& train) const;

  // Manager.
  void manage_hour();
  void checkpoint();

  ScenarioConfig cfg;
  SimulationLogs logs;
  RngStreams rng;
  const TransitNetwork& net;
  TrainSchedule schedule;
  TrainInquiry inquiry;
  RoadRouter road;
  TravelContext ctx;
  Scheduler sched;

  std::vector<Human> people;
  std::vector<HumanRt> rt;
  SocialGraph graph;
  std::unique_ptr<BroadcastFeed> feed;
  std::vector<ActivationState> activation;

  std::vector<StationMaster> masters;
  std::vector<Train> trains;
  std::map<std::pair<LineId, StationId>, Depot> depots;
  std::map<std::uint64_t, RunInfo> runs;
  std::uint64_t next_run = 0;
  CompartmentPool pool;
  int total_compartments = 0;
  TransportManager manager;
  std::unique_ptr<Strategy> strategy;
  MetricsLedger ledger;
  SimulationStats stats;
  std::set<HumanId> adopters;
  bool ran = false;
};

Simulation::Impl::Impl(const ScenarioConfig& config, SimulationLogs l)
    : cfg(config),
      logs(l),
      rng(config.require_seed()),
      net(cfg.network),
      schedule(net, cfg.schedules),
      inquiry(net, schedule),
      road(cfg.road_speed_kmh),
      manager(net, schedule),
      ledger(net, cfg.population.size) {
  if (net.empty()) throw Error(ErrorCode::EmptyNetwork, "scenario has no stations");
  ctx = TravelContext{&net, &road, &inquiry};
  sched.set_log(logs.actions);
  build_population();
  for (const auto& st : net.stations()) masters.emplace_back(st.id, st.platform_count);
  build_fleet();
  strategy = make_strategy(cfg.strategy.kind, cfg.strategy.alt_routing);
  schedule_static_actions();
}

void Simulation::Impl::build_population() {
  RngStreams pop_rng(cfg.population.seed.value_or(rng.seed()));
  const auto bounds = cfg.population.bounds.value_or(net.bounds());
  people = generate_population(cfg.population.size, bounds, cfg.population.params,
                               pop_rng.stream("population"));
  rt.resize(people.size());
  for (const auto& h : people) rt[h.id].location = h.home;
  if (!people.empty()) {
    const auto degree = cfg.social.scale_degree ? cfg.social.degree.scaled_to(people.size())
                                                : cfg.social.degree;
    graph = generate_graph(people, degree, pop_rng.stream("graph"));
    graph.assign_probabilities(people, cfg.social.model, cfg.social.constant_p);
  }
  auto events = cfg.events.fixed;
  if (cfg.events.generator) {
    auto generated = generate_events(*cfg.events.generator, rng.stream("events"));
    events.insert(events.end(), generated.begin(), generated.end());
  }
  feed = std::make_unique<BroadcastFeed>(std::move(events), cfg.events.poll);
  for (const auto& ev : feed->events()) {
    activation.emplace_back(ev.id, people.size());
    stats.events.push_back({ev.id, 0, 0, {}, 0});
  }
}

void Simulation::Impl::build_fleet() {
  const int seats = cfg.trains.compartment_seats;
  int capacity = 0;
  if (cfg.trains.initial_capacity) {
    capacity = *cfg.trains.initial_capacity;
  } else {
    // Size trains from a day-0 dry run of everyone's plans.
    for (const auto& h : people) {
      auto stream = rng.substream("trips", mix_keys(h.id, 0));
      GeoPoint at = h.home;
      for (const auto& trip : daily_trips(h, 0, stream)) {
        if (!plan_route(at, trip.destination, trip.chosen_start, ctx).road_only()) {
          ++stats.planned_rail_trips;
        }
        at = trip.destination;
      }
    }
    capacity = stats.planned_rail_trips == 0
                   ? seats
                   : initial_capacity(static_cast<double>(stats.planned_rail_trips),
                                      cfg.trains.real_daily_ridership, cfg.trains.real_capacity,
                                      seats);
  }
  stats.initial_capacity = capacity;
  const int compartments = capacity / seats;

  for (const auto& line : net.lines()) {
    const auto& fwd = net.route(line.id * 2);
    const auto& rev = net.route(line.id * 2 + 1);
    const int fleet = schedule.fleet_size(line.id);
    for (int i = 0; i < fleet; ++i) {
      Train t;
      t.id = static_cast<TrainId>(trains.size());
      t.line = line.id;
      t.compartments = compartments;
      t.seats_per_compartment = seats;
      const auto& home = (line.circular || i % 2 == 0) ? fwd : rev;
      t.route = home.id;
      t.depot = home.stops.front();
      depots[{line.id, t.depot}].idle.push_back(t.id);
      ledger.add_train(t.id, line.id, SimTime(0), t.capacity());
      trains.push_back(t);
    }
  }
  stats.fleet = trains.size();
  pool.available = cfg.strategy.pool;
  total_compartments = pool.total();
  for (const auto& t : trains) total_compartments += t.compartments;
}

void Simulation::Impl::at(SimTime t, ActorId actor, const char* kind, std::function<void()> fn) {
  sched.schedule(t, actor, kind, [this, fn = std::move(fn)] {
    inquiry.set_now(sched.now());
    fn();
  });
}

void Simulation::Impl::schedule_static_actions() {
  const auto horizon = cfg.horizon();
  for (std::int64_t day = 0; day * SimTime::kDay < horizon.seconds(); ++day) {
    at(SimTime(day * SimTime::kDay), kSystem, "day", [this, day] { start_day(day); });
  }
  for (std::int64_t h = 0; h * SimTime::kHour < horizon.seconds(); ++h) {
    const SimTime t(h * SimTime::kHour);
    at(t, kManager, "checkpoint", [this] { checkpoint(); });
    at(t, kManager, "plan", [this] { manage_hour(); });
  }
  for (auto t : feed->poll_ticks(SimTime(0), horizon)) {
    at(t, kFeed, "poll", [this] { poll_all(); });
  }
  const auto step = std::int64_t{cfg.social.diffusion_step_minutes} * 60;
  for (const auto& ev : feed->events()) {
    for (auto t = ev.broadcast_from + step; t < ev.end && t < horizon; t += step) {
      at(t, kFeed, "diffuse", [this, id = ev.id] { diffuse(id); });
    }
  }
}

// ---------------------------------------------------------------- humans

void Simulation::Impl::schedule_wake(HumanId h) {
  auto& r = rt[h];
  if (r.travelling || r.agenda.empty()) return;
  const auto when = std::max(sched.now(), r.agenda.front().start);
  const auto gen = ++r.wake_gen;
  at(when, human_actor(h), "trip", [this, h, gen] {
    if (rt[h].wake_gen == gen && !rt[h].travelling) start_trip(h);
  });
}

void Simulation::Impl::start_trip(HumanId h) {
  auto& r = rt[h];
  if (r.agenda.empty()) return;
  r.current = r.agenda.front();
  r.agenda.pop_front();
  const auto now = sched.now();
  if (r.current.plan == PlanKind::Outing) {
    r.commitments[r.current.commitment].origin = r.location;
  } else if (r.current.plan == PlanKind::Return) {
    const auto& c = r.commitments[r.current.commitment];
    r.current.destination = c.return_to.value_or(c.origin);
  }
  r.travelling = true;
  r.trip_started = now;
  r.used_rail = false;
  r.leg = 0;
  ++stats.trips_started;
  r.route = plan_route(r.location, r.current.destination, now, ctx);
  r.where = Where::Road;
  if (r.route.road_only()) {
    at(now + r.route.total_s, human_actor(h), "arrive", [this, h] { finish_trip(h); });
  } else {
    at(now + r.route.access_s, human_actor(h), "station", [this, h] { reach_station(h); });
  }
}

void Simulation::Impl::reach_station(HumanId h) {
  auto& r = rt[h];
  r.used_rail = true;
  begin_leg(h, r.route.board);
}

void Simulation::Impl::begin_leg(HumanId h, StationId station) {
  auto& r = rt[h];
  const auto now = sched.now();
  const auto& leg = r.route.legs[r.leg];
  r.where = Where::Station;
  r.station = station;
  if (inquiry.next_departures(leg.route, station, now, 1).empty()) {
    ++stats.stranded;
    go_by_road(h, net.station(station).location);
    return;
  }
  const auto dest = leg.alight_station(net);
  r.token = masters[station].issue_token(h, dest, now);
  manager.record_rider(leg.route, now);
  if (logs.tokens) {
    fmt::print(*logs.tokens, "{}\t{}\t{}\tissue\t{}\n", now.seconds(), net.station(station).code,
               h, net.station(dest).code);
  }
}

void Simulation::Impl::go_by_road(HumanId h, GeoPoint from) {
  auto& r = rt[h];
  r.where = Where::Road;
  const auto secs = road.travel_seconds(from, r.current.destination);
  at(sched.now() + secs, human_actor(h), "arrive", [this, h] { finish_trip(h); });
}

void Simulation::Impl::finish_trip(HumanId h) {
  auto& r = rt[h];
  const auto now = sched.now();
  r.where = Where::Place;
  r.location = r.current.destination;
  r.travelling = false;
  ++stats.trips_completed;
  if (r.used_rail) ++stats.rail_trips;
  ledger.trip(h, r.trip_started, now, r.used_rail);
  if (r.current.plan == PlanKind::Outing) {
    const auto& c = r.commitments[r.current.commitment];
    if (now < c.end) ++stats.events[c.event].arrived;
  }
  schedule_wake(h);
}

void Simulation::Impl::start_day(std::int64_t day) {
  for (const auto& h : people) {
    auto& r = rt[h.id];
    auto stream = rng.substream("trips", mix_keys(h.id, day));
    std::vector<Plan> fresh;
    for (const auto& trip : daily_trips(h, day, stream)) {
      bool cancelled = false;
      for (auto& c : r.commitments) {
        if (trip.chosen_start >= c.depart && trip.chosen_start < c.end) {
          cancelled = true;
          if (!c.return_to || trip.chosen_start >= c.return_to_start) {
            c.return_to = trip.destination;
            c.return_to_start = trip.chosen_start;
          }
        }
      }
      if (!cancelled) fresh.push_back({trip.chosen_start, trip.destination, trip.destination_kind});
    }
    for (auto& p : fresh) r.agenda.push_back(p);
    std::stable_sort(r.agenda.begin(), r.agenda.end(),
                     [](const Plan& a, const Plan& b) { return a.start < b.start; });
    schedule_wake(h.id);
  }
  // Train runs whose origin departure falls on this day.
  for (const auto& route : net.routes()) {
    for (auto tod : schedule.origin_departures(route.id)) {
      const SimTime slot(day * SimTime::kDay + tod);
      const auto call = std::max(sched.now(), slot - route.dwell_s);
      if (slot >= cfg.horizon()) continue;
      at(call, {ActorType::Station, route.stops.front()}, "dispatch",
         [this, r = route.id, slot] { dispatch(r, slot); });
    }
  }
}

GeoPoint Simulation::Impl::planned_location(HumanId h) const {
  const auto& r = rt[h];
  return r.travelling ? r.current.destination : r.location;
}

// ------------------------------------------------------- events/diffusion

bool Simulation::Impl::conflicts(HumanId h, const SocialEvent& ev) const {
  for (const auto& c : rt[h].commitments) {
    const auto& other = feed->event(c.event);
    if (c.event == ev.id) return true;
    if (ev.start < other.end && other.start < ev.end) return true;
  }
  return false;
}

void Simulation::Impl::commit(HumanId h, const SocialEvent& ev) {
  auto& r = rt[h];
  const auto now = sched.now();
  const auto estimate = plan_route(planned_location(h), ev.location, now, ctx).total_s;
  Commitment c;
  c.event = ev.id;
  c.depart = std::max(now, ev.start - estimate);
  c.end = ev.end;
  std::deque<Plan> kept;
  for (const auto& p : r.agenda) {
    if (p.plan == PlanKind::Regular && p.start >= c.depart && p.start < c.end) {
      if (!c.return_to || p.start >= c.return_to_start) {
        c.return_to = p.destination;
        c.return_to_start = p.start;
      }
      continue;
    }
    kept.push_back(p);
  }
  const auto index = r.commitments.size();
  r.commitments.push_back(c);
  kept.push_back({c.depart, ev.location, PlaceKind::Event, PlanKind::Outing, index});
  kept.push_back({c.end, {}, PlaceKind::Home, PlanKind::Return, index});
  std::stable_sort(kept.begin(), kept.end(),
                   [](const Plan& a, const Plan& b) { return a.start < b.start; });
  r.agenda = std::move(kept);
  schedule_wake(h);
}

void Simulation::Impl::poll_all() {
  const auto now = sched.now();
  for (const auto& h : people) {
    for (auto id : feed->poll(h.id, now, rng)) {
      const auto& ev = feed->event(id);
      auto& state = activation[id];
      if (state.reached(h.id) || conflicts(h.id, ev)) continue;
      if (inject(ev, h, planned_location(h.id), now, ctx)) {
        state.seed(h.id);
        ++stats.events[id].seeds;
        commit(h.id, ev);
      }
    }
  }
}

void Simulation::Impl::diffuse(EventId id) {
  const auto& ev = feed->event(id);
  auto& state = activation[id];
  if (state.frontier().empty()) return;
  const auto now = sched.now();
  auto& outcome = stats.events[id];
  state.step(graph, rng, [&](HumanId v) {
    if (conflicts(v, ev) || !decide_attendance(planned_location(v), now, ev, ctx)) {
      ++outcome.declined;
      return false;
    }
    commit(v, ev);
    return true;
  });
}

// ----------------------------------------------------------------- trains

int Simulation::Impl::section_at(const Train& t) const {
  const auto& route = net.route(t.route);
  switch (t.phase) {
    case TrainPhase::Depot:
      return -1;
    case TrainPhase::Approaching:
    case TrainPhase::Held:
      if (t.stop_index == 0) return -1;
      return ledger.section_of(t.line, route.stops[t.stop_index - 1]);
    case TrainPhase::Dwelling:
    case TrainPhase::Running:
      return ledger.section_of(t.line, route.stops[t.stop_index]);
  }
  return -1;
}

void Simulation::Impl::note_train(const Train& t) {
  ledger.train_state(t.id, sched.now(), static_cast<int>(t.onboard.size()), t.capacity(),
                     section_at(t));
}

void Simulation::Impl::log_train(const Train& t, StationId station, const char* what) {
  if (!logs.trains) return;
  const auto& route = net.route(t.route);
  fmt::print(*logs.trains, "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", sched.now().seconds(), t.id,
             net.line(t.line).code, route.direction, net.station(station).code, what,
             t.onboard.size(), t.capacity());
}

SimTime Simulation::Impl::scheduled_departure(const Train& t) const {
  const auto& run = runs.at(*t.run);
  return run.slot + net.route(t.route).depart_offset[t.stop_index];
}

void Simulation::Impl::dispatch(RouteId route_id, SimTime slot) {
  const auto& route = net.route(route_id);
  auto& depot = depots[{route.line, route.stops.front()}];
  if (depot.idle.empty()) {
    depot.waiting.push_back({route_id, slot});
    return;
  }
  const auto id = depot.idle.front();
  depot.idle.pop_front();
  take_run(id, route_id, slot);
}

void Simulation::Impl::take_run(TrainId id, RouteId route_id, SimTime slot) {
  auto& t = trains[id];
  if (apply_terminal_changes(t, pool)) log_train(t, t.depot, "reconfigure");
  t.route = route_id;
  t.stop_index = 0;
  t.phase = TrainPhase::Approaching;
  t.run = next_run++;
  runs[*t.run] = {route_id, slot};
  inquiry.report(*t.run, RunStatus{route_id, slot, 0, 0, std::nullopt});
  note_train(t);
  request_stop(id);
}

void Simulation::Impl::request_stop(TrainId id) {
  auto& t = trains[id];
  const auto station = net.route(t.route).stops[t.stop_index];
  if (masters[station].request_arrival(id, sched.now()) == Admission::Admit) {
    admitted(id);
    return;
  }
  t.phase = TrainPhase::Held;
  const auto& run = runs.at(*t.run);
  RunStatus status{t.route, run.slot, t.stop_index, 0,
                   std::make_pair(t.stop_index, sched.now())};
  if (t.stop_index > 0) {
    status.delay_s = std::max<std::int64_t>(
        0, sched.now() - (run.slot + net.route(t.route).arrive_offset[t.stop_index]));
  }
  inquiry.report(*t.run, status);
  log_train(t, station, "hold");
}

void Simulation::Impl::admitted(TrainId id) {
  auto& t = trains[id];
  const auto& route = net.route(t.route);
  const auto k = t.stop_index;
  const auto station = route.stops[k];
  if (t.phase == TrainPhase::Held) log_train(t, station, "admit");
  t.phase = TrainPhase::Dwelling;
  alight(t, k);
  log_train(t, station, "arrive");
  if (k == route.last_index()) {
    if (apply_terminal_changes(t, pool)) log_train(t, station, "reconfigure");
    note_train(t);
    at(sched.now() + route.dwell_s, train_actor(id), "leave", [this, id] { leave_terminal(id); });
    return;
  }
  board(t, k);
  note_train(t);
  const auto when = std::max(sched.now() + route.dwell_s, scheduled_departure(t));
  at(when, train_actor(id), "depart", [this, id] { depart(id); });
}

void Simulation::Impl::alight(Train& t, std::size_t k) {
  const auto station = net.route(t.route).stops[k];
  std::vector<Passenger> staying;
  for (const auto& p : t.onboard) {
    if (p.alight_index != k) {
      staying.push_back(p);
      continue;
    }
    auto& r = rt[p.human];
    ++r.leg;
    if (r.leg < r.route.legs.size()) {
      begin_leg(p.human, station);
    } else {
      r.where = Where::Road;
      const auto h = p.human;
      at(sched.now() + r.route.egress_s, human_actor(h), "arrive", [this, h] { finish_trip(h); });
    }
  }
  t.onboard = std::move(staying);
}

std::vector<HumanId> Simulation::Impl::board(Train& t, std::size_t k) {
  const auto& route = net.route(t.route);
  const auto station = route.stops[k];
  auto& master = masters[station];
  auto alight_at = [&](HumanId h) {
    const auto& r = rt[h];
    const auto& leg = r.route.legs[r.leg];
    if (leg.route != t.route) return std::optional<std::size_t>{};
    return route.index_after(leg.alight_station(net), k);
  };
  const auto split =
      split_boarding(master, t.capacity() - static_cast<int>(t.onboard.size()),
                     [&](const Token& tok) { return alight_at(tok.human).has_value(); });
  std::vector<HumanId> left;
  for (auto id : split.left) left.push_back(master.tokens().at(id).human);
  const auto now = sched.now();
  for (auto id : split.board) {
    const auto tok = master.return_token(id);
    const auto h = tok.human;
    auto& r = rt[h];
    const auto stop = *alight_at(h);
    ledger.wait(h, station, tok.issued, now);
    if (logs.tokens) {
      fmt::print(*logs.tokens, "{}\t{}\t{}\treturn\t{}\n", now.seconds(), net.station(station).code,
                 h, now - tok.issued);
    }
    r.token.reset();
    r.where = Where::Onboard;
    r.train = t.id;
    t.onboard.push_back({h, stop});
  }
  return left;
}

void Simulation::Impl::after_left_behind(const Train& t, std::size_t k,
                                         const std::vector<HumanId>& left) {
  const auto station = net.route(t.route).stops[k];
  const auto now = sched.now();
  stats.left_behind += left.size();
  for (auto h : left) {
    auto& r = rt[h];
    const auto leave_station = [&] {
      const auto tok = masters[station].return_token(*r.token);
      ledger.wait(h, station, tok.issued, now);
      if (logs.tokens) {
        fmt::print(*logs.tokens, "{}\t{}\t{}\treturn\t{}\n", now.seconds(),
                   net.station(station).code, h, now - tok.issued);
      }
      r.token.reset();
      go_by_road(h, net.station(station).location);
    };
    if (strategy->on_human_wait({h, station, true})) {
      Route remaining = r.route;
      remaining.legs.assign(r.route.legs.begin() + static_cast<std::ptrdiff_t>(r.leg),
                            r.route.legs.end());
      const auto alt = choose_alternative_route(remaining, station, now, now, ctx);
      if (alt.kind == Alternative::Kind::Wait) continue;
      adopters.insert(h);
      if (alt.kind == Alternative::Kind::Road) {
        leave_station();
        continue;
      }
      r.route.legs = alt.route.legs;
      r.route.alight = alt.route.alight;
      r.route.egress_s = alt.route.egress_s;
      r.leg = 0;
      masters[station].redirect(*r.token, r.route.legs.front().alight_station(net));
      continue;
    }
    const auto& route_id = r.route.legs[r.leg].route;
    bool more = false;
    for (auto d : inquiry.next_departures(route_id, station, now, 4)) {
      if (d > now) more = true;
    }
    if (!more) {
      ++stats.stranded;
      leave_station();
    }
  }
}

void Simulation::Impl::depart(TrainId id) {
  auto& t = trains[id];
  const auto& route = net.route(t.route);
  const auto k = t.stop_index;
  const auto station = route.stops[k];
  const auto left = board(t, k);
  const auto delay = sched.now() - scheduled_departure(t);
  t.phase = TrainPhase::Running;
  note_train(t);
  log_train(t, station, "depart");
  const auto& run = runs.at(*t.run);
  inquiry.report(*t.run, RunStatus{t.route, run.slot, k + 1, std::max<std::int64_t>(0, delay),
                                   std::nullopt});
  if (const auto next = masters[station].release_platform(id)) {
    const auto other = *next;
    at(sched.now(), train_actor(other), "admit", [this, other] { admitted(other); });
  }
  if (!left.empty()) after_left_behind(t, k, left);
  at(sched.now() + route.run_s[k], train_actor(id), "approach", [this, id] {
    auto& tr = trains[id];
    ++tr.stop_index;
    tr.phase = TrainPhase::Approaching;
    note_train(tr);
    request_stop(id);
  });
}

void Simulation::Impl::leave_terminal(TrainId id) {
  auto& t = trains[id];
  const auto& route = net.route(t.route);
  const auto station = route.stops.back();
  if (const auto next = masters[station].release_platform(id)) {
    const auto other = *next;
    at(sched.now(), train_actor(other), "admit", [this, other] { admitted(other); });
  }
  log_train(t, station, "depot");
  inquiry.finish(*t.run);
  runs.erase(*t.run);
  t.run.reset();
  t.phase = TrainPhase::Depot;
  t.depot = station;
  note_train(t);
  auto& depot = depots[{t.line, station}];
  if (!depot.waiting.empty()) {
    const auto run = depot.waiting.front();
    depot.waiting.pop_front();
    take_run(id, run.route, run.slot);
  } else {
    depot.idle.push_back(id);
  }
}

// ---------------------------------------------------------------- manager

void Simulation::Impl::manage_hour() {
  const auto now = sched.now();
  const auto hour = now.hour_index();
  std::vector<EventAttendees> attending;
  for (const auto& ev : feed->events()) {
    EventAttendees a{&ev, {}};
    for (auto h : activation[ev.id].active_set()) a.humans.push_back(&people[h]);
    attending.push_back(std::move(a));
  }
  const auto estimate = manager.estimate_ridership(hour, attending);
  std::vector<TrainView> views;
  for (auto& t : trains) {
    t.pending_request = 0;  // unfunded requests are decided afresh every hour
    auto per_train = [&](std::int64_t hr) {
      const auto deps = schedule.departures_in_hour(t.route, hr % 24);
      return deps > 0 ? static_cast<double>(estimate.total(t.route, hr)) / deps : 0.0;
    };
    views.push_back({t.id, t.planned_compartments(), per_train(hour + 1), per_train(hour)});
  }
  const auto decision = strategy->on_hour({now, hour, views, pool.available, cfg.trains.compartment_seats});
  apply_decision(decision, trains, pool);
  stats.compartments_moved += decision.moves.size();
}

void Simulation::Impl::checkpoint() {
  auto& report = stats.checks;
  ++report.checkpoints;
  const auto now = sched.now();
  auto fail = [&](const std::string& what) {
    report.violations.push_back(fmt::format("t={} {}", now.seconds(), what));
  };
  std::size_t at_stations = 0;
  for (const auto& m : masters) {
    if (m.issued_count() - m.returned_count() != m.occupancy()) {
      fail(fmt::format("token balance at station {}", m.station()));
    }
    if (static_cast<int>(m.occupied().size()) > m.platform_count()) {
      fail(fmt::format("platforms over capacity at station {}", m.station()));
    }
    at_stations += m.occupancy();
  }
  std::vector<int> seen(people.size(), 0);
  std::size_t riding = 0;
  int compartments = pool.total();
  for (const auto& t : trains) {
    compartments += t.compartments;
    if (static_cast<int>(t.onboard.size()) > t.capacity()) {
      fail(fmt::format("train {} over capacity", t.id));
    }
    for (const auto& p : t.onboard) {
      ++seen[p.human];
      ++riding;
      if (rt[p.human].where != Where::Onboard || rt[p.human].train != t.id) {
        fail(fmt::format("human {} onboard train {} but elsewhere", p.human, t.id));
      }
    }
  }
  if (compartments != total_compartments || pool.available < 0 || pool.reserved < 0) {
    fail("compartments not conserved");
  }
  std::size_t waiting = 0;
  std::size_t onboard = 0;
  for (HumanId h = 0; h < people.size(); ++h) {
    const auto& r = rt[h];
    if (seen[h] > 1) fail(fmt::format("human {} on {} trains", h, seen[h]));
    switch (r.where) {
      case Where::Station:
        ++waiting;
        if (!r.token || masters[r.station].token_of(h) != r.token) {
          fail(fmt::format("human {} at a station without its token", h));
        }
        break;
      case Where::Onboard:
        ++onboard;
        if (seen[h] != 1) fail(fmt::format("human {} riding but not aboard", h));
        break;
      case Where::Place:
      case Where::Road:
        if (r.token || seen[h] != 0) fail(fmt::format("human {} in two places", h));
        break;
    }
  }
  if (waiting != at_stations) fail("station occupancy differs from waiting humans");
  if (onboard != riding) fail("onboard count differs from riding humans");
}

// ------------------------------------------------------------------ facade

Simulation::Simulation(const ScenarioConfig& config, SimulationLogs logs)
    : impl_(std::make_unique<Impl>(config, logs)) {}

Simulation::~Simulation() = default;

void Simulation::run() {
  auto& s = *impl_;
  if (s.ran) throw Error(ErrorCode::InvariantViolation, "a simulation runs once");
  s.ran = true;
  const auto end = s.cfg.horizon();
  const auto summary = s.sched.run_until(end);
  s.checkpoint();
  s.ledger.close(end);
  s.stats.dispatched = summary.dispatched;
  s.stats.alt_adopters = s.adopters.size();
  for (const auto& ev : s.feed->events()) {
    auto& out = s.stats.events[ev.id];
    out.active = s.activation[ev.id].active_set();
  }
}

const MetricsLedger& Simulation::metrics() const { return impl_->ledger; }
const SimulationStats& Simulation::stats() const { return impl_->stats; }
const std::vector<Human>& Simulation::people() const { return impl_->people; }
const SocialGraph& Simulation::graph() const { return impl_->graph; }
const std::vector<SocialEvent>& Simulation::events() const { return impl_->feed->events(); }

ReportSummary Simulation::summary() const {
  const auto& s = *impl_;
  const auto end = s.cfg.horizon();
  ReportSummary out;
  out.avg_wait_s = s.ledger.avg_wait(SimTime(0), end);
  out.avg_travel_s = s.ledger.avg_travel(SimTime(0), end + 1);
  out.alt_route_fraction =
      s.people.empty() ? 0.0
                       : static_cast<double>(s.adopters.size()) / static_cast<double>(s.people.size());
  return out;
}

}  // namespace railsim
