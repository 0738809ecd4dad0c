#include "railsim/scenario.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "railsim/error.hpp"
#include "railsim/rng.hpp"

namespace railsim {

using nlohmann::json;

namespace {

template <typename T>
T field(const json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key) || obj.at(key).is_null()) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::BadConfig, where + "." + key + " has the wrong type");
  }
}

template <typename T>
T required(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorCode::BadConfig, where + "." + key + " is required");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::BadConfig, where + "." + key + " has the wrong type");
  }
}

std::int64_t clock_field(const json& obj, const char* key, std::int64_t fallback,
                         const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (v.is_string()) return parse_clock(v.get<std::string>()).seconds();
  if (v.is_number()) return static_cast<std::int64_t>(v.get<double>() * 60.0);  // minutes
  throw Error(ErrorCode::BadConfig, where + "." + key + " must be a clock time");
}

BoundingBox parse_bounds(const json& j, const std::string& where) {
  BoundingBox b{required<double>(j, "min_lat", where), required<double>(j, "min_lon", where),
                required<double>(j, "max_lat", where), required<double>(j, "max_lon", where)};
  if (b.empty()) throw Error(ErrorCode::BadConfig, where + " is empty");
  return b;
}

LineSchedule parse_line_schedule(const json& j, const LineSchedule& base, const std::string& where) {
  LineSchedule ls = base;
  ls.first_departure_s = clock_field(j, "first_departure", ls.first_departure_s, where);
  ls.last_departure_s = clock_field(j, "last_departure", ls.last_departure_s, where);
  if (j.contains("headway_minutes")) {
    ls.base_headway_s = static_cast<int>(field<double>(j, "headway_minutes", 5.0, where) * 60.0);
  }
  if (j.contains("headways")) {
    ls.bands.clear();
    for (const auto& b : j.at("headways")) {
      HeadwayBand band;
      band.from_s = clock_field(b, "from", 0, where + ".headways");
      band.to_s = clock_field(b, "to", 0, where + ".headways");
      band.headway_s = static_cast<int>(required<double>(b, "minutes", where + ".headways") * 60.0);
      if (band.to_s <= band.from_s) {
        throw Error(ErrorCode::BadConfig, where + ".headways: band must end after it starts");
      }
      ls.bands.push_back(band);
    }
  }
  return ls;
}

SocialEvent parse_event(const json& j, const std::string& where) {
  SocialEvent ev;
  ev.location = {required<double>(j, "lat", where), required<double>(j, "lon", where)};
  const auto day = field<std::int64_t>(j, "day", 0, where) * SimTime::kDay;
  ev.start = SimTime(day + clock_field(j, "start", -1, where));
  ev.end = SimTime(day + clock_field(j, "end", -1, where));
  if (!j.contains("start") || !j.contains("end")) {
    throw Error(ErrorCode::BadConfig, where + " needs start and end");
  }
  const auto lead = field<double>(j, "lead_minutes", 180.0, where);
  ev.broadcast_from =
      SimTime(std::max<std::int64_t>(0, ev.start.seconds() - static_cast<std::int64_t>(lead * 60)));
  const auto groups = field<std::vector<int>>(j, "age_groups", {1, 2, 3, 4, 5, 6}, where);
  for (int g : groups) {
    if (g < 1 || g > 6) throw Error(ErrorCode::BadConfig, where + ": age groups are 1..6");
    ev.age_groups.insert(g);
  }
  if (!ev.valid()) {
    throw Error(ErrorCode::BadConfig, where + " needs start < end and an audience");
  }
  return ev;
}

EventGenerator parse_generator(const json& j, const std::string& where) {
  EventGenerator g;
  g.count = field<int>(j, "count", 0, where);
  if (j.contains("bounds")) g.bounds = parse_bounds(j.at("bounds"), where + ".bounds");
  g.first_start_s = clock_field(j, "first_start", g.first_start_s, where);
  g.last_start_s = clock_field(j, "last_start", g.last_start_s, where);
  g.duration_min_minutes = field<int>(j, "duration_min", g.duration_min_minutes, where);
  g.duration_max_minutes = field<int>(j, "duration_max", g.duration_max_minutes, where);
  g.lead_min_minutes = field<int>(j, "lead_min", g.lead_min_minutes, where);
  g.lead_max_minutes = field<int>(j, "lead_max", g.lead_max_minutes, where);
  return g;
}

}  // namespace

std::uint64_t ScenarioConfig::require_seed() const {
  if (!seed) throw Error(ErrorCode::BadConfig, "a seed is required (config 'seed' or --seed)");
  return *seed;
}

SimTime ScenarioConfig::horizon() const { return SimTime::hours(horizon_hours); }

ScenarioConfig parse_scenario(const std::string& text, const std::string& name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, name + ": " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, name + ": top level must be an object");

  ScenarioConfig cfg;
  cfg.name = field<std::string>(doc, "name", name, "scenario");
  if (doc.contains("seed")) cfg.seed = required<std::uint64_t>(doc, "seed", "scenario");
  cfg.horizon_hours = field<double>(doc, "horizon_hours", 24.0, "scenario");
  if (!(cfg.horizon_hours > 0.0)) throw Error(ErrorCode::BadConfig, "horizon_hours must be > 0");
  cfg.road_speed_kmh = field<double>(doc.value("road", json::object()), "speed_kmh", 35.0, "road");
  if (!(cfg.road_speed_kmh > 0.0)) throw Error(ErrorCode::BadConfig, "road.speed_kmh must be > 0");

  if (!doc.contains("network")) throw Error(ErrorCode::BadConfig, "scenario.network is required");
  cfg.network = load_network(doc.at("network"));

  const auto sched = doc.value("schedule", json::object());
  const auto defaults = parse_line_schedule(sched.value("defaults", json::object()), LineSchedule{},
                                            "schedule.defaults");
  const auto per_line = sched.value("lines", json::object());
  for (const auto& line : cfg.network.lines()) {
    cfg.schedules[line.id] =
        per_line.contains(line.code)
            ? parse_line_schedule(per_line.at(line.code), defaults, "schedule.lines." + line.code)
            : defaults;
  }
  for (const auto& [code, unused] : per_line.items()) {
    if (!cfg.network.find_line(code)) {
      throw Error(ErrorCode::DanglingReference, "schedule.lines references unknown line " + code);
    }
  }

  const auto trains = doc.value("trains", json::object());
  cfg.trains.compartment_seats = field<int>(trains, "compartment_seats", kCompartmentSeats, "trains");
  if (cfg.trains.compartment_seats <= 0) {
    throw Error(ErrorCode::BadConfig, "trains.compartment_seats must be > 0");
  }
  if (trains.contains("initial_capacity")) {
    cfg.trains.initial_capacity = required<int>(trains, "initial_capacity", "trains");
    if (*cfg.trains.initial_capacity <= 0 ||
        *cfg.trains.initial_capacity % cfg.trains.compartment_seats != 0) {
      throw Error(ErrorCode::BadConfig,
                  "trains.initial_capacity must be a positive multiple of the compartment size");
    }
  }
  cfg.trains.real_daily_ridership =
      field<double>(trains, "real_daily_ridership", cfg.trains.real_daily_ridership, "trains");
  cfg.trains.real_capacity = field<double>(trains, "real_capacity", cfg.trains.real_capacity, "trains");

  const auto pop = doc.value("population", json::object());
  const auto size = field<std::int64_t>(pop, "size", 0, "population");
  if (size < 0) throw Error(ErrorCode::BadConfig, "population.size must be >= 0");
  cfg.population.size = static_cast<std::size_t>(size);
  if (pop.contains("seed")) cfg.population.seed = required<std::uint64_t>(pop, "seed", "population");
  if (pop.contains("bounds")) cfg.population.bounds = parse_bounds(pop.at("bounds"), "population.bounds");
  if (pop.contains("weights")) {
    const auto w = pop.at("weights");
    const char* keys[] = {"working_professional", "student", "home_maker", "senior_citizen"};
    for (std::size_t i = 0; i < kCategoryCount; ++i) {
      cfg.population.params.category_weights[i] =
          field<double>(w, keys[i], kCategoryWeights[i], "population.weights");
    }
  }
  cfg.population.params.shop_radius_m =
      field<double>(pop, "shop_radius_m", cfg.population.params.shop_radius_m, "population");

  const auto social = doc.value("social", json::object());
  const auto model = field<std::string>(social, "model", "influence", "social");
  if (model == "influence") {
    cfg.social.model = InfluenceModel::Similarity;
  } else if (model == "constant") {
    cfg.social.model = InfluenceModel::Constant;
  } else {
    throw Error(ErrorCode::BadConfig, "social.model must be 'influence' or 'constant'");
  }
  cfg.social.constant_p = field<double>(social, "constant_p", 0.5, "social");
  if (social.contains("degree")) {
    const auto d = social.at("degree");
    cfg.social.degree.min = field<int>(d, "min", cfg.social.degree.min, "social.degree");
    cfg.social.degree.max = field<int>(d, "max", cfg.social.degree.max, "social.degree");
    cfg.social.degree.mean = field<double>(d, "mean", cfg.social.degree.mean, "social.degree");
    cfg.social.scale_degree = field<bool>(d, "scale", true, "social.degree");
  }
  cfg.social.diffusion_step_minutes = field<int>(social, "diffusion_step_minutes", 10, "social");
  if (cfg.social.diffusion_step_minutes <= 0) {
    throw Error(ErrorCode::BadConfig, "social.diffusion_step_minutes must be > 0");
  }

  if (doc.contains("events")) {
    const auto& ev = doc.at("events");
    const json* list = nullptr;
    if (ev.is_array()) {
      list = &ev;
    } else if (ev.is_object()) {
      if (ev.contains("list")) list = &ev.at("list");
      if (ev.contains("generator")) {
        cfg.events.generator = parse_generator(ev.at("generator"), "events.generator");
      }
      cfg.events.poll.interval_s =
          static_cast<std::int64_t>(field<double>(ev, "poll_interval_minutes", 60.0, "events") * 60);
      cfg.events.poll.probability = field<double>(ev, "poll_probability", 0.25, "events");
    } else {
      throw Error(ErrorCode::BadConfig, "events must be a list or an object");
    }
    if (list) {
      int i = 0;
      for (const auto& e : *list) cfg.events.fixed.push_back(parse_event(e, "events[" + std::to_string(i++) + "]"));
    }
  }

  const auto strat = doc.value("strategy", json::object());
  cfg.strategy.kind = field<std::string>(strat, "kind", "none", "strategy");
  cfg.strategy.alt_routing = field<bool>(strat, "alt_routing", false, "strategy");
  cfg.strategy.pool = field<int>(strat, "pool", 10, "strategy");
  if (cfg.strategy.pool < 0) throw Error(ErrorCode::BadConfig, "strategy.pool must be >= 0");
  if (cfg.strategy.kind != "none" && cfg.strategy.kind != "greedy") {
    throw Error(ErrorCode::BadConfig, "strategy.kind must be 'none' or 'greedy'");
  }

  cfg.canonical = doc.dump();
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  auto actual = path;
  if (!std::filesystem::is_regular_file(actual)) {
    auto with_ext = path;
    with_ext += ".json";
    if (std::filesystem::is_regular_file(with_ext)) {
      actual = with_ext;
    } else {
      throw Error(ErrorCode::IoError, "cannot read scenario " + path.string());
    }
  }
  std::ifstream in(actual, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read scenario " + actual.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str(), actual.stem().string());
}

std::string config_hash(const ScenarioConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(hash_name(config.canonical)));
  return buf;
}

SocialEvent parse_event_flag(const std::string& text, int lead_minutes) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string piece; std::getline(in, piece, ',');) parts.push_back(piece);
  if (parts.size() != 4) {
    throw Error(ErrorCode::BadConfig, "--event expects lat,lon,start,end; got '" + text + "'");
  }
  SocialEvent ev;
  try {
    ev.location = {std::stod(parts[0]), std::stod(parts[1])};
  } catch (const std::exception&) {
    throw Error(ErrorCode::BadConfig, "--event has a bad coordinate in '" + text + "'");
  }
  ev.start = parse_clock(parts[2]);
  ev.end = parse_clock(parts[3]);
  ev.broadcast_from = SimTime(std::max<std::int64_t>(0, ev.start.seconds() - lead_minutes * 60));
  for (int g = 1; g <= 6; ++g) ev.age_groups.insert(g);
  if (!ev.valid() || !ev.location.valid()) {
    throw Error(ErrorCode::BadConfig, "--event needs valid coordinates and start < end");
  }
  return ev;
}

}  // namespace railsim
