#include "railsim/network.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "railsim/error.hpp"

namespace railsim {

std::int64_t TransitLine::loop_seconds() const {
  std::int64_t total = 0;
  for (int r : run_s) total += r;
  return total + static_cast<std::int64_t>(stations.size()) * dwell_s;
}

std::optional<std::size_t> TransitRoute::index_of(StationId s) const {
  const bool loop = stops.size() > 1 && stops.front() == stops.back();
  const auto end = loop ? last_index() : stops.size();
  for (std::size_t i = 0; i < end; ++i) {
    if (stops[i] == s) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> TransitRoute::index_after(StationId s, std::size_t from) const {
  for (std::size_t j = from + 1; j < stops.size(); ++j) {
    if (stops[j] == s) return j;
  }
  return std::nullopt;
}

std::int64_t TransitRoute::ride_seconds(std::size_t from, std::size_t to) const {
  return arrive_offset.at(to) - depart_offset.at(from);
}

TransitNetwork::TransitNetwork(std::vector<Station> stations, std::vector<TransitLine> lines)
    : stations_(std::move(stations)), lines_(std::move(lines)) {
  for (StationId i = 0; i < stations_.size(); ++i) {
    stations_[i].id = i;
    stations_[i].lines.clear();
  }
  for (LineId l = 0; l < lines_.size(); ++l) {
    lines_[l].id = l;
    for (std::size_t k = 0; k < lines_[l].stations.size(); ++k) {
      const auto s = lines_[l].stations[k];
      if (s >= stations_.size()) {
        throw Error(ErrorCode::DanglingReference,
                    "line " + lines_[l].code + " references unknown station index " +
                        std::to_string(s));
      }
      stations_[s].lines.push_back({l, static_cast<int>(k)});
    }
  }
  validate();
  build_routes();
}

void TransitNetwork::validate() const {
  std::set<std::string> codes;
  for (const auto& st : stations_) {
    if (!codes.insert(st.code).second) {
      throw Error(ErrorCode::InvariantViolation, "duplicate station id " + st.code);
    }
    if (st.platform_count < 1) {
      throw Error(ErrorCode::InvariantViolation,
                  "station " + st.code + " must have at least one platform");
    }
    if (!st.location.valid()) {
      throw Error(ErrorCode::InvariantViolation, "station " + st.code + " has invalid coordinates");
    }
  }
  std::set<std::string> line_codes;
  for (const auto& line : lines_) {
    if (!line_codes.insert(line.code).second) {
      throw Error(ErrorCode::InvariantViolation, "duplicate line id " + line.code);
    }
    if (line.stations.size() < 2) {
      throw Error(ErrorCode::InvariantViolation, "line " + line.code + " needs at least 2 stations");
    }
    std::set<StationId> seen;
    for (auto s : line.stations) {
      if (!seen.insert(s).second) {
        throw Error(ErrorCode::InvariantViolation, "line " + line.code + " visits station " +
                                                       stations_[s].code + " twice");
      }
    }
    if (line.run_s.size() != line.segment_count()) {
      throw Error(ErrorCode::InvariantViolation,
                  "line " + line.code + " needs " + std::to_string(line.segment_count()) +
                      " run times, got " + std::to_string(line.run_s.size()));
    }
    for (int r : line.run_s) {
      if (r <= 0) {
        throw Error(ErrorCode::InvariantViolation, "line " + line.code + " has a non-positive run time");
      }
    }
    if (line.dwell_s < 0) {
      throw Error(ErrorCode::InvariantViolation, "line " + line.code + " has a negative dwell time");
    }
  }
}

void TransitNetwork::build_routes() {
  routes_.clear();
  routes_at_.assign(stations_.size(), {});
  for (const auto& line : lines_) {
    for (int dir = 0; dir < 2; ++dir) {
      TransitRoute route;
      route.id = static_cast<RouteId>(routes_.size());
      route.line = line.id;
      route.direction = dir;
      route.dwell_s = line.dwell_s;
      const auto n = line.stations.size();
      if (dir == 0) {
        route.stops = line.stations;
        route.run_s = line.run_s;
        if (line.circular) route.stops.push_back(line.stations.front());
      } else if (!line.circular) {
        route.stops.assign(line.stations.rbegin(), line.stations.rend());
        route.run_s.assign(line.run_s.rbegin(), line.run_s.rend());
      } else {
        // s0, s(n-1), ..., s1, s0; run_s[i] joins stations i and i+1 (mod n).
        route.stops.push_back(line.stations[0]);
        for (std::size_t k = n; k-- > 1;) route.stops.push_back(line.stations[k]);
        route.stops.push_back(line.stations[0]);
        route.run_s.assign(line.run_s.rbegin(), line.run_s.rend());
      }
      route.arrive_offset.assign(route.stops.size(), 0);
      route.depart_offset.assign(route.stops.size(), 0);
      for (std::size_t k = 1; k < route.stops.size(); ++k) {
        route.arrive_offset[k] = route.depart_offset[k - 1] + route.run_s[k - 1];
        route.depart_offset[k] = route.arrive_offset[k] + route.dwell_s;
      }
      for (std::size_t k = 0; k < route.stops.size(); ++k) {
        auto& at = routes_at_[route.stops[k]];
        if (std::find(at.begin(), at.end(), route.id) == at.end()) at.push_back(route.id);
      }
      routes_.push_back(std::move(route));
    }
  }
}

std::optional<StationId> TransitNetwork::find_station(const std::string& code) const {
  for (const auto& st : stations_) {
    if (st.code == code) return st.id;
  }
  return std::nullopt;
}

std::optional<LineId> TransitNetwork::find_line(const std::string& code) const {
  for (const auto& line : lines_) {
    if (line.code == code) return line.id;
  }
  return std::nullopt;
}

BoundingBox TransitNetwork::bounds() const {
  BoundingBox box;
  for (const auto& st : stations_) box.extend(st.location);
  return box;
}

StationId nearest_station(GeoPoint p, const TransitNetwork& network) {
  if (network.empty()) {
    throw Error(ErrorCode::EmptyNetwork, "nearest_station on an empty network");
  }
  StationId best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& st : network.stations()) {
    const double d = haversine_m(p, st.location);
    if (d < best_d) {
      best_d = d;
      best = st.id;
    }
  }
  return best;
}

namespace {

template <typename T>
T get_or(const nlohmann::json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::ParseError, where + ": field '" + key + "' has the wrong type");
  }
}

template <typename T>
T require(const nlohmann::json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorCode::ParseError, where + ": missing field '" + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::ParseError, where + ": field '" + key + "' has the wrong type");
  }
}

}  // namespace

TransitNetwork load_network(const nlohmann::json& section) {
  if (!section.is_object() || !section.contains("stations") || !section.contains("lines") ||
      !section.at("stations").is_array() || !section.at("lines").is_array()) {
    throw Error(ErrorCode::ParseError, "network: expected 'stations' and 'lines' arrays");
  }
  std::vector<Station> stations;
  std::map<std::string, StationId> by_code;
  for (const auto& js : section.at("stations")) {
    Station st;
    st.code = require<std::string>(js, "id", "network.stations");
    const std::string where = "station " + st.code;
    st.name = get_or<std::string>(js, "name", st.code, where);
    st.location = {require<double>(js, "lat", where), require<double>(js, "lon", where)};
    st.platform_count = get_or<int>(js, "platforms", kDefaultPlatforms, where);
    if (by_code.count(st.code)) {
      throw Error(ErrorCode::InvariantViolation, "duplicate station id " + st.code);
    }
    by_code[st.code] = static_cast<StationId>(stations.size());
    stations.push_back(std::move(st));
  }
  std::vector<TransitLine> lines;
  for (const auto& jl : section.at("lines")) {
    TransitLine line;
    line.code = require<std::string>(jl, "id", "network.lines");
    const std::string where = "line " + line.code;
    for (const auto& code : require<std::vector<std::string>>(jl, "stations", where)) {
      auto it = by_code.find(code);
      if (it == by_code.end()) {
        throw Error(ErrorCode::DanglingReference,
                    where + " references unknown station " + code);
      }
      line.stations.push_back(it->second);
    }
    line.circular = get_or<bool>(jl, "circular", false, where);
    line.dwell_s = get_or<int>(jl, "dwell_s", kDefaultDwellSeconds, where);
    const auto segments = line.stations.size() < 2 ? 0 : line.segment_count();
    if (jl.contains("run_s") && jl.at("run_s").is_array()) {
      line.run_s = require<std::vector<int>>(jl, "run_s", where);
    } else {
      line.run_s.assign(segments, get_or<int>(jl, "run_s", kDefaultRunSeconds, where));
    }
    lines.push_back(std::move(line));
  }
  return TransitNetwork(std::move(stations), std::move(lines));
}

}  // namespace railsim
