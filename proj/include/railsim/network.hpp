#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "railsim/geo.hpp"

namespace railsim {

using StationId = std::uint32_t;
using LineId = std::uint32_t;
using RouteId = std::uint32_t;

inline constexpr int kDefaultRunSeconds = 120;
inline constexpr int kDefaultDwellSeconds = 30;
inline constexpr int kDefaultPlatforms = 2;

struct LineMembership {
  LineId line = 0;
  int ordinal = 0;  // 0-based position on the line
};

struct Station {
  StationId id = 0;  // index in load order; also the tie-break key
  std::string code;
  std::string name;
  GeoPoint location;
  int platform_count = kDefaultPlatforms;
  std::vector<LineMembership> lines;
};

struct TransitLine {
  LineId id = 0;
  std::string code;
  std::vector<StationId> stations;
  bool circular = false;
  /// Seconds per adjacent pair; circular lines include the closing pair.
  std::vector<int> run_s;
  int dwell_s = kDefaultDwellSeconds;

  std::size_t segment_count() const { return stations.size() - (circular ? 0 : 1); }
  /// Time for a train to pass every station once and return to its start.
  std::int64_t loop_seconds() const;
};

/// One direction of service over a line. Circular routes end where they
/// start, so `stops` has station_count + 1 entries.
struct TransitRoute {
  RouteId id = 0;
  LineId line = 0;
  int direction = 0;  // 0 = listed order, 1 = reverse
  std::vector<StationId> stops;
  std::vector<int> run_s;  // stops.size() - 1 entries
  int dwell_s = kDefaultDwellSeconds;
  /// Offsets from the origin departure; arrival[0] is unused (0).
  std::vector<std::int64_t> arrive_offset;
  std::vector<std::int64_t> depart_offset;

  std::size_t last_index() const { return stops.size() - 1; }
  /// First index at which `s` is a stop, if any (never the closing stop).
  std::optional<std::size_t> index_of(StationId s) const;
  /// First index j > from with stops[j] == s.
  std::optional<std::size_t> index_after(StationId s, std::size_t from) const;
  /// Seconds from departing stop `from` to arriving at stop `to` (from < to).
  std::int64_t ride_seconds(std::size_t from, std::size_t to) const;
  std::int64_t one_way_seconds() const { return arrive_offset.back(); }
};

class TransitNetwork {
 public:
  TransitNetwork() = default;
  TransitNetwork(std::vector<Station> stations, std::vector<TransitLine> lines);

  const std::vector<Station>& stations() const { return stations_; }
  const std::vector<TransitLine>& lines() const { return lines_; }
  const std::vector<TransitRoute>& routes() const { return routes_; }

  const Station& station(StationId id) const { return stations_.at(id); }
  const TransitLine& line(LineId id) const { return lines_.at(id); }
  const TransitRoute& route(RouteId id) const { return routes_.at(id); }

  std::optional<StationId> find_station(const std::string& code) const;
  std::optional<LineId> find_line(const std::string& code) const;
  /// Routes (both directions) serving `s`.
  const std::vector<RouteId>& routes_at(StationId s) const { return routes_at_.at(s); }

  bool empty() const { return stations_.empty(); }
  BoundingBox bounds() const;

 private:
  void validate() const;
  void build_routes();

  std::vector<Station> stations_;
  std::vector<TransitLine> lines_;
  std::vector<TransitRoute> routes_;
  std::vector<std::vector<RouteId>> routes_at_;
};

/// Station minimizing haversine distance; ties go to the lower id.
/// Throws Error(EmptyNetwork).
StationId nearest_station(GeoPoint p, const TransitNetwork& network);

/// Builds and validates a network from the `network` section of a scenario:
///   { "stations": [{id, name, lat, lon, platforms?}],
///     "lines": [{id, stations: [...], circular?, run_s?, dwell_s?}] }
/// Errors: ParseError, DanglingReference, InvariantViolation.
TransitNetwork load_network(const nlohmann::json& section);

}  // namespace railsim
