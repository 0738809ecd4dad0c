#include <cmath>
#include <limits>

#include "doctest.h"
#include "json.hpp"
#include "railsim/error.hpp"
#include "railsim/geo.hpp"
#include "railsim/network.hpp"
#include "railsim/rng.hpp"
#include "railsim/scenario.hpp"

#ifndef RAILSIM_SCENARIO_DIR
#define RAILSIM_SCENARIO_DIR "scenarios"
#endif

using namespace railsim;
using nlohmann::json;

namespace {

json two_station_line() {
  return {{"stations", {{{"id", "A"}, {"lat", 1.30}, {"lon", 103.80}},
                        {{"id", "B"}, {"lat", 1.30}, {"lon", 103.82}}}},
          {"lines", {{{"id", "L"}, {"stations", {"A", "B"}}}}}};
}

}  // namespace

TEST_CASE("road time is zero for the same point") {
  RoadRouter road(35.0);
  CHECK(road.travel_seconds({1.3, 103.8}, {1.3, 103.8}) == 0);
}

TEST_CASE("great-circle distances") {
  // One degree of longitude on the equator with the mean Earth radius.
  CHECK(haversine_m({0, 0}, {0, 1}) == doctest::Approx(111195.08).epsilon(1e-6));
  // A quarter meridian.
  CHECK(haversine_m({0, 0}, {90, 0}) == doctest::Approx(10007557.2).epsilon(1e-6));
  CHECK(haversine_m({1.3, 103.8}, {1.4, 103.9}) == haversine_m({1.4, 103.9}, {1.3, 103.8}));
}

TEST_CASE("35 km at 35 km/h takes an hour") {
  const double dlon = 35000.0 / kEarthRadiusM * 180.0 / M_PI;
  const GeoPoint a{0, 0};
  const GeoPoint b{0, dlon};
  CHECK(haversine_m(a, b) == doctest::Approx(35000.0));
  CHECK(RoadRouter(35.0).travel_seconds(a, b) == 3600);
}

TEST_CASE("nearest station") {
  const auto net = load_network(
      {{"stations", {{{"id", "E"}, {"lat", 0.0}, {"lon", 0.01}}, {{"id", "W"}, {"lat", 0.0}, {"lon", -0.01}}}},
       {"lines", {{{"id", "L"}, {"stations", {"W", "E"}}}}}});
  SUBCASE("exact location") { CHECK(nearest_station({0.0, -0.01}, net) == 1); }
  SUBCASE("equidistant goes to the lower id") { CHECK(nearest_station({0.0, 0.0}, net) == 0); }
  SUBCASE("empty network") { CHECK_THROWS_AS(nearest_station({0, 0}, TransitNetwork{}), Error); }
}

TEST_CASE("nearest station matches a linear scan") {
  RngStreams rng(20);
  auto& r = rng.stream("fixture");
  json stations = json::array();
  json codes = json::array();
  for (int i = 0; i < 20; ++i) {
    const auto code = "S" + std::to_string(i);
    stations.push_back({{"id", code}, {"lat", r.uniform(1.25, 1.45)}, {"lon", r.uniform(103.6, 104.0)}});
    codes.push_back(code);
  }
  const auto net = load_network({{"stations", stations}, {"lines", {{{"id", "L"}, {"stations", codes}}}}});
  for (int k = 0; k < 2000; ++k) {
    const GeoPoint p{r.uniform(1.2, 1.5), r.uniform(103.5, 104.1)};
    StationId best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < stations.size(); ++i) {
      const double lat = stations[i]["lat"];
      const double lon = stations[i]["lon"];
      const double d = haversine_m(p, {lat, lon});
      if (d < best_d) {
        best_d = d;
        best = static_cast<StationId>(i);
      }
    }
    REQUIRE(nearest_station(p, net) == best);
  }
}

TEST_CASE("shipped singapore-like network") {
  const auto cfg = load_scenario(std::string(RAILSIM_SCENARIO_DIR) + "/singapore-like.json");
  CHECK(cfg.network.lines().size() == 4);
  CHECK(cfg.network.stations().size() == 87);
}

TEST_CASE("minimal network") {
  const auto net = load_network(two_station_line());
  CHECK(net.stations().size() == 2);
  CHECK(net.lines().size() == 1);
  CHECK(net.routes().size() == 2);
  CHECK(net.route(0).stops == std::vector<StationId>{0, 1});
  CHECK(net.route(1).stops == std::vector<StationId>{1, 0});
}

TEST_CASE("unknown station in a line") {
  auto doc = two_station_line();
  doc["lines"][0]["stations"].push_back("C");
  try {
    load_network(doc);
    FAIL("expected DanglingReference");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DanglingReference);
  }
}

TEST_CASE("missing scenario file names the path") {
  try {
    load_scenario("/nonexistent/where.json");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
    CHECK(std::string(e.what()).find("/nonexistent/where.json") != std::string::npos);
  }
}
