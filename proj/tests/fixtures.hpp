#pragma once

#include <map>
#include <memory>
#include <vector>

#include "json.hpp"
#include "railsim/geo.hpp"
#include "railsim/network.hpp"
#include "railsim/routing.hpp"
#include "railsim/schedule.hpp"

// A network together with its timetable, road and inquiry, wired as a
// TravelContext.
struct World {
  railsim::TransitNetwork net;
  std::unique_ptr<railsim::TrainSchedule> schedule;
  std::unique_ptr<railsim::TrainInquiry> inquiry;
  railsim::RoadRouter road;
  railsim::TravelContext ctx;

  World(const nlohmann::json& network, std::map<railsim::LineId, railsim::LineSchedule> lines,
        double road_kmh)
      : net(railsim::load_network(network)), road(road_kmh) {
    schedule = std::make_unique<railsim::TrainSchedule>(net, std::move(lines));
    inquiry = std::make_unique<railsim::TrainInquiry>(net, *schedule);
    ctx = {&net, &road, inquiry.get()};
  }
  World(const World&) = delete;
  World& operator=(const World&) = delete;

  railsim::GeoPoint at(const char* code) const {
    return net.station(*net.find_station(code)).location;
  }
};

inline railsim::LineSchedule every(int headway_s, std::int64_t first_s = 5 * 3600 + 1800) {
  railsim::LineSchedule ls;
  ls.first_departure_s = first_s;
  ls.base_headway_s = headway_s;
  return ls;
}
