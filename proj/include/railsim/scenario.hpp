#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "railsim/events.hpp"
#include "railsim/network.hpp"
#include "railsim/population.hpp"
#include "railsim/schedule.hpp"
#include "railsim/social.hpp"
#include "railsim/transit.hpp"

namespace railsim {

struct TrainConfig {
  int compartment_seats = kCompartmentSeats;
  std::optional<int> initial_capacity;  // computed from ridership when absent
  double real_daily_ridership = 2300000.0;
  double real_capacity = 1920.0;
};

struct PopulationConfig {
  std::size_t size = 0;
  std::optional<std::uint64_t> seed;  // defaults to the scenario seed
  PopulationParams params;
  std::optional<BoundingBox> bounds;  // defaults to the network bounds
};

struct SocialConfig {
  InfluenceModel model = InfluenceModel::Similarity;
  double constant_p = 0.5;
  DegreeParams degree;        // reference values
  bool scale_degree = true;   // scale `degree` to the population size
  int diffusion_step_minutes = 10;
};

struct EventsConfig {
  std::vector<SocialEvent> fixed;
  std::optional<EventGenerator> generator;
  PollParams poll;
};

struct StrategyConfig {
  std::string kind = "none";
  bool alt_routing = false;
  int pool = 10;
};

struct ScenarioConfig {
  std::string name;
  std::optional<std::uint64_t> seed;
  double horizon_hours = 24.0;
  double road_speed_kmh = 35.0;
  TransitNetwork network;
  std::map<LineId, LineSchedule> schedules;
  TrainConfig trains;
  PopulationConfig population;
  SocialConfig social;
  EventsConfig events;
  StrategyConfig strategy;
  /// Key-sorted, whitespace-free form of the source document.
  std::string canonical;

  std::uint64_t require_seed() const;
  SimTime horizon() const;
};

/// Parses a scenario document. Errors: ParseError, BadConfig,
/// DanglingReference, InvariantViolation.
ScenarioConfig parse_scenario(const std::string& text, const std::string& name = "scenario");

/// Reads `path`, or `path` + ".json" when `path` does not exist.
/// Throws Error(IoError) naming the path.
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// FNV-1a over the canonical text, as 16 hex digits.
std::string config_hash(const ScenarioConfig& config);

/// "lat,lon,start,end" with clock times; audience is every age group.
SocialEvent parse_event_flag(const std::string& text, int lead_minutes = 180);

}  // namespace railsim
