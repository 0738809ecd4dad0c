#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "railsim/metrics.hpp"
#include "railsim/scenario.hpp"

namespace railsim {

struct SimulationLogs {
  std::ostream* actions = nullptr;  // one line per dispatched action
  std::ostream* trains = nullptr;   // train movements
  std::ostream* tokens = nullptr;   // token issues and returns
};

struct EventOutcome {
  EventId id = 0;
  std::size_t seeds = 0;
  std::size_t declined = 0;
  std::vector<HumanId> active;  // seeds and accepted humans, in activation order
  std::size_t arrived = 0;      // attendees who reached the venue before it ended
};

struct CheckReport {
  std::size_t checkpoints = 0;
  std::vector<std::string> violations;
};

struct SimulationStats {
  std::uint64_t dispatched = 0;
  std::size_t trips_started = 0;
  std::size_t trips_completed = 0;
  std::size_t rail_trips = 0;
  std::size_t planned_rail_trips = 0;  // day-0 plan used for sizing
  int initial_capacity = 0;
  std::size_t fleet = 0;
  std::size_t left_behind = 0;     // humans a full train could not take
  std::size_t stranded = 0;        // sent by road after the last train
  std::size_t alt_adopters = 0;
  std::size_t compartments_moved = 0;
  std::vector<EventOutcome> events;
  CheckReport checks;
};

/// One complete run of a scenario.
class Simulation {
 public:
  explicit Simulation(const ScenarioConfig& config, SimulationLogs logs = {});
  ~Simulation();
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  /// Runs to the configured horizon. May be called once.
  void run();

  const MetricsLedger& metrics() const;
  const SimulationStats& stats() const;
  const std::vector<Human>& people() const;
  const SocialGraph& graph() const;
  const std::vector<SocialEvent>& events() const;
  ReportSummary summary() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace railsim
