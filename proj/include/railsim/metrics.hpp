#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "railsim/network.hpp"
#include "railsim/population.hpp"
#include "railsim/sim_time.hpp"
#include "railsim/transit.hpp"

namespace railsim {

inline constexpr int kSectionsPerLine = 5;

struct LineSection {
  LineId line = 0;
  int index = 0;
  std::vector<StationId> stations;
};

/// Consecutive blocks of a line's stations; sizes differ by at most one and
/// earlier blocks take the extra stations.
std::vector<LineSection> partition_line(const TransitLine& line, int sections = kSectionsPerLine);

struct Interval {
  SimTime begin;
  SimTime end;

  std::int64_t length() const { return end - begin; }
  std::int64_t overlap(SimTime a, SimTime b) const;
};

struct TrainSegment {
  TrainId train = 0;
  SimTime begin;
  SimTime end;
  int onboard = 0;
  int capacity = 0;
  int section = -1;  // -1 outside any section (depot, approaching the origin)
};

struct WaitRecord {
  HumanId human = 0;
  StationId station = 0;
  SimTime begin;
  SimTime end;
};

struct TripRecord {
  HumanId human = 0;
  SimTime begin;
  SimTime end;
  bool used_rail = false;
};

/// Append-only record of train occupancy, waits and completed trips.
class MetricsLedger {
 public:
  MetricsLedger(const TransitNetwork& network, std::size_t population);

  const TransitNetwork& network() const { return *network_; }
  std::size_t population() const { return population_; }
  const std::vector<std::vector<LineSection>>& sections() const { return sections_; }
  /// Section index of `station` on `line`.
  int section_of(LineId line, StationId station) const;

  void add_train(TrainId id, LineId line, SimTime at, int capacity);
  /// New occupancy state of a train from `at` on.
  void train_state(TrainId id, SimTime at, int onboard, int capacity, int section);
  void wait(HumanId h, StationId station, SimTime begin, SimTime end);
  void trip(HumanId h, SimTime begin, SimTime end, bool used_rail);
  /// Closes open train segments at `at`.
  void close(SimTime at);

  const std::vector<TrainSegment>& segments() const { return segments_; }
  const std::vector<WaitRecord>& waits() const { return waits_; }
  const std::vector<TripRecord>& trips() const { return trips_; }
  std::size_t train_count() const { return train_line_.size(); }
  LineId train_line(TrainId id) const { return train_line_.at(id); }

  /// Occupied seat-time over capacity-time within [a, b).
  double train_usage(TrainId id, SimTime a, SimTime b) const;
  /// Mean of train_usage over the fleet.
  double fleet_usage(SimTime a, SimTime b) const;
  /// Total wait inside [a, b) over the whole population.
  double avg_wait(SimTime a, SimTime b) const;
  /// Sum over the line's trains of seat-time spent in the section, each
  /// normalised by that train's capacity-time.
  double section_usage(LineId line, int section, SimTime a, SimTime b) const;
  /// Wait time inside [a, b) at the section's stations per wait overlapping [a, b).
  std::optional<double> section_wait(LineId line, int section, SimTime a, SimTime b) const;
  /// Mean duration of trips finishing in [a, b).
  std::optional<double> avg_travel(SimTime a, SimTime b) const;

 private:
  struct Open {
    SimTime since;
    int onboard = 0;
    int capacity = 0;
    int section = -1;
  };

  const TransitNetwork* network_;
  std::size_t population_;
  std::vector<std::vector<LineSection>> sections_;
  std::vector<std::vector<int>> station_section_;  // [line][station] -> section or -1
  std::vector<LineId> train_line_;
  std::vector<Open> open_;
  std::vector<TrainSegment> segments_;
  std::vector<WaitRecord> waits_;
  std::vector<TripRecord> trips_;
};

struct ReportSummary {
  double avg_wait_s = 0.0;
  std::optional<double> avg_travel_s;
  double alt_route_fraction = 0.0;
};

/// Writes usage.csv, wait.csv, summary.csv and hourly.csv for hours
/// [0, hours) into `dir`. Throws Error(IoError).
void emit_report(const MetricsLedger& ledger, std::int64_t hours, const ReportSummary& summary,
                 const std::filesystem::path& dir);

}  // namespace railsim
