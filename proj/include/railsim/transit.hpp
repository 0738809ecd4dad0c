#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "railsim/network.hpp"
#include "railsim/population.hpp"
#include "railsim/schedule.hpp"
#include "railsim/social_event.hpp"

namespace railsim {

using TrainId = std::uint32_t;
using TokenId = std::uint64_t;

inline constexpr int kCompartmentSeats = 31;

struct Token {
  TokenId id = 0;
  HumanId human = 0;
  StationId destination = 0;
  SimTime issued;
};

enum class Admission { Admit, Hold };

/// Per-station bookkeeping: who is present and which trains hold platforms.
class StationMaster {
 public:
  StationMaster(StationId station, int platforms);

  StationId station() const { return station_; }
  int platform_count() const { return platforms_; }

  /// Throws Error(DuplicatePresence) if `h` already holds a token here.
  TokenId issue_token(HumanId h, StationId destination, SimTime now);
  /// Retires the token and returns it; the wait is now - issued.
  /// Throws Error(UnknownToken).
  Token return_token(TokenId id);

  /// New destination for an outstanding token (the holder changed plans).
  void redirect(TokenId id, StationId destination);

  std::size_t occupancy() const { return tokens_.size(); }
  std::uint64_t issued_count() const { return issued_; }
  std::uint64_t returned_count() const { return returned_; }
  /// Outstanding tokens in issue order.
  const std::map<TokenId, Token>& tokens() const { return tokens_; }
  std::optional<TokenId> token_of(HumanId h) const;

  Admission request_arrival(TrainId train, SimTime now);
  /// Frees the platform held by `train` and admits the longest-held train,
  /// if any (ties go to the lower id).
  std::optional<TrainId> release_platform(TrainId train);

  std::span<const TrainId> occupied() const { return occupied_; }
  std::size_t held_count() const { return held_.size(); }

 private:
  StationId station_;
  int platforms_;
  std::uint32_t next_token_ = 0;
  std::uint64_t issued_ = 0;
  std::uint64_t returned_ = 0;
  std::map<TokenId, Token> tokens_;
  std::map<HumanId, TokenId> by_human_;
  std::vector<TrainId> occupied_;
  std::vector<std::pair<SimTime, TrainId>> held_;
};

/// Who gets on at a stop: waiters accepted by `wants`, in issue order, up to
/// `free_seats`. The rest of the accepted waiters are left behind.
struct BoardingSplit {
  std::vector<TokenId> board;
  std::vector<TokenId> left;
};
BoardingSplit split_boarding(const StationMaster& master, int free_seats,
                             const std::function<bool(const Token&)>& wants);

struct Passenger {
  HumanId human = 0;
  std::size_t alight_index = 0;
};

enum class TrainPhase { Depot, Approaching, Held, Dwelling, Running };

struct Train {
  TrainId id = 0;
  LineId line = 0;
  RouteId route = 0;           // current or most recent route
  StationId depot = 0;         // where it rests between runs
  int compartments = 1;
  int seats_per_compartment = kCompartmentSeats;
  int pending_attach = 0;      // funded from the pool, applied at a terminal
  int pending_request = 0;     // awaiting a free pool compartment
  int pending_detach = 0;
  std::vector<Passenger> onboard;
  TrainPhase phase = TrainPhase::Depot;
  std::size_t stop_index = 0;  // index on `route` of the current/next stop
  std::optional<std::uint64_t> run;  // live run id

  int capacity() const { return compartments * seats_per_compartment; }
  /// Compartment count once pending changes are applied.
  int planned_compartments() const {
    return compartments + pending_attach + pending_request - pending_detach;
  }
};

/// Seats for the simulated city, scaled from a real system and rounded up to
/// whole compartments (at least one).
int initial_capacity(double sim_daily_ridership, double real_daily_ridership, double real_capacity,
                     int compartment_seats = kCompartmentSeats);

/// Where a human is assumed to start from at time `t` when estimating ridership.
GeoPoint estimated_source(const Human& h, SimTime t);

struct EventAttendees {
  const SocialEvent* event = nullptr;
  std::vector<const Human*> humans;
};

/// Increase in riders per route for hour `hour` (absolute hour index) from
/// events starting in that hour: on each route, attendees whose source
/// station comes before the event's station.
std::vector<int> ridership_delta(const TransitNetwork& network,
                                 std::span<const EventAttendees> events, std::int64_t hour);

/// Per-(route, hour) riders: the recorded history plus event deltas.
class RidershipEstimate {
 public:
  RidershipEstimate(std::size_t routes, std::int64_t first_hour, std::size_t hours);

  std::int64_t first_hour() const { return first_hour_; }
  std::size_t hours() const { return hours_; }
  int baseline(RouteId r, std::int64_t hour) const;
  int delta(RouteId r, std::int64_t hour) const;
  int total(RouteId r, std::int64_t hour) const { return baseline(r, hour) + delta(r, hour); }

  void set_baseline(RouteId r, std::int64_t hour, int v);
  void set_delta(RouteId r, std::int64_t hour, int v);

 private:
  std::size_t slot(RouteId r, std::int64_t hour) const;

  std::size_t routes_;
  std::int64_t first_hour_;
  std::size_t hours_;
  std::vector<int> baseline_;
  std::vector<int> delta_;
};

/// Transport manager: ridership history and forecasts.
class TransportManager {
 public:
  TransportManager(const TransitNetwork& network, const TrainSchedule& schedule);

  /// Records one rider joining `route` at `t` (called as tokens are issued).
  void record_rider(RouteId route, SimTime t);
  int history(RouteId route, std::int64_t hour) const;

  /// Forecast for hours [from, from + 24): same hour on the previous day as
  /// baseline (zero on day 0) plus event deltas.
  RidershipEstimate estimate_ridership(std::int64_t from_hour,
                                       std::span<const EventAttendees> events) const;

 private:
  const TransitNetwork* network_;
  const TrainSchedule* schedule_;
  std::map<std::pair<RouteId, std::int64_t>, int> riders_;
};

}  // namespace railsim
