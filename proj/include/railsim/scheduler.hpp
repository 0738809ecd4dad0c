#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <algorithm>
#include <string>
#include <vector>

#include "railsim/sim_time.hpp"

namespace railsim {

enum class ActorType : std::uint8_t { System, Human, Train, Station, Manager, Feed };

struct ActorId {
  ActorType type = ActorType::System;
  std::uint32_t index = 0;

  std::string label() const;
};

using ActionId = std::uint64_t;

/// A pending callback. `kind` must point at a string with static storage.
struct TimedAction {
  SimTime fire_at;
  ActorId actor;
  const char* kind = "";
  std::function<void()> payload;
  std::uint64_t seq = 0;
};

struct RunSummary {
  std::uint64_t dispatched = 0;
  SimTime end;
};

/// Min-heap discrete-event scheduler. Ties on fire_at are broken by
/// insertion sequence, never by actor.
class Scheduler {
 public:
  SimTime now() const { return now_; }
  std::size_t pending() const { return queue_.size(); }

  /// Throws Error(PastTime) if fire_at < now().
  ActionId schedule(SimTime fire_at, ActorId actor, const char* kind,
                    std::function<void()> payload);

  /// Dispatches every action with fire_at <= t_end; leaves now() == t_end.
  RunSummary run_until(SimTime t_end);

  /// One line per dispatched action: "<seconds>\t<actor>\t<kind>".
  void set_log(std::ostream* log) { log_ = log; }

 private:
  struct Later {
    bool operator()(const TimedAction& a, const TimedAction& b) const {
      if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
      return a.seq > b.seq;
    }
  };

  SimTime now_;
  std::uint64_t next_seq_ = 0;
  std::vector<TimedAction> queue_;  // heap ordered by Later
  std::ostream* log_ = nullptr;
};

}  // namespace railsim
