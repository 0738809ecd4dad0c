#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "railsim/population.hpp"
#include "railsim/routing.hpp"
#include "railsim/social_event.hpp"

namespace railsim {

class RngStream;
class RngStreams;

struct EventGenerator {
  int count = 0;
  BoundingBox bounds;
  std::int64_t first_start_s = 8 * 3600;   // earliest start, seconds since day 0
  std::int64_t last_start_s = 20 * 3600;   // latest start
  int duration_min_minutes = 60;
  int duration_max_minutes = 240;
  int lead_min_minutes = 60;
  int lead_max_minutes = 360;
};

/// Events uniform over `bounds` and the start window; the audience is a
/// contiguous block of age groups picked uniformly among all such blocks.
/// Throws Error(BadConfig) on inconsistent ranges.
std::vector<SocialEvent> generate_events(const EventGenerator& config, RngStream& rng);

struct PollParams {
  std::int64_t interval_s = 3600;
  double probability = 0.25;
};

/// The broadcaster humans poll for upcoming events.
class BroadcastFeed {
 public:
  BroadcastFeed(std::vector<SocialEvent> events, PollParams params);

  const std::vector<SocialEvent>& events() const { return events_; }
  const SocialEvent& event(EventId id) const;
  const PollParams& params() const { return params_; }

  /// Poll tick times in [from, to) at which at least one event is broadcasting.
  std::vector<SimTime> poll_ticks(SimTime from, SimTime to) const;

  /// One poll by `h` at `t`. Succeeds with the configured probability (coin
  /// keyed by human and tick) and then returns events being broadcast at `t`
  /// that `h` has not seen before.
  std::vector<EventId> poll(HumanId h, SimTime t, const RngStreams& rng);

  bool seen(HumanId h, EventId ev) const { return seen_.count({h, ev}) > 0; }

 private:
  std::vector<SocialEvent> events_;
  PollParams params_;
  std::set<std::pair<HumanId, EventId>> seen_;
};

/// Whether a human who saw `ev` becomes a seed: the audience must include
/// its age group and it must be able to arrive by the start, leaving `from`
/// at `ready`.
bool inject(const SocialEvent& ev, const Human& h, GeoPoint from, SimTime ready,
            const TravelContext& ctx);

}  // namespace railsim
