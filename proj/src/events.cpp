#include "railsim/events.hpp"

#include <algorithm>

#include "railsim/error.hpp"
#include "railsim/rng.hpp"

namespace railsim {

std::vector<SocialEvent> generate_events(const EventGenerator& config, RngStream& rng) {
  if (config.count < 0) throw Error(ErrorCode::BadConfig, "events.generator.count must be >= 0");
  if (config.count == 0) return {};
  if (config.bounds.empty()) throw Error(ErrorCode::BadConfig, "events.generator.bounds is empty");
  if (config.last_start_s < config.first_start_s || config.first_start_s < 0) {
    throw Error(ErrorCode::BadConfig, "events.generator start window is inverted");
  }
  if (config.duration_min_minutes <= 0 || config.duration_max_minutes < config.duration_min_minutes) {
    throw Error(ErrorCode::BadConfig, "events.generator duration range is invalid");
  }
  if (config.lead_min_minutes < 0 || config.lead_max_minutes < config.lead_min_minutes) {
    throw Error(ErrorCode::BadConfig, "events.generator lead range is invalid");
  }
  // All 21 contiguous age blocks within 1..6.
  std::vector<std::pair<int, int>> blocks;
  for (int lo = 1; lo <= 6; ++lo) {
    for (int hi = lo; hi <= 6; ++hi) blocks.emplace_back(lo, hi);
  }
  std::vector<SocialEvent> out;
  for (int i = 0; i < config.count; ++i) {
    SocialEvent ev;
    ev.id = static_cast<EventId>(i);
    ev.location = config.bounds.sample(rng);
    ev.start = SimTime(rng.uniform_int(config.first_start_s, config.last_start_s));
    ev.end = ev.start + 60 * rng.uniform_int(config.duration_min_minutes, config.duration_max_minutes);
    const auto lead = 60 * rng.uniform_int(config.lead_min_minutes, config.lead_max_minutes);
    ev.broadcast_from = SimTime(std::max<std::int64_t>(0, (ev.start - lead).seconds()));
    const auto [lo, hi] = blocks[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(blocks.size()) - 1))];
    for (int g = lo; g <= hi; ++g) ev.age_groups.insert(g);
    out.push_back(std::move(ev));
  }
  return out;
}

BroadcastFeed::BroadcastFeed(std::vector<SocialEvent> events, PollParams params)
    : events_(std::move(events)), params_(params) {
  if (params_.interval_s <= 0) throw Error(ErrorCode::BadConfig, "poll interval must be > 0");
  if (!(params_.probability >= 0.0 && params_.probability <= 1.0)) {
    throw Error(ErrorCode::BadConfig, "poll probability outside [0, 1]");
  }
  for (std::size_t i = 0; i < events_.size(); ++i) {
    events_[i].id = static_cast<EventId>(i);
    if (!events_[i].valid()) {
      throw Error(ErrorCode::BadConfig, "event " + std::to_string(i) +
                                            " needs start < end, broadcast <= start, an audience");
    }
  }
}

const SocialEvent& BroadcastFeed::event(EventId id) const { return events_.at(id); }

std::vector<SimTime> BroadcastFeed::poll_ticks(SimTime from, SimTime to) const {
  std::vector<SimTime> ticks;
  const auto step = params_.interval_s;
  auto first = (from.seconds() + step - 1) / step * step;
  for (auto t = first; t < to.seconds(); t += step) {
    const SimTime at(t);
    const bool live = std::any_of(events_.begin(), events_.end(), [&](const SocialEvent& ev) {
      return ev.broadcast_from <= at && at < ev.end;
    });
    if (live) ticks.push_back(at);
  }
  return ticks;
}

std::vector<EventId> BroadcastFeed::poll(HumanId h, SimTime t, const RngStreams& rng) {
  const auto tick = t.seconds() / params_.interval_s;
  if (!(rng.keyed_uniform("poll", h, tick) < params_.probability)) return {};
  std::vector<EventId> out;
  for (const auto& ev : events_) {
    if (ev.broadcast_from <= t && t < ev.end && seen_.insert({h, ev.id}).second) {
      out.push_back(ev.id);
    }
  }
  return out;
}

bool inject(const SocialEvent& ev, const Human& h, GeoPoint from, SimTime ready,
            const TravelContext& ctx) {
  if (!ev.targets(h.age_group)) return false;
  if (ready >= ev.start) return false;
  return plan_route(from, ev.location, ready, ctx).arrival() <= ev.start;
}

}  // namespace railsim
