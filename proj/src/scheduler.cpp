#include "railsim/scheduler.hpp"

#include "railsim/error.hpp"

namespace railsim {

std::string ActorId::label() const {
  switch (type) {
    case ActorType::System: return "system";
    case ActorType::Human: return "human:" + std::to_string(index);
    case ActorType::Train: return "train:" + std::to_string(index);
    case ActorType::Station: return "station:" + std::to_string(index);
    case ActorType::Manager: return "manager";
    case ActorType::Feed: return "feed";
  }
  return "?";
}

ActionId Scheduler::schedule(SimTime fire_at, ActorId actor, const char* kind,
                             std::function<void()> payload) {
  if (fire_at < now_) {
    throw Error(ErrorCode::PastTime, "cannot schedule '" + std::string(kind) + "' at " +
                                         std::to_string(fire_at.seconds()) + " before now " +
                                         std::to_string(now_.seconds()));
  }
  const auto seq = next_seq_++;
  queue_.push_back(TimedAction{fire_at, actor, kind, std::move(payload), seq});
  std::push_heap(queue_.begin(), queue_.end(), Later{});
  return seq;
}

RunSummary Scheduler::run_until(SimTime t_end) {
  RunSummary summary;
  if (t_end < now_) t_end = now_;
  while (!queue_.empty() && queue_.front().fire_at <= t_end) {
    std::pop_heap(queue_.begin(), queue_.end(), Later{});
    TimedAction action = std::move(queue_.back());
    queue_.pop_back();
    now_ = action.fire_at;
    if (log_) {
      *log_ << action.fire_at.seconds() << '\t' << action.actor.label() << '\t'
            << action.kind << '\n';
    }
    if (action.payload) action.payload();
    ++summary.dispatched;
  }
  now_ = t_end;
  summary.end = now_;
  return summary;
}

}  // namespace railsim
