#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "railsim/transit.hpp"

namespace railsim {

/// Unattached compartments. `reserved` ones are promised to a train and
/// attach at its next terminal visit.
struct CompartmentPool {
  int available = 0;
  int reserved = 0;

  int total() const { return available + reserved; }
};

struct CompartmentMove {
  std::optional<TrainId> from;  // nullopt: the pool
  TrainId to = 0;
  int count = 1;
};

struct StrategyDecision {
  SimTime effective;
  std::vector<CompartmentMove> moves;
  /// Estimated riders of each receiving train, in processing order.
  std::vector<double> order;
  int unmet = 0;

  bool empty() const { return moves.empty(); }
};

/// What the greedy rule needs to know about one train.
struct TrainView {
  TrainId id = 0;
  int compartments = 1;    // after pending changes
  double estimate = 0.0;   // riders expected in the coming hour
  double previous = 0.0;   // riders expected in the current hour
};

/// One compartment per train whose estimate exceeds its seats, in decreasing
/// estimate order (ties to the lower id). The pool is used first; after
/// that a donor is taken from trains whose estimate fell and stays below
/// their seats minus one compartment, largest fall first.
StrategyDecision greedy_reallocate(std::span<const TrainView> fleet, int pool_available,
                                   SimTime at, int compartment_seats = kCompartmentSeats);

/// Books the moves: pool compartments are reserved, donor compartments are
/// marked for detaching. Nothing changes on a train until its next terminal
/// visit. Throws Error(InvalidMove).
void apply_decision(const StrategyDecision& decision, std::span<Train> fleet,
                    CompartmentPool& pool);

/// Applies pending changes on a train standing empty at a terminal. Returns
/// true if its compartment count changed.
bool apply_terminal_changes(Train& train, CompartmentPool& pool);

struct ManagerView {
  SimTime now;
  std::int64_t hour = 0;
  std::span<const TrainView> fleet;
  int pool_available = 0;
  int compartment_seats = kCompartmentSeats;
};

struct WaitView {
  HumanId human = 0;
  StationId station = 0;
  bool next_train_full = false;
};

class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string name() const = 0;
  virtual StrategyDecision on_hour(const ManagerView& view) = 0;
  /// True asks the human to reconsider its route.
  virtual bool on_human_wait(const WaitView& view) = 0;
};

class FixedCapacity : public Strategy {
 public:
  std::string name() const override { return "none"; }
  StrategyDecision on_hour(const ManagerView& view) override { return {view.now, {}, {}, 0}; }
  bool on_human_wait(const WaitView&) override { return false; }
};

class GreedyCompartments : public Strategy {
 public:
  std::string name() const override { return "greedy"; }
  StrategyDecision on_hour(const ManagerView& view) override;
  bool on_human_wait(const WaitView&) override { return false; }
};

/// Adds the reroute-when-full behaviour on top of another strategy.
class AlternativeRouting : public Strategy {
 public:
  explicit AlternativeRouting(std::unique_ptr<Strategy> inner) : inner_(std::move(inner)) {}

  std::string name() const override { return inner_->name() + "+alt"; }
  StrategyDecision on_hour(const ManagerView& view) override { return inner_->on_hour(view); }
  bool on_human_wait(const WaitView& view) override { return view.next_train_full; }

 private:
  std::unique_ptr<Strategy> inner_;
};

/// "none" or "greedy", optionally wrapped for alternative routing.
std::unique_ptr<Strategy> make_strategy(const std::string& kind, bool alt_routing);

}  // namespace railsim
