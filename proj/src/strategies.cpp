#include "railsim/strategies.hpp"

#include <algorithm>
#include <map>

#include "railsim/error.hpp"

namespace railsim {

StrategyDecision greedy_reallocate(std::span<const TrainView> fleet, int pool_available,
                                   SimTime at, int compartment_seats) {
  StrategyDecision decision;
  decision.effective = at;
  std::vector<const TrainView*> needy;
  std::vector<const TrainView*> donors;
  for (const auto& t : fleet) {
    const double seats = static_cast<double>(t.compartments) * compartment_seats;
    if (t.estimate > seats) {
      needy.push_back(&t);
    } else if (t.compartments >= 2 && t.estimate < t.previous &&
               t.estimate < seats - compartment_seats) {
      donors.push_back(&t);
    }
  }
  std::sort(needy.begin(), needy.end(), [](const TrainView* a, const TrainView* b) {
    if (a->estimate != b->estimate) return a->estimate > b->estimate;
    return a->id < b->id;
  });
  std::sort(donors.begin(), donors.end(), [](const TrainView* a, const TrainView* b) {
    const double da = a->previous - a->estimate;
    const double db = b->previous - b->estimate;
    if (da != db) return da > db;
    return a->id < b->id;
  });
  std::map<TrainId, int> left;  // donor compartments after this round
  for (const auto* d : donors) left[d->id] = d->compartments;

  int pool = pool_available;
  for (const auto* t : needy) {
    if (pool > 0) {
      --pool;
      decision.moves.push_back({std::nullopt, t->id, 1});
      decision.order.push_back(t->estimate);
      continue;
    }
    const TrainView* giver = nullptr;
    for (const auto* d : donors) {
      const int c = left[d->id];
      if (c >= 2 && d->estimate < static_cast<double>(c - 1) * compartment_seats) {
        giver = d;
        break;
      }
    }
    if (!giver) {
      ++decision.unmet;
      continue;
    }
    --left[giver->id];
    decision.moves.push_back({giver->id, t->id, 1});
    decision.order.push_back(t->estimate);
  }
  return decision;
}

namespace {

Train& find_train(std::span<Train> fleet, TrainId id) {
  for (auto& t : fleet) {
    if (t.id == id) return t;
  }
  throw Error(ErrorCode::InvalidMove, "no train " + std::to_string(id));
}

}  // namespace

void apply_decision(const StrategyDecision& decision, std::span<Train> fleet,
                    CompartmentPool& pool) {
  // Validate everything first so a bad decision changes nothing.
  int from_pool = 0;
  std::map<TrainId, int> detach;
  for (const auto& m : decision.moves) {
    if (m.count < 1) throw Error(ErrorCode::InvalidMove, "move count must be positive");
    find_train(fleet, m.to);
    if (m.from) {
      if (*m.from == m.to) throw Error(ErrorCode::InvalidMove, "move onto the same train");
      const auto& donor = find_train(fleet, *m.from);
      detach[donor.id] += m.count;
      if (donor.planned_compartments() - detach[donor.id] < 1) {
        throw Error(ErrorCode::InvalidMove,
                    "train " + std::to_string(donor.id) + " would drop below one compartment");
      }
    } else {
      from_pool += m.count;
    }
  }
  if (from_pool > pool.available) {
    throw Error(ErrorCode::InvalidMove, "pool holds only " + std::to_string(pool.available) +
                                            " compartments");
  }
  for (const auto& m : decision.moves) {
    auto& to = find_train(fleet, m.to);
    if (m.from) {
      find_train(fleet, *m.from).pending_detach += m.count;
      to.pending_request += m.count;
    } else {
      pool.available -= m.count;
      pool.reserved += m.count;
      to.pending_attach += m.count;
    }
  }
}

bool apply_terminal_changes(Train& train, CompartmentPool& pool) {
  const int before = train.compartments;
  if (train.pending_detach > 0) {
    const int can = std::min(train.pending_detach, train.compartments - 1);
    const int seats_after = (train.compartments - can) * train.seats_per_compartment;
    if (static_cast<int>(train.onboard.size()) <= seats_after) {
      train.compartments -= can;
      pool.available += can;
      train.pending_detach -= can;
    }
  }
  if (train.pending_attach > 0) {
    train.compartments += train.pending_attach;
    pool.reserved -= train.pending_attach;
    train.pending_attach = 0;
  }
  if (train.pending_request > 0 && pool.available > 0) {
    const int take = std::min(train.pending_request, pool.available);
    train.compartments += take;
    pool.available -= take;
    train.pending_request -= take;
  }
  return train.compartments != before;
}

StrategyDecision GreedyCompartments::on_hour(const ManagerView& view) {
  return greedy_reallocate(view.fleet, view.pool_available, view.now, view.compartment_seats);
}

std::unique_ptr<Strategy> make_strategy(const std::string& kind, bool alt_routing) {
  std::unique_ptr<Strategy> s;
  if (kind == "none" || kind == "fixed") {
    s = std::make_unique<FixedCapacity>();
  } else if (kind == "greedy") {
    s = std::make_unique<GreedyCompartments>();
  } else {
    throw Error(ErrorCode::BadConfig, "unknown strategy '" + kind + "'");
  }
  if (alt_routing) s = std::make_unique<AlternativeRouting>(std::move(s));
  return s;
}

}  // namespace railsim
