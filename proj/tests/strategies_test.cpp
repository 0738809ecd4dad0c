#include "doctest.h"
#include "railsim/error.hpp"
#include "railsim/strategies.hpp"

using namespace railsim;

namespace {

Train train(TrainId id, int compartments) {
  Train t;
  t.id = id;
  t.compartments = compartments;
  return t;
}

}  // namespace

TEST_CASE("greedy reallocation") {
  const SimTime at = SimTime::hms(9, 0);
  SUBCASE("nothing over capacity") {
    const std::vector<TrainView> fleet = {{0, 10, 300, 250}, {1, 10, 310, 310}};
    CHECK(greedy_reallocate(fleet, 5, at).empty());
  }
  SUBCASE("one overloaded train takes from the pool") {
    const std::vector<TrainView> fleet = {{0, 10, 340, 300}};
    const auto d = greedy_reallocate(fleet, 1, at);
    REQUIRE(d.moves.size() == 1);
    CHECK_FALSE(d.moves[0].from);
    CHECK(d.moves[0].to == 0);

    std::vector<Train> trains = {train(0, 10)};
    CompartmentPool pool{1, 0};
    apply_decision(d, trains, pool);
    CHECK(apply_terminal_changes(trains[0], pool));
    CHECK(trains[0].capacity() == 341);
  }
  SUBCASE("pool first to the busiest, then a donor") {
    const std::vector<TrainView> fleet = {
        {0, 10, 350, 300}, {1, 10, 400, 330}, {2, 10, 100, 200}, {3, 10, 250, 240}};
    const auto d = greedy_reallocate(fleet, 1, at);
    REQUIRE(d.moves.size() == 2);
    CHECK_FALSE(d.moves[0].from);
    CHECK(d.moves[0].to == 1);
    CHECK(d.moves[1].from == TrainId{2});
    CHECK(d.moves[1].to == 0);
    CHECK(d.unmet == 0);
  }
  SUBCASE("no spare compartment anywhere") {
    const std::vector<TrainView> fleet = {{0, 10, 350, 300}, {1, 10, 300, 300}};
    const auto d = greedy_reallocate(fleet, 0, at);
    CHECK(d.empty());
    CHECK(d.unmet == 1);
  }
}

TEST_CASE("applying decisions") {
  std::vector<Train> trains = {train(0, 10), train(1, 1)};
  CompartmentPool pool{3, 0};
  SUBCASE("attach one") {
    StrategyDecision d;
    d.moves.push_back({std::nullopt, 0, 1});
    apply_decision(d, trains, pool);
    CHECK(trains[0].compartments == 10);  // waits for the terminal
    CHECK(pool.available == 2);
    CHECK(pool.reserved == 1);
    apply_terminal_changes(trains[0], pool);
    CHECK(trains[0].compartments == 11);
    CHECK(trains[0].capacity() == 341);
    CHECK(pool.total() == 2);
  }
  SUBCASE("cannot detach the last compartment") {
    StrategyDecision d;
    d.moves.push_back({TrainId{1}, 0, 1});
    try {
      apply_decision(d, trains, pool);
      FAIL("expected InvalidMove");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidMove);
    }
    CHECK(trains[1].pending_detach == 0);
  }
  SUBCASE("empty decision") {
    apply_decision({}, trains, pool);
    CHECK(trains[0].planned_compartments() == 10);
    CHECK(trains[1].planned_compartments() == 1);
    CHECK(pool.available == 3);
  }
  SUBCASE("donor compartment moves between terminals") {
    StrategyDecision d;
    d.moves.push_back({TrainId{0}, 1, 1});
    apply_decision(d, trains, pool);
    pool.available = 0;
    CHECK_FALSE(apply_terminal_changes(trains[1], pool));  // nothing free yet
    CHECK(apply_terminal_changes(trains[0], pool));
    CHECK(trains[0].compartments == 9);
    CHECK(apply_terminal_changes(trains[1], pool));
    CHECK(trains[1].compartments == 2);
  }
}

TEST_CASE("strategy interface") {
  const std::vector<TrainView> fleet = {{0, 1, 500, 100}};
  const ManagerView view{SimTime::hms(8, 0), 8, fleet, 4, kCompartmentSeats};
  auto none = make_strategy("none", false);
  CHECK(none->on_hour(view).empty());
  CHECK_FALSE(none->on_human_wait({1, 2, true}));

  auto alt = make_strategy("none", true);
  CHECK(alt->on_human_wait({1, 2, true}));
  CHECK_FALSE(alt->on_human_wait({1, 2, false}));
  CHECK(alt->on_hour(view).empty());

  auto greedy = make_strategy("greedy", false);
  CHECK(greedy->on_hour(view).moves.size() == 1);
  CHECK_THROWS_AS(make_strategy("random", false), Error);
}
