#include <algorithm>
#include <array>
#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "railsim/error.hpp"
#include "railsim/population.hpp"
#include "railsim/rng.hpp"
#include "railsim/social_event.hpp"

using namespace railsim;
using nlohmann::json;

namespace {

const BoundingBox kBox{1.25, 103.65, 1.45, 104.0};

std::array<int, kCategoryCount> category_counts(const std::vector<Human>& people) {
  std::array<int, kCategoryCount> n{};
  for (const auto& h : people) ++n[static_cast<std::size_t>(h.category)];
  return n;
}

SocialEvent event_at(GeoPoint where, SimTime start, std::int64_t minutes) {
  SocialEvent ev;
  ev.location = where;
  ev.start = start;
  ev.end = start + minutes * 60;
  ev.broadcast_from = start - 3 * 3600;
  ev.age_groups = {1, 2, 3, 4, 5, 6};
  return ev;
}

}  // namespace

TEST_CASE("large population follows the category table") {
  RngStreams rng(5);
  const auto people = generate_population(100000, kBox, {}, rng.stream("population"));
  const auto n = category_counts(people);
  CHECK(std::abs(n[0] - 40000) < 1000);
  CHECK(std::abs(n[1] - 30000) < 1000);
  CHECK(std::abs(n[2] - 15000) < 1000);
  CHECK(std::abs(n[3] - 15000) < 1000);
  for (const auto& h : people) REQUIRE(h.consistent());
}

TEST_CASE("empty population") {
  RngStreams rng(5);
  CHECK(generate_population(0, kBox, {}, rng.stream("population")).empty());
}

TEST_CASE("category counts pass chi-square") {
  RngStreams rng(77);
  const auto people = generate_population(10000, kBox, {}, rng.stream("population"));
  const auto n = category_counts(people);
  double chi2 = 0.0;
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    const double expected = 10000 * kCategoryWeights[c];
    chi2 += (n[c] - expected) * (n[c] - expected) / expected;
  }
  CHECK(chi2 < 11.345);  // 3 degrees of freedom, alpha 0.01
}

TEST_CASE("working professional day") {
  RngStreams rng(3);
  Human h;
  h.category = Category::WorkingProfessional;
  h.home = {1.30, 103.80};
  h.office = {1.35, 103.85};
  auto& r = rng.stream("trips");
  for (int day = 0; day < 50; ++day) {
    const auto trips = daily_trips(h, day, r);
    REQUIRE(trips.size() == 4);
    const SimTime base(day * SimTime::kDay);
    const std::array<std::array<int, 4>, 4> windows = {{
        {7, 30, 9, 30}, {12, 0, 13, 0}, {12, 30, 13, 30}, {17, 30, 20, 0}}};
    const std::array<PlaceKind, 4> to = {PlaceKind::Office, PlaceKind::Restaurant,
                                         PlaceKind::Office, PlaceKind::Home};
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& w = windows[i];
      CHECK(trips[i].destination_kind == to[i]);
      CHECK(trips[i].window_start == base + SimTime::hms(w[0], w[1]).seconds());
      CHECK(trips[i].window_end == base + SimTime::hms(w[2], w[3]).seconds());
      CHECK(trips[i].chosen_start >= trips[i].window_start);
      CHECK(trips[i].chosen_start <= trips[i].window_end);
    }
    CHECK(trips[1].chosen_start <= trips[2].chosen_start);
  }
}

TEST_CASE("a senior may stay home all day") {
  Human h;
  h.category = Category::SeniorCitizen;
  h.age_group = 6;
  bool idle_day = false;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    RngStreams rng(seed);
    const auto trips = daily_trips(h, 0, rng.stream("trips"));
    CHECK((trips.size() == 0 || trips.size() == 2 || trips.size() == 4));
    idle_day = idle_day || trips.empty();
  }
  CHECK(idle_day);
}

TEST_CASE("student school starts are uniform over the window") {
  RngStreams rng(11);
  auto& r = rng.stream("trips");
  Human h;
  h.category = Category::Student;
  h.age_group = 1;
  h.school = {1.31, 103.81};
  std::vector<double> u;
  for (int i = 0; i < 1000; ++i) {
    for (const auto& t : daily_trips(h, 0, r)) {
      if (t.destination_kind != PlaceKind::School) continue;
      REQUIRE(t.chosen_start >= SimTime::hms(7, 0));
      REQUIRE(t.chosen_start <= SimTime::hms(8, 0));
      u.push_back((t.chosen_start - SimTime::hms(7, 0)) / 3600.0);
    }
  }
  REQUIRE(u.size() == 1000);
  std::sort(u.begin(), u.end());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double n = static_cast<double>(u.size());
    d = std::max({d, (i + 1) / n - u[i], u[i] - i / n});
  }
  CHECK(d < 1.628 / std::sqrt(1000.0));
}

TEST_CASE("attendance tolerance is a tenth of the duration") {
  const auto ev = event_at({1.3, 103.8}, SimTime::hms(10, 0), 180);
  const auto decided = SimTime::hms(8, 0);
  CHECK(attendance_tolerance(ev) == 18 * 60);
  CHECK(decide_attendance(ev.start + 18 * 60, decided, ev));
  CHECK(decide_attendance(ev.start, decided, ev));
  CHECK_FALSE(decide_attendance(ev.start + 19 * 60, decided, ev));
  CHECK_THROWS_AS(decide_attendance(ev.start, ev.end, ev), Error);
}

namespace {

json line_ac(std::initializer_list<json> lines) {
  return {{"stations", {{{"id", "A"}, {"lat", 1.30}, {"lon", 103.80}},
                        {{"id", "B"}, {"lat", 1.30}, {"lon", 103.82}},
                        {{"id", "C"}, {"lat", 1.30}, {"lon", 103.90}}}},
          {"lines", lines}};
}

}  // namespace

TEST_CASE("plan_route") {
  SUBCASE("same nearest station means road only") {
    World w(line_ac({{{"id", "L"}, {"stations", {"A", "C"}}}}), {}, 35.0);
    const auto r = plan_route({1.301, 103.80}, {1.299, 103.801}, SimTime::hms(10, 0), w.ctx);
    CHECK(r.road_only());
  }
  SUBCASE("two stations, by hand") {
    World w(line_ac({{{"id", "L"}, {"stations", {"A", "B"}}, {"run_s", 120}}}), {}, 10.0);
    const auto r = plan_route(w.at("A"), w.at("B"), SimTime::hms(10, 0), w.ctx);
    REQUIRE(r.legs.size() == 1);
    // Half of the 300 s headway on the platform, then 120 s on board.
    CHECK(r.legs[0].depart == SimTime::hms(10, 2, 30));
    CHECK(r.legs[0].arrive == SimTime::hms(10, 4, 30));
    CHECK(r.total_s == 270);
    CHECK(r.expected_wait_s() == 150);
    const auto road = w.road.travel_seconds(w.at("A"), w.at("B"));
    CHECK(road > 270);
  }
  SUBCASE("fast road wins") {
    World w(line_ac({{{"id", "L"}, {"stations", {"A", "B"}}, {"run_s", 1200}}}), {}, 35.0);
    CHECK(plan_route(w.at("A"), w.at("B"), SimTime::hms(10, 0), w.ctx).road_only());
  }
  SUBCASE("disconnected stations") {
    auto doc = line_ac({{{"id", "L1"}, {"stations", {"A", "B"}}}});
    doc["stations"].push_back({{"id", "D"}, {"lat", 1.40}, {"lon", 103.90}});
    doc["lines"].push_back({{"id", "L2"}, {"stations", {"C", "D"}}});
    World split(doc, {}, 35.0);
    try {
      plan_route(split.at("A"), split.at("D"), SimTime::hms(10, 0), split.ctx);
      FAIL("expected Unreachable");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Unreachable);
    }
  }
}

namespace {

// Someone at A bound for C whose train leaving at 10:00 is full.
Alternative reconsider(World& w) {
  const auto now = SimTime::hms(10, 0);
  Route current;
  current.origin = w.at("A");
  current.destination = w.at("C");
  current.board = 0;
  current.alight = 2;
  TrainLeg leg;
  leg.route = 0;
  leg.board_index = 0;
  leg.alight_index = 1;
  leg.depart = now;
  current.legs.push_back(leg);
  return choose_alternative_route(current, 0, now, now, w.ctx);
}

}  // namespace

TEST_CASE("alternative routes") {
  SUBCASE("a single line leaves only waiting") {
    World w(line_ac({{{"id", "L1"}, {"stations", {"A", "C"}}, {"run_s", 600}}}), {{0, every(600)}}, 5.0);
    const auto alt = reconsider(w);
    CHECK(alt.kind == Alternative::Kind::Wait);
    REQUIRE(alt.route.legs.size() == 1);
    CHECK(alt.route.legs[0].depart == SimTime::hms(10, 10));
  }
  SUBCASE("slower parallel line that saves more waiting") {
    // L1 next leaves 10:15 and takes 10 min; L2 leaves 10:03 and takes 15 min.
    World w(line_ac({{{"id", "L1"}, {"stations", {"A", "C"}}, {"run_s", 600}},
                     {{"id", "L2"}, {"stations", {"A", "C"}}, {"run_s", 900}}}),
            {{0, every(900)}, {1, every(600, 5 * 3600 + 33 * 60)}}, 5.0);
    const auto alt = reconsider(w);
    CHECK(alt.kind == Alternative::Kind::Reroute);
    REQUIRE(alt.route.legs.size() == 1);
    CHECK(w.net.route(alt.route.legs[0].route).line == 1);
    CHECK(alt.route.arrival() == SimTime::hms(10, 18));
  }
  SUBCASE("alternatives slower than a 10 minute wait") {
    World w(line_ac({{{"id", "L1"}, {"stations", {"A", "C"}}, {"run_s", 600}},
                     {{"id", "L2"}, {"stations", {"A", "C"}}, {"run_s", 900}}}),
            {{0, every(600)}, {1, every(600, 5 * 3600 + 38 * 60)}}, 5.0);
    const auto alt = reconsider(w);
    CHECK(alt.kind == Alternative::Kind::Wait);
    CHECK(alt.route.arrival() == SimTime::hms(10, 20));
  }
}
