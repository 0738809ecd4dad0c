#include <algorithm>
#include <array>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "railsim/error.hpp"
#include "railsim/population.hpp"
#include "railsim/rng.hpp"
#include "railsim/scheduler.hpp"

using namespace railsim;

namespace {
const ActorId kSys{ActorType::System, 0};
}

TEST_CASE("action scheduled at now fires in the same run") {
  Scheduler s;
  int fired = 0;
  s.schedule(SimTime(0), kSys, "a", [&] { ++fired; });
  CHECK(s.pending() == 1);
  s.run_until(SimTime(0));
  CHECK(fired == 1);
}

TEST_CASE("equal fire times dispatch in insertion order") {
  Scheduler s;
  std::string order;
  for (char c : std::string("abcde")) s.schedule(SimTime(5), kSys, "x", [&, c] { order += c; });
  s.run_until(SimTime(10));
  CHECK(order == "abcde");
}

TEST_CASE("scheduling into the past throws") {
  Scheduler s;
  s.schedule(SimTime(10), kSys, "a", [] {});
  s.run_until(SimTime(10));
  try {
    s.schedule(SimTime(9), kSys, "late", [] {});
    FAIL("expected PastTime");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PastTime);
  }
}

TEST_CASE("empty queue dispatches nothing") {
  Scheduler s;
  const auto r = s.run_until(SimTime::hms(24, 0));
  CHECK(r.dispatched == 0);
}

TEST_CASE("dispatch order follows fire time then sequence") {
  Scheduler s;
  std::vector<int> seen;
  s.schedule(SimTime(2), kSys, "b", [&] { seen.push_back(2); });
  s.schedule(SimTime(1), kSys, "a", [&] { seen.push_back(1); });
  s.schedule(SimTime(2), kSys, "c", [&] { seen.push_back(3); });
  const auto r = s.run_until(SimTime(100));
  CHECK(r.dispatched == 3);
  CHECK(seen == std::vector<int>{1, 2, 3});
}

TEST_CASE("actions may schedule follow-ups and the log records each dispatch") {
  auto trace = [] {
    Scheduler s;
    std::ostringstream log;
    s.set_log(&log);
    int n = 0;
    std::function<void()> tick = [&] {
      if (++n < 4) s.schedule(s.now() + 7, ActorId{ActorType::Train, 3}, "tick", tick);
    };
    s.schedule(SimTime(1), ActorId{ActorType::Train, 3}, "tick", tick);
    s.run_until(SimTime(1000));
    return log.str();
  };
  const auto a = trace();
  CHECK(a == trace());
  CHECK(std::count(a.begin(), a.end(), '\n') == 4);
}

TEST_CASE("bernoulli extremes") {
  RngStreams rng(1);
  auto& s = rng.stream("coins");
  for (int i = 0; i < 1000; ++i) {
    CHECK_FALSE(s.bernoulli(0.0));
    CHECK(s.bernoulli(1.0));
  }
}

TEST_CASE("category choice frequencies") {
  RngStreams rng(2024);
  auto& s = rng.stream("categories");
  std::array<int, kCategoryCount> counts{};
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[s.choice(kCategoryWeights)];
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    CHECK(std::abs(counts[c] / double(n) - kCategoryWeights[c]) < 0.01);
  }
}

TEST_CASE("named streams are independent of creation order") {
  RngStreams a(9);
  RngStreams b(9);
  const double a1 = a.stream("x").uniform();
  b.stream("y").uniform();
  CHECK(b.stream("x").uniform() == a1);
  CHECK(a.substream("h", 4).uniform() == b.substream("h", 4).uniform());
}

TEST_CASE("clock parsing") {
  CHECK(parse_clock("8:30").seconds() == 8 * 3600 + 1800);
  CHECK(parse_clock("25:00:05").seconds() == 25 * 3600 + 5);
  CHECK(SimTime::hms(7, 5).to_clock().rfind("07:05", 0) == 0);
  CHECK_THROWS_AS(parse_clock("noon"), Error);
}
