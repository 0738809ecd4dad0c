#include "doctest.h"
#include "fixtures.hpp"
#include "railsim/error.hpp"
#include "railsim/metrics.hpp"
#include "railsim/transit.hpp"

using namespace railsim;

namespace {

const nlohmann::json kABC = {
    {"stations",
     {{{"id", "A"}, {"lat", 1.30}, {"lon", 103.80}},
      {{"id", "B"}, {"lat", 1.30}, {"lon", 103.82}},
      {{"id", "C"}, {"lat", 1.30}, {"lon", 103.84}}}},
    {"lines", {{{"id", "L"}, {"stations", {"A", "B", "C"}}, {"run_s", 120}, {"dwell_s", 30}}}}};

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::BadParameter;
}

}  // namespace

TEST_CASE("tokens") {
  StationMaster m(0, 2);
  SUBCASE("first arrival") {
    m.issue_token(7, 1, SimTime(10));
    CHECK(m.occupancy() == 1);
  }
  SUBCASE("round trip") {
    const auto t = m.issue_token(7, 1, SimTime(10));
    m.return_token(t);
    CHECK(m.occupancy() == 0);
    CHECK(code_of([&] { m.return_token(t); }) == ErrorCode::UnknownToken);
  }
  SUBCASE("50 issued, 20 returned") {
    std::vector<TokenId> ids;
    for (HumanId h = 0; h < 50; ++h) ids.push_back(m.issue_token(h, 1, SimTime(h)));
    for (int i = 0; i < 20; ++i) m.return_token(ids[i * 2]);
    CHECK(m.occupancy() == 30);
    CHECK(m.issued_count() - m.returned_count() == 30);
  }
  SUBCASE("one token per human") {
    m.issue_token(7, 1, SimTime(10));
    CHECK(code_of([&] { m.issue_token(7, 2, SimTime(11)); }) == ErrorCode::DuplicatePresence);
  }
  SUBCASE("token held 600 s is a 600 s wait") {
    const auto net = load_network(kABC);
    MetricsLedger ledger(net, 1);
    const auto id = m.issue_token(0, 2, SimTime(1000));
    const auto tok = m.return_token(id);
    ledger.wait(tok.human, 0, tok.issued, SimTime(1600));
    REQUIRE(ledger.waits().size() == 1);
    CHECK(ledger.waits()[0].end - ledger.waits()[0].begin == 600);
    CHECK(ledger.avg_wait(SimTime(0), SimTime(3600)) == 600.0);
  }
}

TEST_CASE("platforms") {
  StationMaster m(0, 2);
  CHECK(m.request_arrival(1, SimTime(0)) == Admission::Admit);
  CHECK(m.request_arrival(2, SimTime(0)) == Admission::Admit);
  CHECK(m.request_arrival(3, SimTime(0)) == Admission::Hold);
  SUBCASE("empty hold queue") {
    StationMaster one(1, 2);
    one.request_arrival(1, SimTime(0));
    CHECK_FALSE(one.release_platform(1));
  }
  SUBCASE("longest halted goes first") {
    StationMaster s(1, 1);
    s.request_arrival(9, SimTime(0));
    s.request_arrival(5, SimTime(200));
    s.request_arrival(6, SimTime(100));
    CHECK(s.release_platform(9) == TrainId{6});
    CHECK(s.release_platform(6) == TrainId{5});
  }
  SUBCASE("equal halts go to the lower id") {
    StationMaster s(1, 1);
    s.request_arrival(9, SimTime(0));
    s.request_arrival(8, SimTime(100));
    s.request_arrival(4, SimTime(100));
    CHECK(s.release_platform(9) == TrainId{4});
  }
  SUBCASE("releasing a platform not held") {
    CHECK(code_of([&] { m.release_platform(3); }) == ErrorCode::InvariantViolation);
  }
}

TEST_CASE("boarding") {
  StationMaster m(0, 2);
  const auto first = m.issue_token(10, 2, SimTime(5));
  const auto second = m.issue_token(11, 2, SimTime(6));
  const auto third = m.issue_token(12, 2, SimTime(7));
  const auto elsewhere = m.issue_token(13, 9, SimTime(1));
  const auto bound_for_c = [](const Token& t) { return t.destination == 2; };
  SUBCASE("two seats, three waiters") {
    const auto s = split_boarding(m, 2, bound_for_c);
    CHECK(s.board == std::vector<TokenId>{first, second});
    CHECK(s.left == std::vector<TokenId>{third});
  }
  SUBCASE("full train") {
    const auto s = split_boarding(m, 0, bound_for_c);
    CHECK(s.board.empty());
    CHECK(s.left.size() == 3);
  }
  SUBCASE("waiter for another route stays off") {
    const auto s = split_boarding(m, 10, bound_for_c);
    CHECK(std::find(s.board.begin(), s.board.end(), elsewhere) == s.board.end());
    CHECK(s.left.empty());
  }
}

TEST_CASE("ridership delta") {
  const auto net = load_network(kABC);
  SocialEvent ev;
  ev.location = {1.3003, 103.8402};  // by C
  ev.start = SimTime::hms(10, 0);
  ev.end = SimTime::hms(12, 0);
  ev.broadcast_from = SimTime::hms(7, 0);
  ev.age_groups = {3};
  Human a;
  a.category = Category::WorkingProfessional;
  a.office = GeoPoint{1.3002, 103.8001};  // by A
  Human b = a;
  b.id = 1;
  b.office = GeoPoint{1.2998, 103.8199};  // by B
  SUBCASE("no events") {
    const auto d = ridership_delta(net, {}, 10);
    CHECK(std::all_of(d.begin(), d.end(), [](int x) { return x == 0; }));
  }
  SUBCASE("two attendees ride towards C") {
    const std::vector<EventAttendees> groups = {{&ev, {&a, &b}}};
    const auto d = ridership_delta(net, groups, 10);
    CHECK(d[0] == 2);  // A -> B -> C
    CHECK(d[1] == 0);  // C -> B -> A: both sources come after C
    CHECK(ridership_delta(net, groups, 9)[0] == 0);
  }
}

TEST_CASE("initial capacity") {
  CHECK(initial_capacity(370000, 2300000, 1920) == 310);
  CHECK(initial_capacity(2300000, 2300000, 1920) == 1922);
  CHECK(initial_capacity(2300000, 2300000, 310) == 310);
  CHECK(initial_capacity(1, 2300000, 1920) == 31);
  CHECK(code_of([] { initial_capacity(0, 2300000, 1920); }) == ErrorCode::BadParameter);
}

TEST_CASE("train inquiry") {
  SUBCASE("ten minute headway") {
    World w(kABC, {{0, every(600)}}, 35.0);
    const auto next = w.inquiry->next_departures(0, 0, SimTime::hms(10, 0, 1));
    REQUIRE_FALSE(next.empty());
    CHECK(next.front() == SimTime::hms(10, 10));
  }
  SUBCASE("held upstream") {
    World w(kABC, {}, 35.0);
    RunStatus run;
    run.route = 0;
    run.scheduled_origin = SimTime::hms(10, 0);
    run.next_stop = 1;
    run.held = std::make_pair(std::size_t{1}, SimTime::hms(10, 2));  // due at B 10:02
    w.inquiry->report(1, run);
    w.inquiry->set_now(SimTime::hms(10, 5));
    const auto next = w.inquiry->next_departures(0, 1, SimTime::hms(10, 5));
    REQUIRE_FALSE(next.empty());
    CHECK(next.front() == SimTime::hms(10, 5, 30));  // timetabled 10:02:30
  }
  SUBCASE("nothing from the final stop or after the last service") {
    World w(kABC, {}, 35.0);
    CHECK(w.inquiry->next_departures(0, 2, SimTime::hms(10, 0)).empty());
    CHECK(w.inquiry->next_departures(0, 0, SimTime::hms(23, 50)).empty());
    CHECK_FALSE(w.inquiry->expected_departure(0, 0, SimTime::hms(23, 50)));
  }
}
