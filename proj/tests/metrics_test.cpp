#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "railsim/metrics.hpp"

using namespace railsim;
namespace fs = std::filesystem;

namespace {

TransitNetwork ten_stations() {
  nlohmann::json stations = nlohmann::json::array();
  nlohmann::json codes = nlohmann::json::array();
  for (int i = 0; i < 10; ++i) {
    const auto code = "S" + std::to_string(i);
    stations.push_back({{"id", code}, {"lat", 1.30}, {"lon", 103.80 + 0.01 * i}});
    codes.push_back(code);
  }
  return load_network({{"stations", stations}, {"lines", {{{"id", "L"}, {"stations", codes}}}}});
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines_of(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("railsim-metrics-" + name);
  fs::remove_all(dir);
  return dir;
}

const SimTime kHour(3600);

}  // namespace

TEST_CASE("train usage") {
  const auto net = ten_stations();
  MetricsLedger m(net, 100);
  m.add_train(0, 0, SimTime(0), 2);
  m.add_train(1, 0, SimTime(0), 2);
  m.add_train(2, 0, SimTime(0), 2);
  m.train_state(1, SimTime(0), 2, 2, 0);
  m.train_state(2, SimTime(0), 1, 2, 0);
  m.close(kHour);
  CHECK(m.train_usage(0, SimTime(0), kHour) == 0.0);
  CHECK(m.train_usage(1, SimTime(0), kHour) == 1.0);
  CHECK(m.train_usage(2, SimTime(0), kHour) == 0.5);
}

TEST_CASE("average wait") {
  const auto net = ten_stations();
  MetricsLedger m(net, 100);
  CHECK(m.avg_wait(SimTime(0), kHour) == 0.0);
  m.wait(0, 3, SimTime(100), SimTime(700));
  CHECK(m.avg_wait(SimTime(0), kHour) == 6.0);
  SUBCASE("only the part inside the interval counts") {
    m.wait(1, 3, SimTime(3300), SimTime(3900));
    CHECK(m.avg_wait(SimTime(0), kHour) == doctest::Approx(9.0));
    CHECK(m.avg_wait(kHour, SimTime(7200)) == doctest::Approx(3.0));
  }
}

TEST_CASE("sections") {
  const auto net = ten_stations();
  const auto parts = partition_line(net.line(0));
  REQUIRE(parts.size() == 5);
  for (const auto& p : parts) CHECK(p.stations.size() == 2);
  CHECK(parts[0].stations == std::vector<StationId>{0, 1});
  CHECK(parts[4].stations == std::vector<StationId>{8, 9});

  // Train 0 spends half an hour in each of r0 and r1; train 1 stays in r1.
  MetricsLedger m(net, 10);
  m.add_train(0, 0, SimTime(0), 10);
  m.add_train(1, 0, SimTime(0), 10);
  m.train_state(0, SimTime(0), 4, 10, 0);
  m.train_state(1, SimTime(0), 5, 10, 1);
  m.train_state(0, SimTime(1800), 6, 10, 1);
  m.close(kHour);
  CHECK(m.section_usage(0, 0, SimTime(0), kHour) == doctest::Approx(0.2));
  CHECK(m.section_usage(0, 1, SimTime(0), kHour) == doctest::Approx(0.8));
  CHECK(m.section_usage(0, 4, SimTime(0), kHour) == 0.0);

  const auto dir = scratch("sections");
  emit_report(m, 1, {}, dir);
  const auto rows = lines_of(dir / "usage.csv");
  REQUIRE(rows.size() == 6);
  CHECK(rows[1] == "0,L,r0,0.2000");
  CHECK(rows[2] == "0,L,r1,0.8000");
  CHECK(rows[5] == "0,L,r4,0.0000");
  fs::remove_all(dir);
}

TEST_CASE("average travel time") {
  const auto net = ten_stations();
  MetricsLedger m(net, 10);
  CHECK_FALSE(m.avg_travel(SimTime(0), SimTime(86400)));
  m.trip(0, SimTime(0), SimTime(3600), true);
  CHECK(*m.avg_travel(SimTime(0), SimTime(86400)) == 3600.0);
  // Walk 600 s, wait 300 s, ride 1800 s, walk 300 s.
  MetricsLedger legs(net, 10);
  legs.trip(1, SimTime(1000), SimTime(1000 + 600 + 300 + 1800 + 300), true);
  CHECK(*legs.avg_travel(SimTime(0), SimTime(86400)) == 3000.0);
}

TEST_CASE("reports") {
  const auto net = ten_stations();
  SUBCASE("empty simulation gives header-only files") {
    MetricsLedger m(net, 0);
    const auto dir = scratch("empty");
    emit_report(m, 0, {}, dir);
    for (const char* f : {"usage.csv", "wait.csv", "hourly.csv"}) CHECK(lines_of(dir / f).size() == 1);
    fs::remove_all(dir);
  }
  SUBCASE("one row per hour and identical bytes on repeat") {
    auto write = [&](const fs::path& dir) {
      MetricsLedger m(net, 5);
      m.add_train(0, 0, SimTime(0), 4);
      m.train_state(0, SimTime(600), 3, 4, 2);
      m.wait(1, 4, SimTime(700), SimTime(1300));
      m.trip(1, SimTime(500), SimTime(2500), true);
      m.close(SimTime(24 * 3600));
      emit_report(m, 24, {}, dir);
    };
    const auto a = scratch("a");
    const auto b = scratch("b");
    write(a);
    write(b);
    CHECK(lines_of(a / "hourly.csv").size() == 25);
    CHECK(lines_of(a / "usage.csv").size() == 1 + 24 * 5);
    CHECK(lines_of(a / "wait.csv").size() == 1 + 24 * 5);
    for (const char* f : {"usage.csv", "wait.csv", "hourly.csv", "summary.csv"}) {
      CHECK(slurp(a / f) == slurp(b / f));
    }
    fs::remove_all(a);
    fs::remove_all(b);
  }
}
