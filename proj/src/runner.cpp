#include "railsim/runner.hpp"

#include <fmt/format.h>

#include <fstream>
#include <future>
#include <map>
#include <sstream>

#include "json.hpp"
#include "railsim/error.hpp"

namespace railsim {

using json = nlohmann::json;

namespace {

json event_json(const SocialEvent& ev) {
  const auto day = ev.start.day();
  const SimTime base(day * SimTime::kDay);
  return json{{"lat", ev.location.lat},
              {"lon", ev.location.lon},
              {"day", day},
              {"start", SimTime(ev.start - base).to_clock()},
              {"end", SimTime(ev.end - base).to_clock()},
              {"lead_minutes", static_cast<double>(ev.start - ev.broadcast_from) / 60.0},
              {"age_groups", std::vector<int>(ev.age_groups.begin(), ev.age_groups.end())}};
}

/// Re-parses an edited copy of the canonical document so the hash tracks
/// every effective setting.
ScenarioConfig reparse(const ScenarioConfig& config, const std::function<void(json&)>& edit) {
  auto doc = json::parse(config.canonical);
  edit(doc);
  return parse_scenario(doc.dump(), config.name);
}

void write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + file.string());
}

std::ofstream open_log(const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + file.string());
  return out;
}

using CsvRows = std::map<std::string, std::string>;  // "hour,line,section" -> value

CsvRows read_metric(const std::filesystem::path& file, std::vector<std::string>& order) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + file.string());
  CsvRows rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    const auto cut = line.rfind(',');
    if (cut == std::string::npos) continue;
    auto key = line.substr(0, cut);
    if (!rows.count(key)) order.push_back(key);
    rows[key] = line.substr(cut + 1);
  }
  return rows;
}

double number(const CsvRows& rows, const std::string& key) {
  const auto it = rows.find(key);
  if (it == rows.end() || it->second.empty()) return 0.0;
  return std::stod(it->second);
}

}  // namespace

void apply_overrides(ScenarioConfig& config, const RunOverrides& o) {
  config = reparse(config, [&](json& doc) {
    if (o.seed) doc["seed"] = *o.seed;
    if (o.until_hours) doc["horizon_hours"] = *o.until_hours;
    if (o.strategy) doc["strategy"]["kind"] = *o.strategy;
    if (o.alt_routing) doc["strategy"]["alt_routing"] = *o.alt_routing;
    if (o.pool) doc["strategy"]["pool"] = *o.pool;
    if (!o.events.empty()) {
      if (!doc.contains("events")) doc["events"] = json::array();
      auto& ev = doc["events"];
      auto& list = ev.is_array() ? ev : ev["list"];
      if (list.is_null()) list = json::array();
      for (const auto& e : o.events) list.push_back(event_json(e));
    }
  });
}

CompareAxis parse_axis(const std::string& text) {
  if (text == "event") return CompareAxis::Event;
  if (text == "strategy") return CompareAxis::Strategy;
  if (text == "alt-routing") return CompareAxis::AltRouting;
  throw Error(ErrorCode::BadConfig, "compare axis must be event, strategy or alt-routing; got '" + text + "'");
}

std::string_view to_string(CompareAxis axis) {
  switch (axis) {
    case CompareAxis::Event: return "event";
    case CompareAxis::Strategy: return "strategy";
    case CompareAxis::AltRouting: return "alt-routing";
  }
  return "?";
}

std::pair<ScenarioConfig, ScenarioConfig> split_on(const ScenarioConfig& config, CompareAxis axis) {
  switch (axis) {
    case CompareAxis::Event: {
      auto without = reparse(config, [](json& doc) {
        if (!doc.contains("events")) return;
        auto& ev = doc["events"];
        if (ev.is_array()) {
          ev = json::array();
        } else {
          ev.erase("list");
          ev.erase("generator");
        }
      });
      return {without, config};
    }
    case CompareAxis::Strategy: {
      auto kind = [&](const char* k) {
        return reparse(config, [k](json& doc) { doc["strategy"]["kind"] = k; });
      };
      return {kind("none"), kind("greedy")};
    }
    case CompareAxis::AltRouting: {
      auto alt = [&](bool on) {
        return reparse(config, [on](json& doc) { doc["strategy"]["alt_routing"] = on; });
      };
      return {alt(false), alt(true)};
    }
  }
  throw Error(ErrorCode::BadConfig, "unknown compare axis");
}

RunResult run_to(const ScenarioConfig& config, const std::filesystem::path& dir,
                 const std::string& label) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());

  RunResult result;
  result.dir = dir;
  auto& m = result.manifest;
  m.config_hash = config_hash(config);
  m.seed = config.require_seed();
  m.start = SimTime(0);
  m.end = config.horizon();
  m.label = label;
  {
    auto actions = open_log(dir / "event.log");
    auto trains = open_log(dir / "trains.log");
    auto tokens = open_log(dir / "tokens.log");
    Simulation sim(config, {&actions, &trains, &tokens});
    sim.run();
    result.summary = sim.summary();
    result.stats = sim.stats();
    emit_report(sim.metrics(), config.horizon().seconds() / SimTime::kHour +
                                   (config.horizon().seconds() % SimTime::kHour ? 1 : 0),
                result.summary, dir);
    for (auto* log : {&actions, &trains, &tokens}) {
      log->close();
      if (!*log) throw Error(ErrorCode::IoError, "failed writing logs in " + dir.string());
    }
  }
  m.outputs = {"usage.csv", "wait.csv", "hourly.csv", "summary.csv",
               "event.log", "trains.log", "tokens.log"};

  json outputs = json::array();
  for (const auto& p : m.outputs) outputs.push_back(p.string());
  const auto& s = result.stats;
  json events = json::array();
  for (const auto& e : s.events) {
    events.push_back({{"id", e.id},
                      {"seeds", e.seeds},
                      {"declined", e.declined},
                      {"attending", e.active.size()},
                      {"arrived", e.arrived}});
  }
  json manifest{{"label", label},
                {"scenario", config.name},
                {"config_hash", m.config_hash},
                {"seed", m.seed},
                {"start", m.start.to_clock()},
                {"end", m.end.to_clock()},
                {"outputs", outputs},
                {"stats",
                 {{"actions", s.dispatched},
                  {"trips_completed", s.trips_completed},
                  {"rail_trips", s.rail_trips},
                  {"initial_capacity", s.initial_capacity},
                  {"fleet", s.fleet},
                  {"left_behind", s.left_behind},
                  {"alt_adopters", s.alt_adopters},
                  {"compartments_moved", s.compartments_moved},
                  {"invariant_violations", s.checks.violations.size()}}},
                {"events", events},
                {"config", json::parse(config.canonical)}};
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
  return result;
}

CompareResult compare_to(const ScenarioConfig& config, CompareAxis axis,
                         const std::filesystem::path& out, const std::string& label) {
  auto [base_cfg, variant_cfg] = split_on(config, axis);
  const auto base_dir = out / (label + "-base");
  const auto variant_dir = out / label;
  // Nothing mutable is shared between the two runs.
  auto base = std::async(std::launch::async, [&] { return run_to(base_cfg, base_dir, label + "-base"); });
  CompareResult result;
  result.variant = run_to(variant_cfg, variant_dir, label);
  result.base = base.get();
  result.delta = variant_dir / "delta.csv";
  write_delta(base_dir, variant_dir, result.delta);
  return result;
}

void write_delta(const std::filesystem::path& base, const std::filesystem::path& variant,
                 const std::filesystem::path& file) {
  std::vector<std::string> order;
  std::vector<std::string> ignored;
  const auto usage_a = read_metric(base / "usage.csv", order);
  const auto usage_b = read_metric(variant / "usage.csv", ignored);
  const auto wait_a = read_metric(base / "wait.csv", ignored);
  const auto wait_b = read_metric(variant / "wait.csv", ignored);
  std::ostringstream out;
  out << "hour,line,section,usage_a,usage_b,usage_delta,wait_a,wait_b,wait_delta\n";
  for (const auto& key : order) {
    const auto ua = number(usage_a, key);
    const auto ub = number(usage_b, key);
    const auto wa = number(wait_a, key);
    const auto wb = number(wait_b, key);
    out << fmt::format("{},{:.4f},{:.4f},{:.4f},{:.4f},{:.4f},{:.4f}\n", key, ua, ub, ub - ua, wa,
                       wb, wb - wa);
  }
  write_text(file, out.str());
}

}  // namespace railsim
