// railsim: run a scenario or a paired comparison and write reports.

#include <fmt/format.h>

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "railsim/error.hpp"
#include "railsim/runner.hpp"

namespace {

std::string escape(std::string s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

int fail(std::string_view kind, const std::string& detail) {
  fmt::print(stderr, "error kind={} detail=\"{}\"\n", kind, escape(detail));
  return 2;
}

struct Options {
  std::string scenario;
  std::string scenario_flag;
  std::optional<std::uint64_t> seed;
  std::optional<double> until;
  std::optional<std::string> strategy;
  std::optional<std::string> alt_routing;
  std::optional<int> pool;
  std::vector<std::string> events;
  int event_lead = 180;
  std::string out = "out";
  std::optional<std::string> label;
  std::optional<std::string> compare;
};

void add_common(CLI::App& cmd, Options& o) {
  cmd.add_option("path", o.scenario, "Scenario file (.json may be omitted)");
  cmd.add_option("--scenario", o.scenario_flag, "Same as the positional argument");
  cmd.add_option("--seed", o.seed, "Override the scenario seed");
  cmd.add_option("--until", o.until, "Simulated hours");
  cmd.add_option("--strategy", o.strategy, "none|greedy")->check(CLI::IsMember({"none", "greedy"}));
  cmd.add_option("--alt-routing", o.alt_routing, "on|off")->check(CLI::IsMember({"on", "off"}));
  cmd.add_option("--pool", o.pool, "Spare compartments held by the manager");
  cmd.add_option("--event", o.events, "Extra event lat,lon,start,end (repeatable)");
  cmd.add_option("--event-lead", o.event_lead, "Minutes of broadcast before --event starts");
  cmd.add_option("--out", o.out, "Output root directory");
  cmd.add_option("--label", o.label, "Output subdirectory (default: scenario name)");
  cmd.add_option("--compare", o.compare, "event|strategy|alt-routing");
}

railsim::ScenarioConfig configure(const Options& o) {
  const auto& path = o.scenario_flag.empty() ? o.scenario : o.scenario_flag;
  if (path.empty()) throw railsim::Error(railsim::ErrorCode::BadConfig, "no scenario given");
  auto cfg = railsim::load_scenario(path);
  railsim::RunOverrides ov;
  ov.seed = o.seed;
  ov.until_hours = o.until;
  ov.strategy = o.strategy;
  if (o.alt_routing) ov.alt_routing = *o.alt_routing == "on";
  ov.pool = o.pool;
  for (const auto& e : o.events) ov.events.push_back(railsim::parse_event_flag(e, o.event_lead));
  railsim::apply_overrides(cfg, ov);
  cfg.require_seed();
  return cfg;
}

void print_run(const railsim::RunResult& r) {
  const auto& s = r.summary;
  fmt::print("{}: avg_wait_s={:.2f} avg_travel_s={} alt_route_fraction={:.4f} violations={}\n",
             r.dir.string(), s.avg_wait_s,
             s.avg_travel_s ? fmt::format("{:.2f}", *s.avg_travel_s) : std::string("-"),
             s.alt_route_fraction, r.stats.checks.violations.size());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Agent-based metro simulator"};
  app.require_subcommand(1);
  Options run_opts;
  Options cmp_opts;
  auto* run = app.add_subcommand("run", "Simulate one scenario");
  add_common(*run, run_opts);
  auto* cmp = app.add_subcommand("compare", "Simulate a scenario twice, varying one axis");
  add_common(*cmp, cmp_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("Usage", e.what());
  }

  try {
    const bool comparing = cmp->parsed() || run_opts.compare;
    const auto& o = cmp->parsed() ? cmp_opts : run_opts;
    const auto cfg = configure(o);
    const auto label = o.label.value_or(cfg.name);
    if (comparing) {
      if (!o.compare) {
        throw railsim::Error(railsim::ErrorCode::BadConfig, "compare needs --compare event|strategy|alt-routing");
      }
      const auto axis = railsim::parse_axis(*o.compare);
      const auto result = railsim::compare_to(cfg, axis, o.out, label);
      print_run(result.base);
      print_run(result.variant);
      fmt::print("delta: {}\n", result.delta.string());
    } else {
      print_run(railsim::run_to(cfg, std::filesystem::path(o.out) / label, label));
    }
  } catch (const railsim::Error& e) {
    return fail(railsim::to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail("Internal", e.what());
  }
  return 0;
}
