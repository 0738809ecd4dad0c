#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "railsim/metrics.hpp"
#include "railsim/scenario.hpp"
#include "railsim/simulation.hpp"

namespace railsim {

/// Command-line adjustments applied on top of a scenario file.
struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> until_hours;
  std::optional<std::string> strategy;
  std::optional<bool> alt_routing;
  std::optional<int> pool;
  std::vector<SocialEvent> events;  // added to the scenario's events
};

void apply_overrides(ScenarioConfig& config, const RunOverrides& overrides);

enum class CompareAxis { Event, Strategy, AltRouting };

CompareAxis parse_axis(const std::string& text);
std::string_view to_string(CompareAxis axis);

/// The two configurations of a paired run: `first` lacks the varied feature.
std::pair<ScenarioConfig, ScenarioConfig> split_on(const ScenarioConfig& config, CompareAxis axis);

struct RunManifest {
  std::string config_hash;
  std::uint64_t seed = 0;
  SimTime start;
  SimTime end;
  std::string label;
  std::vector<std::filesystem::path> outputs;
};

struct RunResult {
  std::filesystem::path dir;
  RunManifest manifest;
  ReportSummary summary;
  SimulationStats stats;
};

/// Simulates `config` and writes reports, logs and manifest.json under `dir`.
RunResult run_to(const ScenarioConfig& config, const std::filesystem::path& dir,
                 const std::string& label);

struct CompareResult {
  RunResult base;
  RunResult variant;
  std::filesystem::path delta;
};

/// Runs both sides of `axis` in parallel. The variant goes to `<out>/<label>`
/// together with delta.csv; the baseline goes to `<out>/<label>-base`.
CompareResult compare_to(const ScenarioConfig& config, CompareAxis axis,
                         const std::filesystem::path& out, const std::string& label);

/// delta.csv from two report directories: variant minus base, per hour,
/// line and section. Missing waits count as zero.
void write_delta(const std::filesystem::path& base, const std::filesystem::path& variant,
                 const std::filesystem::path& file);

}  // namespace railsim
