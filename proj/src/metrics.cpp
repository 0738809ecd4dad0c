#include "railsim/metrics.hpp"

#include <fmt/format.h>
#include <fmt/os.h>

#include <algorithm>
#include <map>

#include "railsim/error.hpp"

namespace railsim {

std::vector<LineSection> partition_line(const TransitLine& line, int sections) {
  std::vector<LineSection> out;
  const auto n = static_cast<int>(line.stations.size());
  const int base = n / sections;
  const int extra = n % sections;
  int at = 0;
  for (int k = 0; k < sections; ++k) {
    LineSection sec;
    sec.line = line.id;
    sec.index = k;
    const int size = base + (k < extra ? 1 : 0);
    for (int i = 0; i < size; ++i) sec.stations.push_back(line.stations[at++]);
    out.push_back(std::move(sec));
  }
  return out;
}

std::int64_t Interval::overlap(SimTime a, SimTime b) const {
  return std::max<std::int64_t>(0, std::min(end, b) - std::max(begin, a));
}

namespace {
std::int64_t overlap(SimTime b0, SimTime e0, SimTime a, SimTime b) {
  return Interval{b0, e0}.overlap(a, b);
}
}  // namespace

MetricsLedger::MetricsLedger(const TransitNetwork& network, std::size_t population)
    : network_(&network), population_(population) {
  for (const auto& line : network.lines()) {
    sections_.push_back(partition_line(line));
    std::vector<int> map(network.stations().size(), -1);
    for (const auto& sec : sections_.back()) {
      for (auto s : sec.stations) map[s] = sec.index;
    }
    station_section_.push_back(std::move(map));
  }
}

int MetricsLedger::section_of(LineId line, StationId station) const {
  return station_section_.at(line).at(station);
}

void MetricsLedger::add_train(TrainId id, LineId line, SimTime at, int capacity) {
  if (id != train_line_.size()) {
    throw Error(ErrorCode::InvariantViolation, "trains must be registered in id order");
  }
  train_line_.push_back(line);
  open_.push_back({at, 0, capacity, -1});
}

void MetricsLedger::train_state(TrainId id, SimTime at, int onboard, int capacity, int section) {
  auto& o = open_.at(id);
  if (o.onboard == onboard && o.capacity == capacity && o.section == section) return;
  if (at > o.since) segments_.push_back({id, o.since, at, o.onboard, o.capacity, o.section});
  o = {at, onboard, capacity, section};
}

void MetricsLedger::wait(HumanId h, StationId station, SimTime begin, SimTime end) {
  waits_.push_back({h, station, begin, end});
}

void MetricsLedger::trip(HumanId h, SimTime begin, SimTime end, bool used_rail) {
  trips_.push_back({h, begin, end, used_rail});
}

void MetricsLedger::close(SimTime at) {
  for (TrainId id = 0; id < open_.size(); ++id) {
    auto& o = open_[id];
    if (at > o.since) segments_.push_back({id, o.since, at, o.onboard, o.capacity, o.section});
    o.since = at;
  }
}

double MetricsLedger::train_usage(TrainId id, SimTime a, SimTime b) const {
  double seat = 0.0;
  double cap = 0.0;
  for (const auto& s : segments_) {
    if (s.train != id) continue;
    const auto dt = static_cast<double>(overlap(s.begin, s.end, a, b));
    seat += dt * s.onboard;
    cap += dt * s.capacity;
  }
  return cap > 0.0 ? seat / cap : 0.0;
}

double MetricsLedger::fleet_usage(SimTime a, SimTime b) const {
  if (train_line_.empty()) return 0.0;
  std::vector<double> seat(train_line_.size(), 0.0);
  std::vector<double> cap(train_line_.size(), 0.0);
  for (const auto& s : segments_) {
    const auto dt = static_cast<double>(overlap(s.begin, s.end, a, b));
    seat[s.train] += dt * s.onboard;
    cap[s.train] += dt * s.capacity;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < seat.size(); ++i) sum += cap[i] > 0.0 ? seat[i] / cap[i] : 0.0;
  return sum / static_cast<double>(seat.size());
}

double MetricsLedger::avg_wait(SimTime a, SimTime b) const {
  if (population_ == 0) return 0.0;
  std::int64_t total = 0;
  for (const auto& w : waits_) total += overlap(w.begin, w.end, a, b);
  return static_cast<double>(total) / static_cast<double>(population_);
}

double MetricsLedger::section_usage(LineId line, int section, SimTime a, SimTime b) const {
  std::map<TrainId, std::pair<double, double>> acc;  // seat-time in section, capacity-time
  for (const auto& s : segments_) {
    if (train_line_[s.train] != line) continue;
    const auto dt = static_cast<double>(overlap(s.begin, s.end, a, b));
    auto& [seat, cap] = acc[s.train];
    cap += dt * s.capacity;
    if (s.section == section) seat += dt * s.onboard;
  }
  double sum = 0.0;
  for (const auto& [id, v] : acc) sum += v.second > 0.0 ? v.first / v.second : 0.0;
  return sum;
}

std::optional<double> MetricsLedger::section_wait(LineId line, int section, SimTime a,
                                                  SimTime b) const {
  std::int64_t total = 0;
  std::int64_t count = 0;
  for (const auto& w : waits_) {
    if (section_of(line, w.station) != section) continue;
    // Zero-length waits inside the window still count as waiters.
    const bool touches = w.begin < b && (w.end > a || (w.end == w.begin && w.begin >= a));
    if (!touches) continue;
    total += overlap(w.begin, w.end, a, b);
    ++count;
  }
  if (count == 0) return std::nullopt;
  return static_cast<double>(total) / static_cast<double>(count);
}

std::optional<double> MetricsLedger::avg_travel(SimTime a, SimTime b) const {
  std::int64_t total = 0;
  std::int64_t count = 0;
  for (const auto& t : trips_) {
    if (t.end < a || t.end >= b) continue;
    total += t.end - t.begin;
    ++count;
  }
  if (count == 0) return std::nullopt;
  return static_cast<double>(total) / static_cast<double>(count);
}

namespace {

void check_open(const std::FILE* f, const std::filesystem::path& p) {
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + p.string());
}

struct CsvFile {
  explicit CsvFile(const std::filesystem::path& p) : path(p), f(std::fopen(p.string().c_str(), "wb")) {
    check_open(f, p);
  }
  ~CsvFile() {
    if (f) std::fclose(f);
  }
  CsvFile(const CsvFile&) = delete;
  CsvFile& operator=(const CsvFile&) = delete;

  template <typename... Args>
  void line(fmt::format_string<Args...> format, Args&&... args) {
    fmt::print(f, format, std::forward<Args>(args)...);
    std::fputc('\n', f);
  }
  void finish() {
    const bool bad = std::ferror(f) != 0;
    const bool closed = std::fclose(f) == 0;
    f = nullptr;
    if (bad || !closed) throw Error(ErrorCode::IoError, "failed writing " + path.string());
  }

  std::filesystem::path path;
  std::FILE* f;
};

std::string fixed4(std::optional<double> v) { return v ? fmt::format("{:.4f}", *v) : std::string(); }

}  // namespace

void emit_report(const MetricsLedger& ledger, std::int64_t hours, const ReportSummary& summary,
                 const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());

  const auto& net = ledger.network();
  const auto trains = ledger.train_count();
  const auto h = static_cast<std::size_t>(std::max<std::int64_t>(0, hours));
  // One pass over the segments: seat-time per (hour, train, section) and
  // capacity-time per (hour, train).
  std::vector<double> cap(h * trains, 0.0);
  std::vector<double> seat(h * trains, 0.0);
  std::vector<double> seat_in(h * trains * kSectionsPerLine, 0.0);
  for (const auto& s : ledger.segments()) {
    const auto first = std::max<std::int64_t>(0, s.begin.hour_index());
    for (auto hr = first; hr < static_cast<std::int64_t>(h); ++hr) {
      const SimTime a(hr * SimTime::kHour);
      if (a >= s.end) break;
      const auto dt = static_cast<double>(overlap(s.begin, s.end, a, a + SimTime::kHour));
      const auto k = static_cast<std::size_t>(hr) * trains + s.train;
      cap[k] += dt * s.capacity;
      seat[k] += dt * s.onboard;
      if (s.section >= 0) seat_in[k * kSectionsPerLine + s.section] += dt * s.onboard;
    }
  }

  {
    CsvFile usage(dir / "usage.csv");
    usage.line("hour,line,section,usage");
    for (std::size_t hr = 0; hr < h; ++hr) {
      for (const auto& line : net.lines()) {
        for (int sec = 0; sec < kSectionsPerLine; ++sec) {
          double sum = 0.0;
          for (TrainId t = 0; t < trains; ++t) {
            if (ledger.train_line(t) != line.id) continue;
            const auto k = hr * trains + t;
            if (cap[k] > 0.0) sum += seat_in[k * kSectionsPerLine + sec] / cap[k];
          }
          usage.line("{},{},r{},{:.4f}", hr, line.code, sec, sum);
        }
      }
    }
    usage.finish();
  }
  {
    CsvFile wait(dir / "wait.csv");
    wait.line("hour,line,section,avg_wait_s");
    for (std::size_t hr = 0; hr < h; ++hr) {
      const SimTime a(static_cast<std::int64_t>(hr) * SimTime::kHour);
      for (const auto& line : net.lines()) {
        for (int sec = 0; sec < kSectionsPerLine; ++sec) {
          const auto w = ledger.section_wait(line.id, sec, a, a + SimTime::kHour);
          wait.line("{},{},r{},{:.4f}", hr, line.code, sec, w.value_or(0.0));
        }
      }
    }
    wait.finish();
  }
  {
    CsvFile hourly(dir / "hourly.csv");
    hourly.line("hour,usage,avg_wait_s,trips,avg_travel_s");
    for (std::size_t hr = 0; hr < h; ++hr) {
      const SimTime a(static_cast<std::int64_t>(hr) * SimTime::kHour);
      const SimTime b = a + SimTime::kHour;
      double sum = 0.0;
      for (TrainId t = 0; t < trains; ++t) {
        const auto k = hr * trains + t;
        if (cap[k] > 0.0) sum += seat[k] / cap[k];
      }
      const double usage = trains ? sum / static_cast<double>(trains) : 0.0;
      std::size_t done = 0;
      for (const auto& t : ledger.trips()) done += (t.end >= a && t.end < b) ? 1 : 0;
      hourly.line("{},{:.4f},{:.4f},{},{}", hr, usage, ledger.avg_wait(a, b), done,
                  fixed4(ledger.avg_travel(a, b)));
    }
    hourly.finish();
  }
  {
    CsvFile out(dir / "summary.csv");
    out.line("avg_wait_s,avg_travel_s,alt_route_fraction");
    out.line("{:.4f},{},{:.4f}", summary.avg_wait_s, fixed4(summary.avg_travel_s),
             summary.alt_route_fraction);
    out.finish();
  }
}

}  // namespace railsim
