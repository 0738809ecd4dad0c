#include "railsim/social.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "railsim/error.hpp"
#include "railsim/rng.hpp"

namespace railsim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxDegreeAttempts = 1000;
}  // namespace

DegreeParams DegreeParams::scaled_to(std::size_t n) const {
  const double f = static_cast<double>(n) / static_cast<double>(kReferencePopulation);
  DegreeParams out;
  out.min = std::max(1, static_cast<int>(std::lround(min * f)));
  out.max = std::max(1, static_cast<int>(std::lround(max * f)));
  out.mean = std::max(1.0, std::round(mean * f));
  out.max = std::max(out.max, out.min);
  return out;
}

std::vector<int> sample_degrees(std::size_t n, const DegreeParams& params, RngStream& rng) {
  if (params.min < 1 || params.max < params.min || !(params.mean > 0.0)) {
    throw Error(ErrorCode::BadParameter, "degree bounds must satisfy 1 <= min <= max, mean > 0");
  }
  if (static_cast<std::size_t>(params.max) >= n) {
    throw Error(ErrorCode::InfeasibleDegree,
                "max friend count " + std::to_string(params.max) + " needs more than " +
                    std::to_string(n) + " humans");
  }
  std::vector<int> best;
  double best_gap = kInf;
  for (int attempt = 0; attempt < kMaxDegreeAttempts; ++attempt) {
    std::vector<int> degrees(n);
    double sum = 0.0;
    for (auto& d : degrees) {
      const double x = std::round(rng.exponential(params.mean));
      d = static_cast<int>(std::clamp(x, static_cast<double>(params.min),
                                      static_cast<double>(params.max)));
      sum += d;
    }
    const double gap = std::abs(sum / static_cast<double>(n) - params.mean);
    if (gap < best_gap) {
      best_gap = gap;
      best = std::move(degrees);
    }
    if (best_gap <= 0.05 * params.mean) break;
  }
  return best;
}

double similar_age_influence(const Human& a, const Human& b) {
  return 1.0 - std::abs(a.age_group - b.age_group) / 6.0;
}

double similar_class_influence(const Human& a, const Human& b) {
  return a.category == b.category ? 1.0 : 0.0;
}

double proximity(const Human& a, const Human& b) {
  double d = haversine_m(a.home, b.home);
  if (a.office && b.office) d = std::min(d, haversine_m(*a.office, *b.office));
  if (a.school && b.school) d = std::min(d, haversine_m(*a.school, *b.school));
  return d;
}

double proximity_influence(double prox, double least_proximate) {
  if (std::isinf(least_proximate)) return std::isinf(prox) ? 0.0 : 1.0;
  if (least_proximate <= 0.0) return 0.0;  // every connection at distance 0
  return 1.0 - prox / least_proximate;
}

SocialGraph::SocialGraph(std::vector<std::vector<HumanId>> follows) {
  const auto n = follows.size();
  follows_.resize(n);
  for (HumanId x = 0; x < n; ++x) {
    for (auto y : follows[x]) {
      if (y >= n) {
        throw Error(ErrorCode::DanglingReference, "edge to unknown human " + std::to_string(y));
      }
      if (y == x) throw Error(ErrorCode::InvariantViolation, "self edge at " + std::to_string(x));
      follows_[x].push_back({y, 0.0});
    }
    std::sort(follows_[x].begin(), follows_[x].end(),
              [](const Link& a, const Link& b) { return a.node < b.node; });
    for (std::size_t i = 1; i < follows_[x].size(); ++i) {
      if (follows_[x][i].node == follows_[x][i - 1].node) {
        throw Error(ErrorCode::InvariantViolation, "duplicate edge at " + std::to_string(x));
      }
    }
  }
  rebuild_followers();
}

void SocialGraph::rebuild_followers() {
  followers_.assign(follows_.size(), {});
  edges_ = 0;
  for (HumanId x = 0; x < follows_.size(); ++x) {
    for (const auto& link : follows_[x]) {
      followers_[link.node].push_back({x, link.probability});
      ++edges_;
    }
  }
}

double SocialGraph::probability(HumanId poster, HumanId follower) const {
  const auto& links = follows_.at(follower);
  auto it = std::lower_bound(links.begin(), links.end(), poster,
                             [](const Link& l, HumanId id) { return l.node < id; });
  if (it == links.end() || it->node != poster) {
    throw Error(ErrorCode::BadParameter, "no edge " + std::to_string(follower) + " -> " +
                                             std::to_string(poster));
  }
  return it->probability;
}

namespace {

double least_proximate(const Human& follower, std::span<const Human> people,
                       std::span<const SocialGraph::Link> follows) {
  double worst = 0.0;
  for (const auto& link : follows) {
    worst = std::max(worst, proximity(people[link.node], follower));
  }
  return worst;
}

double combine(const Human& poster, const Human& follower, double least) {
  return (similar_age_influence(poster, follower) + similar_class_influence(poster, follower) +
          proximity_influence(proximity(poster, follower), least)) /
         3.0;
}

}  // namespace

double influence_probability(const Human& poster, const Human& follower,
                             std::span<const Human> people, const SocialGraph& graph) {
  return combine(poster, follower, least_proximate(follower, people, graph.follows(follower.id)));
}

void SocialGraph::assign_probabilities(std::span<const Human> people, InfluenceModel model,
                                       double constant_p) {
  if (people.size() != follows_.size()) {
    throw Error(ErrorCode::BadParameter, "population and graph sizes differ");
  }
  if (model == InfluenceModel::Constant && !(constant_p >= 0.0 && constant_p <= 1.0)) {
    throw Error(ErrorCode::BadParameter, "constant influence probability outside [0, 1]");
  }
  for (HumanId x = 0; x < follows_.size(); ++x) {
    const double least =
        model == InfluenceModel::Similarity ? least_proximate(people[x], people, follows_[x]) : 0.0;
    for (auto& link : follows_[x]) {
      link.probability = model == InfluenceModel::Constant
                             ? constant_p
                             : std::clamp(combine(people[link.node], people[x], least), 0.0, 1.0);
    }
  }
  rebuild_followers();
}

void SocialGraph::dump(std::ostream& out) const {
  std::ostringstream line;
  line.precision(17);
  for (HumanId x = 0; x < follows_.size(); ++x) {
    for (const auto& link : follows_[x]) {
      line.str("");
      line << x << ' ' << link.node << ' ' << link.probability << '\n';
      out << line.str();
    }
  }
}

SocialGraph SocialGraph::load(std::istream& in) {
  std::vector<std::vector<HumanId>> follows;
  std::vector<std::vector<double>> probs;
  std::string text;
  std::size_t lineno = 0;
  while (std::getline(in, text)) {
    ++lineno;
    if (text.empty()) continue;
    std::istringstream fields(text);
    std::int64_t x = -1;
    std::int64_t y = -1;
    double p = -1.0;
    if (!(fields >> x >> y >> p) || x < 0 || y < 0) {
      throw Error(ErrorCode::ParseError, "edge list line " + std::to_string(lineno));
    }
    const auto need = static_cast<std::size_t>(std::max(x, y)) + 1;
    if (follows.size() < need) {
      follows.resize(need);
      probs.resize(need);
    }
    follows[x].push_back(static_cast<HumanId>(y));
    probs[x].push_back(p);
  }
  SocialGraph g(follows);
  for (HumanId x = 0; x < g.follows_.size(); ++x) {
    for (std::size_t k = 0; k < follows[x].size(); ++k) {
      const auto y = follows[x][k];
      auto& links = g.follows_[x];
      auto it = std::find_if(links.begin(), links.end(), [&](const Link& l) { return l.node == y; });
      it->probability = probs[x][k];
    }
  }
  g.rebuild_followers();
  return g;
}

SocialGraph generate_graph(std::span<const Human> people, const DegreeParams& params,
                           RngStream& rng) {
  const auto n = people.size();
  if (n == 0) throw Error(ErrorCode::BadParameter, "social graph needs a non-empty population");
  const auto degrees = sample_degrees(n, params, rng);
  std::vector<std::vector<HumanId>> follows(n);
  std::vector<std::uint32_t> picked;
  for (HumanId x = 0; x < n; ++x) {
    // Floyd's sampling of degrees[x] distinct indices from [0, n - 2],
    // shifted past x to skip the self-loop.
    const auto d = static_cast<std::int64_t>(degrees[x]);
    const auto pool = static_cast<std::int64_t>(n) - 1;
    picked.clear();
    for (auto j = pool - d; j < pool; ++j) {
      const auto t = static_cast<std::uint32_t>(rng.uniform_int(0, j));
      if (std::find(picked.begin(), picked.end(), t) == picked.end()) {
        picked.push_back(t);
      } else {
        picked.push_back(static_cast<std::uint32_t>(j));
      }
    }
    std::sort(picked.begin(), picked.end());
    for (auto t : picked) follows[x].push_back(t >= x ? t + 1 : t);
  }
  SocialGraph g(std::move(follows));
  return g;
}

double cascade_coin(const RngStreams& rng, EventId event, HumanId poster, HumanId follower) {
  return rng.keyed_uniform("cascade", event, poster, follower);
}

ActivationState::ActivationState(EventId event, std::size_t population)
    : event_(event), state_(population, kUntouched) {}

bool ActivationState::seed(HumanId h) {
  if (state_.at(h) != kUntouched) return false;
  state_[h] = kActive;
  frontier_.push_back(h);
  active_list_.push_back(h);
  return true;
}

std::vector<HumanId> ActivationState::step(const SocialGraph& graph, const RngStreams& rng,
                                           const std::function<bool(HumanId)>& accept) {
  std::vector<HumanId> influenced;
  std::vector<char> marked(state_.size(), 0);
  std::sort(frontier_.begin(), frontier_.end());
  for (auto poster : frontier_) {
    for (const auto& link : graph.followers(poster)) {
      const auto v = link.node;
      if (state_[v] != kUntouched || marked[v]) continue;
      ++flips_;
      if (cascade_coin(rng, event_, poster, v) < link.probability) {
        marked[v] = 1;
        influenced.push_back(v);
      }
    }
  }
  std::sort(influenced.begin(), influenced.end());
  std::vector<HumanId> activated;
  for (auto v : influenced) {
    if (accept(v)) {
      state_[v] = kActive;
      activated.push_back(v);
      active_list_.push_back(v);
    } else {
      state_[v] = kDeclined;
    }
  }
  frontier_ = activated;
  ++steps_;
  return activated;
}

std::vector<HumanId> cascade(const SocialGraph& graph, std::span<const HumanId> seeds,
                             EventId event, const RngStreams& rng) {
  ActivationState state(event, graph.size());
  for (auto s : seeds) state.seed(s);
  const auto accept_all = [](HumanId) { return true; };
  while (!state.frontier().empty()) state.step(graph, rng, accept_all);
  auto out = state.active_set();
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace railsim
