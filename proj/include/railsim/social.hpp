#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "railsim/population.hpp"
#include "railsim/social_event.hpp"

namespace railsim {

/// Friend-count distribution bounds. Defaults describe a 100,000-person city.
struct DegreeParams {
  int min = 1;
  int max = 5000;
  double mean = 500.0;

  static constexpr std::size_t kReferencePopulation = 100000;

  /// Linear scaling to a population of `n`; no bound drops below 1.
  DegreeParams scaled_to(std::size_t n) const;
};

/// Friend counts from an exponential clamped to [min, max]. The whole draw is
/// repeated until the sample mean is within 5% of `mean`.
/// Throws Error(InfeasibleDegree) if max >= n.
std::vector<int> sample_degrees(std::size_t n, const DegreeParams& params, RngStream& rng);

enum class InfluenceModel { Similarity, Constant };

double similar_age_influence(const Human& a, const Human& b);
double similar_class_influence(const Human& a, const Human& b);
/// Smallest of the home, office and school distances; pairs with a missing
/// side count as infinite.
double proximity(const Human& a, const Human& b);
/// 1 - prox / least_proximate, with the infinite cases resolved to 1 (only
/// the denominator infinite) or 0 (both infinite).
double proximity_influence(double prox, double least_proximate);

/// Directed "follows" graph. An edge x -> y means x follows y, so y's posts
/// can activate x.
class SocialGraph {
 public:
  struct Link {
    HumanId node = 0;
    double probability = 0.0;
  };

  SocialGraph() = default;
  /// follows[x] lists the humans x follows.
  explicit SocialGraph(std::vector<std::vector<HumanId>> follows);

  std::size_t size() const { return follows_.size(); }
  std::size_t edge_count() const { return edges_; }

  /// Humans that `x` follows, with the chance each one influences `x`.
  std::span<const Link> follows(HumanId x) const { return follows_.at(x); }
  /// Humans following `y`, with the chance `y` influences each of them.
  std::span<const Link> followers(HumanId y) const { return followers_.at(y); }

  /// Chance that `poster` influences `follower`; throws BadParameter without an edge.
  double probability(HumanId poster, HumanId follower) const;

  void assign_probabilities(std::span<const Human> people, InfluenceModel model,
                            double constant_p = 0.5);

  /// "follower poster probability" per line, in follower order.
  void dump(std::ostream& out) const;
  static SocialGraph load(std::istream& in);

 private:
  void rebuild_followers();

  std::vector<std::vector<Link>> follows_;
  std::vector<std::vector<Link>> followers_;
  std::size_t edges_ = 0;
};

/// Influence of `poster` on `follower` (who follows poster), averaging the
/// age, class and proximity terms. The proximity term is normalised by the
/// follower's least proximate followee.
double influence_probability(const Human& poster, const Human& follower,
                             std::span<const Human> people, const SocialGraph& graph);

/// Uniform follow targets without self-loops or duplicates.
SocialGraph generate_graph(std::span<const Human> people, const DegreeParams& params,
                           RngStream& rng);

/// Diffusion of one event. Newly active humans try each follower exactly
/// once per cascade; coin flips are keyed by (event, poster, follower).
class ActivationState {
 public:
  ActivationState(EventId event, std::size_t population);

  EventId event() const { return event_; }
  bool active(HumanId h) const { return state_.at(h) == kActive; }
  /// Active, or influenced and declined.
  bool reached(HumanId h) const { return state_.at(h) != kUntouched; }
  const std::vector<HumanId>& frontier() const { return frontier_; }
  const std::vector<HumanId>& active_set() const { return active_list_; }
  std::size_t steps() const { return steps_; }
  std::size_t flips() const { return flips_; }

  /// Marks `h` active and adds it to the frontier. No-op when already reached.
  bool seed(HumanId h);

  /// One synchronous step from the current frontier. Each influenced human
  /// is offered to `accept`; accepted humans become active and form the new
  /// frontier, the rest are remembered as declined. Returns the newly active.
  std::vector<HumanId> step(const SocialGraph& graph, const RngStreams& rng,
                            const std::function<bool(HumanId)>& accept);

 private:
  static constexpr std::uint8_t kUntouched = 0;
  static constexpr std::uint8_t kActive = 1;
  static constexpr std::uint8_t kDeclined = 2;

  EventId event_;
  std::vector<std::uint8_t> state_;
  std::vector<HumanId> frontier_;
  std::vector<HumanId> active_list_;
  std::size_t steps_ = 0;
  std::size_t flips_ = 0;
};

/// Keyed coin for the edge poster -> follower in `event`.
double cascade_coin(const RngStreams& rng, EventId event, HumanId poster, HumanId follower);

/// Plain independent cascade: every influenced human becomes active.
std::vector<HumanId> cascade(const SocialGraph& graph, std::span<const HumanId> seeds,
                             EventId event, const RngStreams& rng);

}  // namespace railsim
