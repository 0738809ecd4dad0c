#include "railsim/population.hpp"

#include <algorithm>

#include "railsim/error.hpp"
#include "railsim/rng.hpp"

namespace railsim {

std::string_view to_string(Category c) {
  switch (c) {
    case Category::WorkingProfessional: return "working-professional";
    case Category::Student: return "student";
    case Category::HomeMaker: return "home-maker";
    case Category::SeniorCitizen: return "senior-citizen";
  }
  return "?";
}

std::string_view to_string(PlaceKind k) {
  switch (k) {
    case PlaceKind::Home: return "home";
    case PlaceKind::Office: return "office";
    case PlaceKind::School: return "school";
    case PlaceKind::Shop: return "shop";
    case PlaceKind::Restaurant: return "restaurant";
    case PlaceKind::Other: return "other";
    case PlaceKind::Event: return "event";
  }
  return "?";
}

namespace {
constexpr int kStudentAges[] = {1, 2};
constexpr int kWorkerAges[] = {2, 3, 4, 5};
constexpr int kHomeMakerAges[] = {3, 4, 5};
constexpr int kSeniorAges[] = {6};
}  // namespace

std::span<const int> allowed_age_groups(Category c) {
  switch (c) {
    case Category::WorkingProfessional: return kWorkerAges;
    case Category::Student: return kStudentAges;
    case Category::HomeMaker: return kHomeMakerAges;
    case Category::SeniorCitizen: return kSeniorAges;
  }
  return {};
}

bool Human::consistent() const {
  const auto ages = allowed_age_groups(category);
  if (std::find(ages.begin(), ages.end(), age_group) == ages.end()) return false;
  switch (category) {
    case Category::WorkingProfessional: return office.has_value() && !school.has_value();
    case Category::Student: return school.has_value() && !office.has_value();
    case Category::HomeMaker: return shop.has_value() && !office.has_value() && !school.has_value();
    case Category::SeniorCitizen: return !office.has_value() && !school.has_value();
  }
  return false;
}

std::vector<Human> generate_population(std::size_t n, const BoundingBox& bounds,
                                       const PopulationParams& params, RngStream& rng) {
  if (n > 0 && bounds.empty()) {
    throw Error(ErrorCode::BadParameter, "population bounds are empty");
  }
  std::vector<Human> people;
  people.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Human h;
    h.id = static_cast<HumanId>(i);
    h.category = static_cast<Category>(rng.choice(params.category_weights));
    const auto ages = allowed_age_groups(h.category);
    std::vector<double> w;
    for (int g : ages) w.push_back(kAgeGroupWeights[static_cast<std::size_t>(g - 1)]);
    h.age_group = ages[rng.choice(w)];
    h.home = bounds.sample(rng);
    switch (h.category) {
      case Category::WorkingProfessional: h.office = bounds.sample(rng); break;
      case Category::Student: h.school = bounds.sample(rng); break;
      case Category::HomeMaker: h.shop = sample_in_radius(h.home, params.shop_radius_m, rng); break;
      case Category::SeniorCitizen: break;
    }
    people.push_back(h);
  }
  return people;
}

namespace {

struct TripRule {
  PlaceKind from;
  PlaceKind to;
  SimTime window_start;
  SimTime window_end;
};

/// Trips that belong together; optional groups happen all-or-nothing.
struct TripGroup {
  std::vector<TripRule> rules;
  bool optional = false;
};

std::vector<TripGroup> rules_for(Category c) {
  using P = PlaceKind;
  auto t = [](int h, int m) { return SimTime::hms(h, m); };
  switch (c) {
    case Category::WorkingProfessional:
      return {
          {{{P::Home, P::Office, t(7, 30), t(9, 30)}}},
          {{{P::Office, P::Restaurant, t(12, 0), t(13, 0)},
            {P::Restaurant, P::Office, t(12, 30), t(13, 30)}}},
          {{{P::Office, P::Home, t(17, 30), t(20, 0)}}},
      };
    case Category::Student:
      return {
          {{{P::Home, P::School, t(7, 0), t(8, 0)}}},
          {{{P::School, P::Home, t(13, 30), t(14, 30)}}},
          {{{P::Home, P::Other, t(18, 30), t(20, 30)}, {P::Other, P::Home, t(18, 30), t(20, 30)}}},
      };
    case Category::HomeMaker:
      return {
          {{{P::Home, P::Shop, t(9, 0), t(11, 0)}, {P::Shop, P::Home, t(9, 30), t(11, 30)}}},
          {{{P::Home, P::Shop, t(18, 0), t(20, 0)}, {P::Shop, P::Home, t(18, 30), t(21, 0)}}, true},
      };
    case Category::SeniorCitizen:
      return {
          {{{P::Home, P::Other, t(7, 0), t(9, 0)}, {P::Other, P::Home, t(8, 30), t(10, 0)}}, true},
          {{{P::Home, P::Other, t(17, 0), t(18, 30)}, {P::Other, P::Home, t(17, 30), t(19, 30)}},
           true},
      };
  }
  return {};
}

}  // namespace

std::vector<Trip> daily_trips(const Human& h, std::int64_t day, RngStream& rng) {
  std::vector<Trip> trips;
  const auto day_base = day * SimTime::kDay;
  for (const auto& group : rules_for(h.category)) {
    if (group.optional && !rng.bernoulli(kOptionalTripProbability)) continue;
    // Places visited by this group that are not fixed contact points.
    std::optional<GeoPoint> restaurant;
    std::optional<GeoPoint> other;
    auto place = [&](PlaceKind k) -> GeoPoint {
      switch (k) {
        case PlaceKind::Home: return h.home;
        case PlaceKind::Office: return h.office.value_or(h.home);
        case PlaceKind::School: return h.school.value_or(h.home);
        case PlaceKind::Shop: return h.shop.value_or(h.home);
        case PlaceKind::Restaurant:
          if (!restaurant) restaurant = sample_in_radius(h.office.value_or(h.home), kRestaurantRadiusM, rng);
          return *restaurant;
        case PlaceKind::Other:
          if (!other) other = sample_in_radius(h.home, kOtherRadiusM, rng);
          return *other;
        case PlaceKind::Event: break;
      }
      return h.home;
    };
    const auto first = trips.size();
    for (const auto& rule : group.rules) {
      Trip trip;
      trip.human = h.id;
      trip.origin_kind = rule.from;
      trip.destination_kind = rule.to;
      trip.window_start = rule.window_start + day_base;
      trip.window_end = rule.window_end + day_base;
      trip.chosen_start = SimTime(rng.uniform_int(trip.window_start.seconds(),
                                                  trip.window_end.seconds()));
      trip.destination = place(rule.to);
      trips.push_back(trip);
    }
    // Overlapping windows: sorting the starts keeps each inside its window
    // because an inversion can only happen inside the overlap.
    std::vector<SimTime> starts;
    for (auto i = first; i < trips.size(); ++i) starts.push_back(trips[i].chosen_start);
    std::sort(starts.begin(), starts.end());
    for (auto i = first; i < trips.size(); ++i) trips[i].chosen_start = starts[i - first];
  }
  std::stable_sort(trips.begin(), trips.end(),
                   [](const Trip& a, const Trip& b) { return a.chosen_start < b.chosen_start; });
  return trips;
}

}  // namespace railsim
