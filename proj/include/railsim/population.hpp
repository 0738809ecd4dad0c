#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "railsim/geo.hpp"
#include "railsim/sim_time.hpp"

namespace railsim {

class RngStream;
class RngStreams;

enum class Category : std::uint8_t { WorkingProfessional, Student, HomeMaker, SeniorCitizen };
inline constexpr std::size_t kCategoryCount = 4;

std::string_view to_string(Category c);

/// Population shares of the four categories.
inline constexpr std::array<double, kCategoryCount> kCategoryWeights = {0.40, 0.30, 0.15, 0.15};

/// Population percentage of age groups 1..6 (0-14, 15-24, 25-40, 41-54, 55-64, 65+).
inline constexpr std::array<double, 6> kAgeGroupWeights = {13.6, 18.2, 25.1, 25.0, 9.9, 8.1};

/// Age groups a category may be drawn from.
std::span<const int> allowed_age_groups(Category c);

using HumanId = std::uint32_t;

struct Human {
  HumanId id = 0;
  Category category = Category::WorkingProfessional;
  int age_group = 3;
  GeoPoint home;
  std::optional<GeoPoint> office;
  std::optional<GeoPoint> school;
  std::optional<GeoPoint> shop;

  /// Category/contact-point/age consistency.
  bool consistent() const;
};

enum class PlaceKind : std::uint8_t { Home, Office, School, Shop, Restaurant, Other, Event };

std::string_view to_string(PlaceKind k);

struct Trip {
  HumanId human = 0;
  PlaceKind origin_kind = PlaceKind::Home;
  PlaceKind destination_kind = PlaceKind::Home;
  SimTime window_start;
  SimTime window_end;
  SimTime chosen_start;
  GeoPoint destination;
};

struct PopulationParams {
  std::array<double, kCategoryCount> category_weights = kCategoryWeights;
  double shop_radius_m = 5000.0;
};

/// Categories from `category_weights`, age groups from the age table
/// restricted to the category, homes/offices/schools uniform in `bounds`,
/// shops within `shop_radius_m` of home.
std::vector<Human> generate_population(std::size_t n, const BoundingBox& bounds,
                                       const PopulationParams& params, RngStream& rng);

inline constexpr double kOtherRadiusM = 5000.0;
inline constexpr double kRestaurantRadiusM = 1000.0;
inline constexpr double kOptionalTripProbability = 0.5;

/// Trips for one day, ordered by chosen start. Optional outings and their
/// return legs occur together with probability 0.5. `rng` should be private
/// to (human, day).
std::vector<Trip> daily_trips(const Human& h, std::int64_t day, RngStream& rng);

}  // namespace railsim
