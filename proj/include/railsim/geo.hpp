#pragma once

#include <cstdint>

namespace railsim {

class RngStream;

/// WGS84-ish point in degrees.
struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  bool valid() const { return lat >= -90.0 && lat <= 90.0 && lon >= -180.0 && lon <= 180.0; }
  bool operator==(const GeoPoint&) const = default;
};

inline constexpr double kEarthRadiusM = 6371008.8;

/// Great-circle distance in meters.
double haversine_m(GeoPoint a, GeoPoint b);

struct BoundingBox {
  // Default-constructed boxes are empty.
  double min_lat = 90.0;
  double min_lon = 180.0;
  double max_lat = -90.0;
  double max_lon = -180.0;

  GeoPoint sample(RngStream& rng) const;
  void extend(GeoPoint p);
  bool empty() const { return max_lat < min_lat || max_lon < min_lon; }
};

/// Uniform point (by area) within `radius_m` of `center`, flat-earth local approximation.
GeoPoint sample_in_radius(GeoPoint center, double radius_m, RngStream& rng);

/// Point displaced by (north_m, east_m) from `origin`.
GeoPoint offset_m(GeoPoint origin, double north_m, double east_m);

/// Straight-line road travel at a fixed speed.
class RoadRouter {
 public:
  explicit RoadRouter(double speed_kmh = 35.0);

  double speed_kmh() const { return speed_kmh_; }

  /// Whole seconds, rounded up; zero only for identical points.
  std::int64_t travel_seconds(GeoPoint from, GeoPoint to) const;

 private:
  double speed_kmh_;
};

}  // namespace railsim
