#include "railsim/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "railsim/error.hpp"
#include "railsim/rng.hpp"

namespace railsim {

namespace {
constexpr double kDeg = std::numbers::pi / 180.0;
}

double haversine_m(GeoPoint a, GeoPoint b) {
  const double phi1 = a.lat * kDeg;
  const double phi2 = b.lat * kDeg;
  const double dphi = (b.lat - a.lat) * kDeg;
  const double dlambda = (b.lon - a.lon) * kDeg;
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  return 2.0 * kEarthRadiusM * std::atan2(std::sqrt(h), std::sqrt(1.0 - h));
}

GeoPoint BoundingBox::sample(RngStream& rng) const {
  const double lat = rng.uniform(min_lat, max_lat);
  const double lon = rng.uniform(min_lon, max_lon);
  return {lat, lon};
}

void BoundingBox::extend(GeoPoint p) {
  if (empty()) {
    *this = {p.lat, p.lon, p.lat, p.lon};
    return;
  }
  min_lat = std::min(min_lat, p.lat);
  max_lat = std::max(max_lat, p.lat);
  min_lon = std::min(min_lon, p.lon);
  max_lon = std::max(max_lon, p.lon);
}

GeoPoint offset_m(GeoPoint origin, double north_m, double east_m) {
  const double dlat = north_m / kEarthRadiusM / kDeg;
  const double dlon = east_m / (kEarthRadiusM * std::cos(origin.lat * kDeg)) / kDeg;
  return {origin.lat + dlat, origin.lon + dlon};
}

GeoPoint sample_in_radius(GeoPoint center, double radius_m, RngStream& rng) {
  const double r = radius_m * std::sqrt(rng.uniform());
  const double theta = 2.0 * std::numbers::pi * rng.uniform();
  return offset_m(center, r * std::cos(theta), r * std::sin(theta));
}

RoadRouter::RoadRouter(double speed_kmh) : speed_kmh_(speed_kmh) {
  if (!(speed_kmh > 0.0)) {
    throw Error(ErrorCode::BadParameter, "road speed must be positive");
  }
}

std::int64_t RoadRouter::travel_seconds(GeoPoint from, GeoPoint to) const {
  const double d = haversine_m(from, to);
  if (d <= 0.0) return 0;
  const double secs = d / (speed_kmh_ / 3.6);
  // Absorb floating noise so exact-hour distances stay exact.
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(secs - 1e-6)));
}

}  // namespace railsim
