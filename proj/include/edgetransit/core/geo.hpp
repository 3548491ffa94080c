#pragma once

#include <cstdint>
#include <optional>

namespace edgetransit::core {

/// Mean Earth radius used for all great-circle math, in meters.
inline constexpr double kEarthRadiusM = 6'371'000.0;

/// Consecutive-point displacement below which a point is a Stop, in meters.
inline constexpr double kStopMoveThresholdM = 15.0;

/// A validated WGS-style coordinate pair in decimal degrees.
/// Latitude must lie in [-90, 90], longitude in [-180, 180].
class GeoPoint {
  public:
    /// Throws std::out_of_range when either coordinate is outside range.
    GeoPoint(double latitude_deg, double longitude_deg);

    /// Non-throwing construction; nullopt on out-of-range input.
    static std::optional<GeoPoint> try_make(double latitude_deg, double longitude_deg);

    double latitude() const { return lat_; }
    double longitude() const { return lon_; }

    bool operator==(const GeoPoint&) const = default;

  private:
    double lat_;
    double lon_;
};

enum class Motion { kStop, kMove };

struct MotionAnnotation {
    std::int64_t tuple_timestamp_s = 0;
    Motion label = Motion::kStop;
};

/// Haversine great-circle distance on a sphere of radius kEarthRadiusM.
/// Symmetric; zero iff the points are identical.
double great_circle_distance(const GeoPoint& a, const GeoPoint& b);

/// Stop when the displacement is strictly below the threshold, Move
/// otherwise (a displacement of exactly the threshold is a Move).
Motion classify_motion(const GeoPoint& previous, const GeoPoint& current,
                       double threshold_m = kStopMoveThresholdM);

}  // namespace edgetransit::core
