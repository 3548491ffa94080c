#include "edgetransit/core/geo.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "edgetransit/core/distance_kernels.hpp"

namespace edgetransit::core {

GeoPoint::GeoPoint(double latitude_deg, double longitude_deg)
    : lat_(latitude_deg), lon_(longitude_deg) {
    if (!(lat_ >= -90.0 && lat_ <= 90.0)) {
        throw std::out_of_range("latitude out of [-90, 90]: " + std::to_string(latitude_deg));
    }
    if (!(lon_ >= -180.0 && lon_ <= 180.0)) {
        throw std::out_of_range("longitude out of [-180, 180]: " + std::to_string(longitude_deg));
    }
}

std::optional<GeoPoint> GeoPoint::try_make(double latitude_deg, double longitude_deg) {
    if (!(latitude_deg >= -90.0 && latitude_deg <= 90.0)) return std::nullopt;
    if (!(longitude_deg >= -180.0 && longitude_deg <= 180.0)) return std::nullopt;
    GeoPoint p(latitude_deg, longitude_deg);
    return p;
}

double great_circle_distance(const GeoPoint& a, const GeoPoint& b) {
    double out = 0.0;
    const double lat1 = a.latitude(), lon1 = a.longitude();
    const double lat2 = b.latitude(), lon2 = b.longitude();
    pairwise_distances_scalar(&lat1, &lon1, &lat2, &lon2, &out, 1);
    return out;
}

Motion classify_motion(const GeoPoint& previous, const GeoPoint& current, double threshold_m) {
    return great_circle_distance(previous, current) < threshold_m ? Motion::kStop : Motion::kMove;
}

}  // namespace edgetransit::core
