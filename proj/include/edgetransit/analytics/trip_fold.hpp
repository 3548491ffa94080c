#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "edgetransit/core/avl.hpp"
#include "edgetransit/core/geo.hpp"
#include "edgetransit/core/summary.hpp"

namespace edgetransit::analytics {

/// Running per-trip fold state. Single writer per trip.
struct TripState {
    std::string trip_id;
    std::int64_t first_timestamp_s = 0;
    std::int64_t last_timestamp_s = 0;
    std::optional<core::GeoPoint> previous_point;
    std::int64_t move_count = 0;
    std::int64_t stop_count = 0;
    core::Date date;
    core::TimeOfDay start_time;

    bool started() const { return previous_point.has_value(); }
    std::int64_t annotated() const { return move_count + stop_count; }
};

/// Folds one clean tuple into the trip. The first tuple of a trip is
/// annotated Stop (no observed displacement yet); later tuples go through
/// classify_motion against the previous point. Throws std::logic_error on a
/// tuple at or before last_timestamp or with a foreign trip_id.
core::MotionAnnotation annotate(TripState& state, const core::AvlTuple& tuple,
                                double threshold_m = core::kStopMoveThresholdM);

/// Emits the 6-field end-of-trip aggregate. Throws std::logic_error if no
/// tuple was annotated.
core::TripSummary finalize_trip(const TripState& state);

}  // namespace edgetransit::analytics
