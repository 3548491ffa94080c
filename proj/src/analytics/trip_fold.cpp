#include "edgetransit/analytics/trip_fold.hpp"

#include <stdexcept>

namespace edgetransit::analytics {

core::MotionAnnotation annotate(TripState& state, const core::AvlTuple& tuple,
                                double threshold_m) {
    if (!state.started()) {
        state.trip_id = tuple.trip_id;
        state.first_timestamp_s = tuple.timestamp_s;
        state.date = tuple.trip_date;
        state.start_time = tuple.trip_start_time;
    } else {
        if (tuple.trip_id != state.trip_id) {
            throw std::logic_error("annotate: tuple from trip '" + tuple.trip_id +
                                   "' folded into trip '" + state.trip_id + "'");
        }
        if (tuple.timestamp_s <= state.last_timestamp_s) {
            throw std::logic_error("annotate: non-increasing timestamp in trip '" +
                                   state.trip_id + "'");
        }
    }

    const core::Motion label =
        state.previous_point ? core::classify_motion(*state.previous_point, tuple.position,
                                                     threshold_m)
                             : core::Motion::kStop;
    if (label == core::Motion::kMove) {
        ++state.move_count;
    } else {
        ++state.stop_count;
    }
    state.previous_point = tuple.position;
    state.last_timestamp_s = tuple.timestamp_s;
    return core::MotionAnnotation{tuple.timestamp_s, label};
}

core::TripSummary finalize_trip(const TripState& state) {
    if (state.annotated() == 0) {
        throw std::logic_error("finalize_trip: empty trip");
    }
    core::TripSummary summary;
    summary.trip_id = state.trip_id;
    summary.date = state.date;
    summary.start_time = state.start_time;
    summary.total_move = state.move_count;
    summary.total_stop = state.stop_count;
    summary.total_time_length_s = state.last_timestamp_s - state.first_timestamp_s;
    return summary;
}

}  // namespace edgetransit::analytics
