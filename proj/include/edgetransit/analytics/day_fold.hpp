#pragma once

#include <array>
#include <cstdint>

#include "edgetransit/core/summary.hpp"

namespace edgetransit::analytics {

/// Running per-day accumulator, reset at day rollover.
struct DayState {
    struct Bucket {
        std::int64_t sum_time_length_s = 0;
        std::int64_t sum_moves = 0;
        std::int64_t sum_stops = 0;
        std::int64_t trip_count = 0;
    };

    core::Date date;
    Bucket morning;
    Bucket afternoon;
    Bucket evening;
    std::int64_t total_trips = 0;  // includes none-daypart trips

    Bucket& bucket(core::Daypart d);
    const Bucket& bucket(core::Daypart d) const;
};

/// Accumulates one trip into its start-time daypart; trips starting in
/// hours 0-4 count toward total_trips only. Throws std::logic_error on a
/// date mismatch.
void fold_trip_into_day(DayState& day, const core::TripSummary& summary);

/// Averages per daypart (real division); zero-trip dayparts yield absent
/// averages.
core::DailySummary finalize_day(const DayState& day);

}  // namespace edgetransit::analytics
