#include "edgetransit/analytics/day_fold.hpp"

#include <stdexcept>

#include "edgetransit/core/time.hpp"

namespace edgetransit::analytics {

DayState::Bucket& DayState::bucket(core::Daypart d) {
    switch (d) {
        case core::Daypart::kAfternoon: return afternoon;
        case core::Daypart::kEvening: return evening;
        default: return morning;
    }
}

const DayState::Bucket& DayState::bucket(core::Daypart d) const {
    return const_cast<DayState*>(this)->bucket(d);
}

void fold_trip_into_day(DayState& day, const core::TripSummary& summary) {
    if (summary.date != day.date) {
        throw std::logic_error("fold_trip_into_day: trip dated " +
                               core::format_date(summary.date) + " folded into day " +
                               core::format_date(day.date));
    }
    ++day.total_trips;
    const core::Daypart part = core::daypart_of(summary.start_time);
    if (part == core::Daypart::kNone) return;
    DayState::Bucket& b = day.bucket(part);
    b.sum_time_length_s += summary.total_time_length_s;
    b.sum_moves += summary.total_move;
    b.sum_stops += summary.total_stop;
    ++b.trip_count;
}

core::DailySummary finalize_day(const DayState& day) {
    core::DailySummary out;
    out.date = day.date;
    for (const core::Daypart part : core::kReportedDayparts) {
        const DayState::Bucket& b = day.bucket(part);
        core::DaypartStats& stats = out.part(part);
        stats.trip_count = b.trip_count;
        if (b.trip_count == 0) continue;
        const double n = static_cast<double>(b.trip_count);
        stats.avg_time_length_s = static_cast<double>(b.sum_time_length_s) / n;
        stats.avg_moves = static_cast<double>(b.sum_moves) / n;
        stats.avg_stops = static_cast<double>(b.sum_stops) / n;
    }
    return out;
}

}  // namespace edgetransit::analytics
