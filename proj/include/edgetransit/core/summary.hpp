#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "edgetransit/core/time.hpp"

namespace edgetransit::core {

/// Daypart by trip start hour: morning [5,12], afternoon [13,18],
/// evening [19,23]. Hours 0-4 fall in kNone and are excluded from
/// daypart averages.
enum class Daypart { kMorning, kAfternoon, kEvening, kNone };

constexpr std::string_view daypart_name(Daypart d) {
    switch (d) {
        case Daypart::kMorning: return "morning";
        case Daypart::kAfternoon: return "afternoon";
        case Daypart::kEvening: return "evening";
        case Daypart::kNone: return "none";
    }
    return "none";
}

constexpr Daypart daypart_of(TimeOfDay start_time) {
    const int h = start_time.hour;
    if (h >= 5 && h <= 12) return Daypart::kMorning;
    if (h >= 13 && h <= 18) return Daypart::kAfternoon;
    if (h >= 19 && h <= 23) return Daypart::kEvening;
    return Daypart::kNone;
}

/// The three dayparts that carry averages, in reporting order.
inline constexpr std::array<Daypart, 3> kReportedDayparts = {
    Daypart::kMorning, Daypart::kAfternoon, Daypart::kEvening};

/// End-of-trip aggregate.
struct TripSummary {
    std::string trip_id;
    Date date;
    TimeOfDay start_time;
    std::int64_t total_move = 0;
    std::int64_t total_stop = 0;
    std::int64_t total_time_length_s = 0;

    bool operator==(const TripSummary&) const = default;
};

/// Per-daypart block of a DailySummary. Averages are absent iff
/// trip_count is zero.
struct DaypartStats {
    std::int64_t trip_count = 0;
    std::optional<double> avg_time_length_s;
    std::optional<double> avg_moves;
    std::optional<double> avg_stops;

    bool operator==(const DaypartStats&) const = default;
};

/// End-of-day aggregate: nine averages across three dayparts.
struct DailySummary {
    Date date;
    DaypartStats morning;
    DaypartStats afternoon;
    DaypartStats evening;

    const DaypartStats& part(Daypart d) const;
    DaypartStats& part(Daypart d);

    bool operator==(const DailySummary&) const = default;
};

inline DaypartStats& DailySummary::part(Daypart d) {
    switch (d) {
        case Daypart::kAfternoon: return afternoon;
        case Daypart::kEvening: return evening;
        default: return morning;  // kNone never stored; caller filters
    }
}

inline const DaypartStats& DailySummary::part(Daypart d) const {
    return const_cast<DailySummary*>(this)->part(d);
}

}  // namespace edgetransit::core
