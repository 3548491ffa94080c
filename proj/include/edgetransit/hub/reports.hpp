#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edgetransit/core/summary.hpp"

namespace edgetransit::hub {

struct ScheduleEntry {
    std::string route_name;
    core::Date date;
    core::TimeOfDay departure;

    bool operator==(const ScheduleEntry&) const = default;
};

/// CSV with header `route_name,date,departure_time`, times HH:MM.
/// Throws std::runtime_error on malformed input.
std::vector<ScheduleEntry> load_schedule_csv(const std::string& path);
std::vector<ScheduleEntry> parse_schedule_csv(std::string_view text);

/// Schedule entries with no trip summary on the same date within
/// +/- tolerance_min of the departure; each summary satisfies at most one
/// entry (greedy nearest-in-time pairing, deterministic tie-break).
/// Result keeps schedule order.
std::vector<ScheduleEntry> detect_missing_trips(std::span<const core::TripSummary> summaries,
                                                std::span<const ScheduleEntry> schedule,
                                                int tolerance_min = 20);

struct DailyReport {
    core::Date date;
    std::int64_t trip_count = 0;
    std::optional<double> avg_total_time_s;
    core::DailySummary recomputed;
    std::optional<core::DailySummary> edge_sent;
    /// True when edge_sent is present and every daypart matches the
    /// recomputation at wire precision.
    bool agrees_with_edge = false;
};

DailyReport daily_report(const core::Date& date, std::span<const core::TripSummary> summaries,
                         std::optional<core::DailySummary> edge_sent);

struct BoxplotStats {
    std::string label;
    double min = 0;  // whisker ends: most extreme non-outlier points
    double q1 = 0;
    double median = 0;
    double q3 = 0;
    double max = 0;
    std::vector<double> outliers;  // ascending
};

/// Tukey hinges (inclusive-median quartiles); outliers lie strictly outside
/// [q1 - 1.5*IQR, q3 + 1.5*IQR]. Throws std::invalid_argument on an empty
/// group.
BoxplotStats boxplot_stats(std::string label, std::vector<double> values);

struct BoxplotReport {
    std::vector<BoxplotStats> groups;
    std::vector<std::string> skipped;  // empty groups, noted not fatal
};

BoxplotReport boxplot(const std::map<std::string, std::vector<double>>& groups);

}  // namespace edgetransit::hub
