#include "edgetransit/hub/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "edgetransit/analytics/day_fold.hpp"
#include "edgetransit/core/avl.hpp"
#include "edgetransit/preprocess/alias_table.hpp"
#include "edgetransit/wire/wire.hpp"

namespace edgetransit::hub {

std::vector<ScheduleEntry> parse_schedule_csv(std::string_view text) {
    std::vector<ScheduleEntry> out;
    std::istringstream in{std::string(text)};
    std::string line;
    bool saw_header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (preprocess::trim(line).empty()) continue;
        const auto cells = core::split_csv_line(line);
        if (!saw_header) {
            if (cells.size() != 3 || preprocess::trim(cells[0]) != "route_name" ||
                preprocess::trim(cells[1]) != "date" ||
                preprocess::trim(cells[2]) != "departure_time") {
                throw std::runtime_error(
                    "schedule: expected header route_name,date,departure_time");
            }
            saw_header = true;
            continue;
        }
        if (cells.size() != 3) {
            throw std::runtime_error("schedule: line " + std::to_string(line_no) +
                                     ": expected 3 cells");
        }
        ScheduleEntry entry;
        entry.route_name = preprocess::trim(cells[0]);
        const auto date = core::parse_date(preprocess::trim(cells[1]));
        const auto departure = core::parse_time_of_day(preprocess::trim(cells[2]));
        if (entry.route_name.empty() || !date || !departure) {
            throw std::runtime_error("schedule: line " + std::to_string(line_no) +
                                     ": bad row '" + line + "'");
        }
        entry.date = *date;
        entry.departure = *departure;
        out.push_back(std::move(entry));
    }
    if (!saw_header) throw std::runtime_error("schedule: missing header");
    return out;
}

std::vector<ScheduleEntry> load_schedule_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("schedule: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_schedule_csv(buf.str());
}

std::vector<ScheduleEntry> detect_missing_trips(std::span<const core::TripSummary> summaries,
                                                std::span<const ScheduleEntry> schedule,
                                                int tolerance_min) {
    struct Candidate {
        std::int64_t distance_s;
        std::size_t schedule_idx;
        std::size_t summary_idx;
    };
    std::vector<Candidate> candidates;
    for (std::size_t si = 0; si < schedule.size(); ++si) {
        const ScheduleEntry& entry = schedule[si];
        for (std::size_t ti = 0; ti < summaries.size(); ++ti) {
            const core::TripSummary& trip = summaries[ti];
            if (trip.date != entry.date) continue;
            const std::int64_t distance =
                std::abs(static_cast<std::int64_t>(trip.start_time.seconds_of_day()) -
                         entry.departure.seconds_of_day());
            if (distance <= static_cast<std::int64_t>(tolerance_min) * 60) {
                candidates.push_back(Candidate{distance, si, ti});
            }
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.distance_s != b.distance_s) return a.distance_s < b.distance_s;
        if (a.schedule_idx != b.schedule_idx) return a.schedule_idx < b.schedule_idx;
        return a.summary_idx < b.summary_idx;
    });

    std::vector<bool> schedule_matched(schedule.size(), false);
    std::vector<bool> summary_used(summaries.size(), false);
    for (const Candidate& c : candidates) {
        if (schedule_matched[c.schedule_idx] || summary_used[c.summary_idx]) continue;
        schedule_matched[c.schedule_idx] = true;
        summary_used[c.summary_idx] = true;
    }

    std::vector<ScheduleEntry> missing;
    for (std::size_t si = 0; si < schedule.size(); ++si) {
        if (!schedule_matched[si]) missing.push_back(schedule[si]);
    }
    return missing;
}

namespace {

bool daypart_agrees(const core::DaypartStats& recomputed, const core::DaypartStats& sent) {
    if (recomputed.trip_count != sent.trip_count) return false;
    const auto same = [](const std::optional<double>& a, const std::optional<double>& b) {
        if (a.has_value() != b.has_value()) return false;
        return !a || wire::round1(*a) == wire::round1(*b);
    };
    return same(recomputed.avg_time_length_s, sent.avg_time_length_s) &&
           same(recomputed.avg_moves, sent.avg_moves) && same(recomputed.avg_stops, sent.avg_stops);
}

}  // namespace

DailyReport daily_report(const core::Date& date, std::span<const core::TripSummary> summaries,
                         std::optional<core::DailySummary> edge_sent) {
    DailyReport report;
    report.date = date;
    report.trip_count = static_cast<std::int64_t>(summaries.size());

    analytics::DayState day;
    day.date = date;
    std::int64_t total_time = 0;
    for (const core::TripSummary& trip : summaries) {
        analytics::fold_trip_into_day(day, trip);
        total_time += trip.total_time_length_s;
    }
    if (!summaries.empty()) {
        report.avg_total_time_s =
            static_cast<double>(total_time) / static_cast<double>(summaries.size());
    }
    report.recomputed = analytics::finalize_day(day);
    report.edge_sent = std::move(edge_sent);
    if (report.edge_sent) {
        report.agrees_with_edge = report.edge_sent->date == date;
        for (const core::Daypart part : core::kReportedDayparts) {
            report.agrees_with_edge =
                report.agrees_with_edge &&
                daypart_agrees(report.recomputed.part(part), report.edge_sent->part(part));
        }
    }
    return report;
}

namespace {

double median_of(std::span<const double> sorted) {
    const std::size_t n = sorted.size();
    if (n % 2 == 1) return sorted[n / 2];
    return (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
}

}  // namespace

BoxplotStats boxplot_stats(std::string label, std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("boxplot_stats: empty group");
    std::sort(values.begin(), values.end());
    BoxplotStats stats;
    stats.label = std::move(label);
    const std::size_t n = values.size();
    stats.median = median_of(values);
    const std::size_t half = (n + 1) / 2;  // inclusive method: odd n keeps the median in both halves
    stats.q1 = median_of(std::span<const double>(values.data(), half));
    stats.q3 = median_of(std::span<const double>(values.data() + (n - half), half));
    const double iqr = stats.q3 - stats.q1;
    const double lo_fence = stats.q1 - 1.5 * iqr;
    const double hi_fence = stats.q3 + 1.5 * iqr;

    stats.min = stats.median;
    stats.max = stats.median;
    bool any_inlier = false;
    for (const double v : values) {
        if (v < lo_fence || v > hi_fence) {
            stats.outliers.push_back(v);
            continue;
        }
        if (!any_inlier) {
            stats.min = v;
            stats.max = v;
            any_inlier = true;
        } else {
            stats.min = std::min(stats.min, v);
            stats.max = std::max(stats.max, v);
        }
    }
    return stats;
}

BoxplotReport boxplot(const std::map<std::string, std::vector<double>>& groups) {
    BoxplotReport report;
    for (const auto& [label, values] : groups) {
        if (values.empty()) {
            report.skipped.push_back(label);
            continue;
        }
        report.groups.push_back(boxplot_stats(label, values));
    }
    return report;
}

}  // namespace edgetransit::hub
