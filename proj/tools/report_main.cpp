#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "edgetransit/core/time.hpp"
#include "edgetransit/hub/export.hpp"
#include "edgetransit/hub/reports.hpp"
#include "edgetransit/hub/store.hpp"

int main(int argc, char** argv) {
    using namespace edgetransit;

    CLI::App app{"Reports over persisted hub data"};
    std::string data_dir;
    std::string from_text;
    std::string to_text;
    std::string schedule_path;
    std::string format;
    std::string out_dir;

    app.add_option("--data-dir", data_dir, "Hub data directory")->required();
    app.add_option("--from", from_text, "First date, YYYY-MM-DD")->required();
    app.add_option("--to", to_text, "Last date, YYYY-MM-DD (inclusive)")->required();
    app.add_option("--schedule", schedule_path, "Planned departures csv")->required();
    app.add_option("--format", format, "csv or svg")
        ->required()
        ->check(CLI::IsMember({"csv", "svg"}));
    app.add_option("--out", out_dir, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const auto from = core::parse_date(from_text);
        const auto to = core::parse_date(to_text);
        if (!from || !to) throw std::runtime_error("dates must be YYYY-MM-DD");
        if (*to < *from) throw std::runtime_error("--to precedes --from");

        hub::MessageLog log(data_dir);
        const auto schedule = hub::load_schedule_csv(schedule_path);

        std::vector<hub::DailyReport> days;
        std::vector<core::TripSummary> all_trips;
        std::map<std::string, std::vector<double>> times_by_date;
        const std::int64_t first = core::days_from_civil(*from);
        const std::int64_t last = core::days_from_civil(*to);
        for (std::int64_t d = first; d <= last; ++d) {
            const auto date = core::civil_from_days(d);
            auto trips = log.trips_for(date);
            days.push_back(hub::daily_report(date, trips, log.daily_for(date)));
            auto& group = times_by_date[core::format_date(date)];
            for (auto& t : trips) {
                group.push_back(static_cast<double>(t.total_time_length_s));
                all_trips.push_back(std::move(t));
            }
        }

        std::vector<hub::ScheduleEntry> window;
        for (const auto& entry : schedule) {
            if (*from <= entry.date && entry.date <= *to) window.push_back(entry);
        }
        const auto missing = hub::detect_missing_trips(all_trips, window);
        const auto box = hub::boxplot(times_by_date);

        std::vector<std::string> written;
        written.push_back(hub::export_missing_csv(missing, out_dir));
        if (format == "csv") {
            written.push_back(hub::export_daily_csv(days, out_dir));
            written.push_back(hub::export_boxplot_csv(box, out_dir));
        } else {
            written.push_back(hub::export_daily_svg(days, out_dir));
            written.push_back(hub::export_boxplot_svg(box, out_dir));
        }
        for (const auto& path : written) std::cout << path << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "report: " << e.what() << '\n';
        return 1;
    }
}
