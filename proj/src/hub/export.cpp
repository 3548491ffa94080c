#include "edgetransit/hub/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "edgetransit/core/time.hpp"

namespace edgetransit::hub {

namespace fs = std::filesystem;

namespace {

std::string fixed1(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

std::string opt1(const std::optional<double>& v) { return v ? fixed1(*v) : std::string{}; }

std::string write_atomically(const std::string& out_dir, const std::string& name,
                             const std::string& content) {
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path tmp = dir / (".tmp-" + name);
    const fs::path target = dir / name;
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("export: cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("export: write failed on " + tmp.string());
    }
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("export: cannot move into place: " + target.string());
    }
    return target.string();
}

void append_daypart_cells(std::string& row, const core::DaypartStats& stats) {
    row += ',' + std::to_string(stats.trip_count);
    row += ',' + opt1(stats.avg_time_length_s);
    row += ',' + opt1(stats.avg_moves);
    row += ',' + opt1(stats.avg_stops);
}

std::string svg_header(int width, int height) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
           " " + std::to_string(height) + "\">\n";
}

std::string svg_text(double x, double y, const std::string& body, int size = 12,
                     const char* anchor = "middle") {
    return "<text x=\"" + fixed1(x) + "\" y=\"" + fixed1(y) + "\" font-size=\"" +
           std::to_string(size) + "\" font-family=\"sans-serif\" text-anchor=\"" + anchor +
           "\">" + body + "</text>\n";
}

std::string svg_line(double x1, double y1, double x2, double y2) {
    return "<line x1=\"" + fixed1(x1) + "\" y1=\"" + fixed1(y1) + "\" x2=\"" + fixed1(x2) +
           "\" y2=\"" + fixed1(y2) + "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
}

std::string svg_rect(double x, double y, double w, double h, const char* fill) {
    return "<rect x=\"" + fixed1(x) + "\" y=\"" + fixed1(y) + "\" width=\"" + fixed1(w) +
           "\" height=\"" + fixed1(h) + "\" fill=\"" + fill + "\" stroke=\"#333\"/>\n";
}

std::string svg_circle(double cx, double cy) {
    return "<circle cx=\"" + fixed1(cx) + "\" cy=\"" + fixed1(cy) +
           "\" r=\"3\" fill=\"none\" stroke=\"#c33\"/>\n";
}

}  // namespace

std::string export_daily_csv(const std::vector<DailyReport>& days, const std::string& out_dir) {
    std::string content =
        "date,trip_count,avg_total_time"
        ",morning_trips,morning_avg_time,morning_avg_moves,morning_avg_stops"
        ",afternoon_trips,afternoon_avg_time,afternoon_avg_moves,afternoon_avg_stops"
        ",evening_trips,evening_avg_time,evening_avg_moves,evening_avg_stops"
        ",agrees_with_edge\n";
    for (const DailyReport& day : days) {
        std::string row = core::format_date(day.date);
        row += ',' + std::to_string(day.trip_count);
        row += ',' + opt1(day.avg_total_time_s);
        for (const core::Daypart part : core::kReportedDayparts) {
            append_daypart_cells(row, day.recomputed.part(part));
        }
        row += day.edge_sent ? (day.agrees_with_edge ? ",true" : ",false") : ",";
        content += row;
        content += '\n';
    }
    return write_atomically(out_dir, "daily_report.csv", content);
}

std::string export_missing_csv(const std::vector<ScheduleEntry>& missing,
                               const std::string& out_dir) {
    std::string content = "route_name,date,departure_time\n";
    for (const ScheduleEntry& entry : missing) {
        content += entry.route_name + ',' + core::format_date(entry.date) + ',' +
                   core::format_time_of_day(entry.departure) + '\n';
    }
    return write_atomically(out_dir, "missing_trips.csv", content);
}

std::string export_boxplot_csv(const BoxplotReport& report, const std::string& out_dir) {
    std::string content = "group,min,q1,median,q3,max,outliers\n";
    for (const BoxplotStats& g : report.groups) {
        std::string outliers;
        for (std::size_t i = 0; i < g.outliers.size(); ++i) {
            if (i) outliers += ';';
            outliers += fixed1(g.outliers[i]);
        }
        content += g.label + ',' + fixed1(g.min) + ',' + fixed1(g.q1) + ',' + fixed1(g.median) +
                   ',' + fixed1(g.q3) + ',' + fixed1(g.max) + ',' + outliers + '\n';
    }
    for (const std::string& label : report.skipped) {
        content += label + ",,,,,,\n";
    }
    return write_atomically(out_dir, "boxplot.csv", content);
}

std::string export_daily_svg(const std::vector<DailyReport>& days, const std::string& out_dir) {
    constexpr int kWidth = 800;
    constexpr int kHeight = 400;
    constexpr double kLeft = 60, kRight = 20, kTop = 30, kBottom = 50;
    std::string svg = svg_header(kWidth, kHeight);
    svg += svg_text(kWidth / 2.0, 20, "Trips per day", 14);
    if (days.empty()) {
        svg += svg_text(kWidth / 2.0, kHeight / 2.0, "no data");
        svg += "</svg>\n";
        return write_atomically(out_dir, "daily_report.svg", svg);
    }
    std::int64_t max_count = 1;
    for (const DailyReport& d : days) max_count = std::max(max_count, d.trip_count);
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const double slot = plot_w / static_cast<double>(days.size());
    const double bar_w = slot * 0.6;
    svg += svg_line(kLeft, kTop, kLeft, kTop + plot_h);
    svg += svg_line(kLeft, kTop + plot_h, kLeft + plot_w, kTop + plot_h);
    svg += svg_text(kLeft - 8, kTop + 4, std::to_string(max_count), 11, "end");
    svg += svg_text(kLeft - 8, kTop + plot_h + 4, "0", 11, "end");
    for (std::size_t i = 0; i < days.size(); ++i) {
        const double h =
            plot_h * static_cast<double>(days[i].trip_count) / static_cast<double>(max_count);
        const double x = kLeft + slot * static_cast<double>(i) + (slot - bar_w) / 2.0;
        svg += svg_rect(x, kTop + plot_h - h, bar_w, h, "#69b");
        svg += svg_text(x + bar_w / 2.0, kTop + plot_h + 16, core::format_date(days[i].date), 10);
        svg += svg_text(x + bar_w / 2.0, kTop + plot_h - h - 4,
                        std::to_string(days[i].trip_count), 10);
    }
    svg += "</svg>\n";
    return write_atomically(out_dir, "daily_report.svg", svg);
}

std::string export_boxplot_svg(const BoxplotReport& report, const std::string& out_dir) {
    constexpr int kWidth = 800;
    constexpr int kHeight = 400;
    constexpr double kLeft = 70, kRight = 20, kTop = 30, kBottom = 40;
    std::string svg = svg_header(kWidth, kHeight);
    svg += svg_text(kWidth / 2.0, 20, "Trip time distribution", 14);
    if (report.groups.empty()) {
        svg += svg_text(kWidth / 2.0, kHeight / 2.0, "no data");
        svg += "</svg>\n";
        return write_atomically(out_dir, "boxplot.svg", svg);
    }
    double lo = report.groups.front().min;
    double hi = report.groups.front().max;
    for (const BoxplotStats& g : report.groups) {
        lo = std::min(lo, g.min);
        hi = std::max(hi, g.max);
        for (const double v : g.outliers) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (hi <= lo) hi = lo + 1.0;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const auto y_of = [&](double v) { return kTop + plot_h * (1.0 - (v - lo) / (hi - lo)); };
    const double slot = plot_w / static_cast<double>(report.groups.size());
    const double box_w = std::min(80.0, slot * 0.5);
    svg += svg_line(kLeft, kTop, kLeft, kTop + plot_h);
    svg += svg_text(kLeft - 8, y_of(hi) + 4, fixed1(hi), 11, "end");
    svg += svg_text(kLeft - 8, y_of(lo) + 4, fixed1(lo), 11, "end");
    for (std::size_t i = 0; i < report.groups.size(); ++i) {
        const BoxplotStats& g = report.groups[i];
        const double cx = kLeft + slot * (static_cast<double>(i) + 0.5);
        svg += svg_line(cx, y_of(g.min), cx, y_of(g.q1));
        svg += svg_line(cx, y_of(g.q3), cx, y_of(g.max));
        svg += svg_line(cx - box_w / 4.0, y_of(g.min), cx + box_w / 4.0, y_of(g.min));
        svg += svg_line(cx - box_w / 4.0, y_of(g.max), cx + box_w / 4.0, y_of(g.max));
        svg += svg_rect(cx - box_w / 2.0, y_of(g.q3), box_w,
                        std::max(0.0, y_of(g.q1) - y_of(g.q3)), "#cde");
        svg += svg_line(cx - box_w / 2.0, y_of(g.median), cx + box_w / 2.0, y_of(g.median));
        for (const double v : g.outliers) svg += svg_circle(cx, y_of(v));
        svg += svg_text(cx, kTop + plot_h + 16, g.label, 11);
    }
    svg += "</svg>\n";
    return write_atomically(out_dir, "boxplot.svg", svg);
}

}  // namespace edgetransit::hub
