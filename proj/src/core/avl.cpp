#include "edgetransit/core/avl.hpp"

#include <algorithm>
#include <cstdio>

namespace edgetransit::core {

bool is_canonical_column(std::string_view name) {
    return std::find(kCsvColumns.begin(), kCsvColumns.end(), name) != kCsvColumns.end();
}

std::string* RawRecord::find(std::string_view name) {
    for (auto& [key, value] : fields) {
        if (key == name) return &value;
    }
    return nullptr;
}

const std::string* RawRecord::find(std::string_view name) const {
    for (const auto& [key, value] : fields) {
        if (key == name) return &value;
    }
    return nullptr;
}

void RawRecord::set(std::string_view name, std::string value) {
    if (std::string* slot = find(name)) {
        *slot = std::move(value);
        return;
    }
    fields.emplace_back(std::string(name), std::move(value));
}

std::vector<std::string> split_csv_line(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.emplace_back(line.substr(start));
            break;
        }
        cells.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return cells;
}

std::string csv_header_line() {
    std::string out;
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
        if (i != 0) out.push_back(',');
        out.append(kCsvColumns[i]);
    }
    return out;
}

namespace {

std::string format_coord(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.7f", value);
    return buf;
}

}  // namespace

std::string to_csv_row(const AvlTuple& t) {
    std::string out;
    out.reserve(160);
    out.append(format_rfc3339_utc(t.timestamp_s));
    out.push_back(',');
    out.append(format_coord(t.position.latitude()));
    out.push_back(',');
    out.append(format_coord(t.position.longitude()));
    out.push_back(',');
    out.append(t.route_name);
    out.push_back(',');
    out.append(t.trip_id);
    out.push_back(',');
    out.append(format_date(t.trip_date));
    out.push_back(',');
    out.append(format_time_of_day(t.trip_start_time));
    for (const std::string* s : {&t.trip_finish_time, &t.vehicle_id, &t.driver_id, &t.heading,
                                 &t.speed, &t.odometer, &t.door_status, &t.occupancy,
                                 &t.delay_seconds, &t.next_stop_id, &t.schedule_adherence}) {
        out.push_back(',');
        out.append(*s);
    }
    return out;
}

std::optional<RawRecord> record_from_cells(const std::vector<std::string>& header,
                                           const std::vector<std::string>& cells) {
    if (cells.empty() || (cells.size() == 1 && cells[0].empty())) return std::nullopt;
    RawRecord rec;
    rec.fields.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i < header.size()) {
            rec.fields.emplace_back(header[i], cells[i]);
        } else {
            rec.fields.emplace_back("_extra" + std::to_string(i - header.size()), cells[i]);
        }
    }
    return rec;
}

std::optional<RawRecord> record_from_canonical_cells(const std::vector<std::string>& cells) {
    static const std::vector<std::string> canonical(kCsvColumns.begin(), kCsvColumns.end());
    return record_from_cells(canonical, cells);
}

RawRecord to_record(const AvlTuple& t) {
    const std::vector<std::string> cells = split_csv_line(to_csv_row(t));
    RawRecord rec;
    rec.fields.reserve(kCsvColumns.size());
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
        rec.fields.emplace_back(std::string(kCsvColumns[i]), cells[i]);
    }
    return rec;
}

}  // namespace edgetransit::core
