#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "edgetransit/core/geo.hpp"
#include "edgetransit/core/time.hpp"

namespace edgetransit::core {

/// Sentinel written into non-critical fields whose value is missing.
inline constexpr std::string_view kNotAvailable = "N/A";

/// Canonical CSV column order. 18 columns carry the 17 logical fields
/// (position occupies the latitude and longitude columns).
inline constexpr std::array<std::string_view, 18> kCsvColumns = {
    "timestamp",    "latitude",      "longitude",     "route_name",  "trip_id",
    "trip_date",    "trip_start_time", "trip_finish_time", "vehicle_id", "driver_id",
    "heading",      "speed",         "odometer",      "door_status", "occupancy",
    "delay_seconds", "next_stop_id",  "schedule_adherence"};

inline constexpr std::size_t kLogicalFieldCount = 17;

bool is_canonical_column(std::string_view name);

/// One parsed-but-not-yet-cleaned record: column name -> raw cell text.
/// An empty value means the field is absent. Order is preserved.
struct RawRecord {
    std::vector<std::pair<std::string, std::string>> fields;

    std::string* find(std::string_view name);
    const std::string* find(std::string_view name) const;
    void set(std::string_view name, std::string value);
};

/// One clean telemetry tuple. The six analytics-critical fields are typed;
/// the remaining eleven are canonical strings and hold "N/A" when absent.
struct AvlTuple {
    std::int64_t timestamp_s = 0;  // UTC unix seconds
    GeoPoint position{0.0, 0.0};
    std::string route_name;
    std::string trip_id;
    Date trip_date;
    TimeOfDay trip_start_time;

    std::string trip_finish_time{kNotAvailable};
    std::string vehicle_id{kNotAvailable};
    std::string driver_id{kNotAvailable};
    std::string heading{kNotAvailable};
    std::string speed{kNotAvailable};
    std::string odometer{kNotAvailable};
    std::string door_status{kNotAvailable};
    std::string occupancy{kNotAvailable};
    std::string delay_seconds{kNotAvailable};
    std::string next_stop_id{kNotAvailable};
    std::string schedule_adherence{kNotAvailable};
};

/// Splits one CSV line on commas; no quoting (canonical AVL cells never
/// contain commas). Trailing \r is stripped.
std::vector<std::string> split_csv_line(std::string_view line);

std::string csv_header_line();

/// Serializes in canonical column order; latitude/longitude at 1e-7 deg.
std::string to_csv_row(const AvlTuple& t);

/// Pairs cells with header names positionally. Cells beyond the header get
/// synthetic "_extra<N>" names (stripped later as redundant). Returns
/// nullopt for structurally unusable lines (blank, or fewer cells than
/// headers when headers are canonical).
std::optional<RawRecord> record_from_cells(const std::vector<std::string>& header,
                                           const std::vector<std::string>& cells);

/// Record in canonical column order from a header-less (socket) row.
std::optional<RawRecord> record_from_canonical_cells(const std::vector<std::string>& cells);

RawRecord to_record(const AvlTuple& t);

}  // namespace edgetransit::core
