#include "edgetransit/preprocess/cleaning.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "edgetransit/core/time.hpp"

namespace edgetransit::preprocess {

namespace {

using core::AvlTuple;
using core::RawRecord;

bool parse_full_double(std::string_view s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end;
}

bool is_numeric(std::string_view s) {
    double ignored = 0.0;
    return parse_full_double(s, ignored);
}

bool is_aliased_field(std::string_view name) {
    return name == "route_name" || name == "door_status" || name == "schedule_adherence";
}

bool is_noncritical_numeric(std::string_view name) {
    return name == "heading" || name == "speed" || name == "odometer" || name == "occupancy" ||
           name == "delay_seconds";
}

}  // namespace

bool is_critical_field(std::string_view name) {
    return name == "timestamp" || name == "latitude" || name == "longitude" ||
           name == "route_name" || name == "trip_id" || name == "trip_date" ||
           name == "trip_start_time";
}

std::size_t strip_redundant_fields(RawRecord& rec) {
    const std::size_t before = rec.fields.size();
    std::erase_if(rec.fields, [](const auto& f) { return !core::is_canonical_column(f.first); });
    return before - rec.fields.size();
}

RecordOutcome standardize_values(RawRecord& rec, const AliasTable& aliases,
                                 std::int64_t& values_standardized) {
    for (auto& [name, value] : rec.fields) {
        if (!core::is_canonical_column(name)) continue;
        const std::string original = value;
        std::string v = trim(value);
        if (v.empty()) {
            value = std::move(v);
            continue;  // absent; fill_or_drop decides
        }
        if (name == "timestamp") {
            if (!core::parse_rfc3339_utc(v)) return RecordOutcome::kDroppedInvalidValue;
        } else if (name == "latitude" || name == "longitude") {
            double d = 0.0;
            if (!parse_full_double(v, d)) return RecordOutcome::kDroppedInvalidValue;
            const double limit = (name == "latitude") ? 90.0 : 180.0;
            if (!(d >= -limit && d <= limit)) return RecordOutcome::kDroppedInvalidValue;
        } else if (name == "trip_date") {
            if (!core::parse_date(v)) return RecordOutcome::kDroppedInvalidValue;
        } else if (name == "trip_start_time") {
            if (!core::parse_time_of_day(v)) return RecordOutcome::kDroppedInvalidValue;
        } else if (is_aliased_field(name)) {
            if (auto canonical = aliases.lookup(name, v)) v = *canonical;
        } else if (name == "trip_finish_time") {
            if (v != core::kNotAvailable && !core::parse_time_of_day(v)) {
                v = std::string(core::kNotAvailable);
            }
        } else if (is_noncritical_numeric(name)) {
            if (v != core::kNotAvailable && !is_numeric(v)) v = std::string(core::kNotAvailable);
        }
        if (v != original) ++values_standardized;
        value = std::move(v);
    }
    return RecordOutcome::kKept;
}

RecordOutcome fill_or_drop_missing_fields(RawRecord& rec, std::int64_t& fields_filled_na) {
    for (std::string_view name : core::kCsvColumns) {
        const std::string* v = rec.find(name);
        if (v != nullptr && !v->empty()) continue;
        if (is_critical_field(name)) return RecordOutcome::kDroppedMissingCritical;
        rec.set(name, std::string(core::kNotAvailable));
        ++fields_filled_na;
    }
    return RecordOutcome::kKept;
}

std::optional<AvlTuple> tuple_from_record(const RawRecord& rec) {
    const auto get = [&rec](std::string_view name) -> std::string_view {
        const std::string* v = rec.find(name);
        return v ? std::string_view(*v) : std::string_view{};
    };

    const auto timestamp = core::parse_rfc3339_utc(get("timestamp"));
    const auto date = core::parse_date(get("trip_date"));
    const auto start = core::parse_time_of_day(get("trip_start_time"));
    double lat = 0.0;
    double lon = 0.0;
    if (!timestamp || !date || !start || !parse_full_double(get("latitude"), lat) ||
        !parse_full_double(get("longitude"), lon)) {
        return std::nullopt;
    }
    const auto position = core::GeoPoint::try_make(lat, lon);
    if (!position) return std::nullopt;

    AvlTuple t;
    t.timestamp_s = *timestamp;
    t.position = *position;
    t.route_name = get("route_name");
    t.trip_id = get("trip_id");
    t.trip_date = *date;
    t.trip_start_time = *start;
    t.trip_finish_time = get("trip_finish_time");
    t.vehicle_id = get("vehicle_id");
    t.driver_id = get("driver_id");
    t.heading = get("heading");
    t.speed = get("speed");
    t.odometer = get("odometer");
    t.door_status = get("door_status");
    t.occupancy = get("occupancy");
    t.delay_seconds = get("delay_seconds");
    t.next_stop_id = get("next_stop_id");
    t.schedule_adherence = get("schedule_adherence");
    if (t.route_name.empty() || t.trip_id.empty()) return std::nullopt;
    return t;
}

std::optional<AvlTuple> clean_record(RawRecord rec, const AliasTable& aliases,
                                     CleaningReport& report) {
    report.redundant_fields_removed += static_cast<std::int64_t>(strip_redundant_fields(rec));
    if (standardize_values(rec, aliases, report.values_standardized) ==
        RecordOutcome::kDroppedInvalidValue) {
        ++report.tuples_dropped_invalid_values;
        return std::nullopt;
    }
    if (fill_or_drop_missing_fields(rec, report.fields_filled_na) ==
        RecordOutcome::kDroppedMissingCritical) {
        ++report.tuples_dropped_missing_critical;
        return std::nullopt;
    }
    auto tuple = tuple_from_record(rec);
    if (!tuple) {
        ++report.tuples_dropped_invalid_values;
        return std::nullopt;
    }
    if (report.trip_id.empty()) report.trip_id = tuple->trip_id;
    return tuple;
}

std::pair<std::vector<AvlTuple>, std::int64_t> dedupe(std::vector<AvlTuple> sorted) {
    std::vector<AvlTuple> out;
    out.reserve(sorted.size());
    std::int64_t removed = 0;
    for (auto& t : sorted) {
        if (!out.empty() && out.back().timestamp_s == t.timestamp_s) {
            ++removed;
            continue;
        }
        out.push_back(std::move(t));
    }
    return {std::move(out), removed};
}

SlotCount count_missing_slots(std::span<const AvlTuple> sorted_tuples) {
    if (sorted_tuples.empty()) {
        throw std::invalid_argument("count_missing_slots: empty tuple sequence");
    }
    const std::int64_t first = sorted_tuples.front().timestamp_s;
    const std::int64_t last = sorted_tuples.back().timestamp_s;
    const std::int64_t top = (last - first + 2) / 5;  // index of the last grid slot
    std::vector<char> occupied(static_cast<std::size_t>(top) + 1, 0);
    for (const AvlTuple& t : sorted_tuples) {
        std::int64_t slot = (t.timestamp_s - first + 2) / 5;  // nearest slot
        if (slot > top) slot = top;
        occupied[static_cast<std::size_t>(slot)] = 1;
    }
    const auto filled = std::count(occupied.begin(), occupied.end(), char{1});
    return SlotCount{top + 1, top + 1 - static_cast<std::int64_t>(filled)};
}

bool should_drop_trip(const CleaningReport& report) { return report.missing_slots >= 100; }

CleanTrip clean_trip(std::vector<RawRecord> records, const AliasTable& aliases) {
    CleanTrip result;
    CleaningReport& report = result.report;
    if (report.trip_id.empty()) {
        for (const RawRecord& rec : records) {
            if (const std::string* id = rec.find("trip_id"); id && !id->empty()) {
                report.trip_id = trim(*id);
                break;
            }
        }
    }

    std::vector<AvlTuple> tuples;
    tuples.reserve(records.size());
    for (RawRecord& rec : records) {
        if (auto t = clean_record(std::move(rec), aliases, report)) {
            tuples.push_back(std::move(*t));
        }
    }

    std::stable_sort(tuples.begin(), tuples.end(), [](const AvlTuple& a, const AvlTuple& b) {
        return a.timestamp_s < b.timestamp_s;
    });
    auto [deduped, removed] = dedupe(std::move(tuples));
    report.duplicates_removed = removed;
    report.observed_tuples = static_cast<std::int64_t>(deduped.size());
    if (!deduped.empty()) {
        const SlotCount slots = count_missing_slots(deduped);
        report.expected_slots = slots.expected_slots;
        report.missing_slots = slots.missing_slots;
    }
    report.trip_dropped = should_drop_trip(report);
    if (!report.trip_dropped) result.tuples = std::move(deduped);
    return result;
}

}  // namespace edgetransit::preprocess
