#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "edgetransit/core/avl.hpp"
#include "edgetransit/preprocess/alias_table.hpp"

namespace edgetransit::preprocess {

/// Per-trip accounting for the five cleaning steps.
struct CleaningReport {
    std::string trip_id;
    std::int64_t expected_slots = 0;
    std::int64_t observed_tuples = 0;
    std::int64_t missing_slots = 0;
    std::int64_t duplicates_removed = 0;
    std::int64_t tuples_dropped_missing_critical = 0;
    std::int64_t tuples_dropped_invalid_values = 0;
    std::int64_t fields_filled_na = 0;
    std::int64_t redundant_fields_removed = 0;
    std::int64_t values_standardized = 0;
    bool trip_dropped = false;

    bool operator==(const CleaningReport&) const = default;
};

enum class RecordOutcome { kKept, kDroppedMissingCritical, kDroppedInvalidValue };

bool is_critical_field(std::string_view name);

/// Removes every field whose name is outside the canonical schema.
/// Returns the number removed.
std::size_t strip_redundant_fields(core::RawRecord& rec);

/// Trims values, maps route_name / door_status / schedule_adherence through
/// the alias table (case-insensitive lookup), validates parseable fields.
/// A present-but-invalid critical value drops the record; an invalid
/// non-critical value becomes "N/A". `values_standardized` grows by the
/// number of fields whose stored value changed. Absent fields are left for
/// fill_or_drop_missing_fields.
RecordOutcome standardize_values(core::RawRecord& rec, const AliasTable& aliases,
                                 std::int64_t& values_standardized);

/// Absent critical field drops the record; absent non-critical fields are
/// filled with "N/A" (counted into `fields_filled_na`).
RecordOutcome fill_or_drop_missing_fields(core::RawRecord& rec, std::int64_t& fields_filled_na);

/// Parses a fully populated canonical record into a typed tuple.
std::optional<core::AvlTuple> tuple_from_record(const core::RawRecord& rec);

/// Steps 4 -> 5 -> 3 plus the typed parse, updating the report. Returns the
/// clean tuple or nullopt when the record was dropped.
std::optional<core::AvlTuple> clean_record(core::RawRecord rec, const AliasTable& aliases,
                                           CleaningReport& report);

/// Keeps the first tuple of every timestamp-equal run. Input must be sorted.
std::pair<std::vector<core::AvlTuple>, std::int64_t> dedupe(std::vector<core::AvlTuple> sorted);

struct SlotCount {
    std::int64_t expected_slots = 0;
    std::int64_t missing_slots = 0;
};

/// 5 s cadence grid from first to last observed timestamp; each tuple
/// occupies its nearest slot (integer timestamps are always within the
/// +/-2 s snap). Throws std::invalid_argument on an empty sequence.
SlotCount count_missing_slots(std::span<const core::AvlTuple> sorted_tuples);

/// True iff missing_slots >= 100.
bool should_drop_trip(const CleaningReport& report);

struct CleanTrip {
    std::vector<core::AvlTuple> tuples;
    CleaningReport report;
};

/// Full composition over one trip's raw records:
/// strip -> standardize -> fill-or-drop -> sort -> dedupe -> slot count ->
/// drop decision. A dropped trip yields an empty tuple sequence.
CleanTrip clean_trip(std::vector<core::RawRecord> records, const AliasTable& aliases);

}  // namespace edgetransit::preprocess
