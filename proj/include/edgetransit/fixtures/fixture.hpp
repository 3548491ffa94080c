#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "edgetransit/core/geo.hpp"
#include "edgetransit/core/time.hpp"
#include "edgetransit/wire/wire.hpp"

namespace edgetransit::fixtures {

/// splitmix64. Hand-rolled so the same seed yields the same bytes on every
/// platform (std:: distributions are implementation-defined).
class DeterministicRng {
  public:
    explicit DeterministicRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    double next_unit();  // [0, 1)
    std::int64_t next_in(std::int64_t lo, std::int64_t hi);  // inclusive bounds
    bool chance(double p);

  private:
    std::uint64_t state_;
};

struct DwellEntry {
    std::int64_t offset_s = 0;
    std::int64_t dwell_s = 0;
};

struct FaultPlan {
    double duplicate_rate = 0.0;
    double drop_rate = 0.0;
    double reorder_rate = 0.0;
    std::int64_t reorder_max_lag_s = 10;
    double malformed_rate = 0.0;
    double blank_rate = 0.0;
    std::int64_t target_trip_index = -1;  // >= 0 selects a trip for slot drops
    std::int64_t target_drop_slots = 0;

    bool any() const;
};

struct FixtureSpec {
    std::uint64_t seed = 1;
    std::int64_t days = 1;
    core::Date start_date{2024, 2, 12};
    std::int64_t trips_morning = 2;
    std::int64_t trips_afternoon = 2;
    std::int64_t trips_evening = 1;
    std::int64_t trips_none = 0;  // hours 0-4; excluded from daypart averages
    std::int64_t trip_duration_mean_s = 3000;
    std::int64_t trip_duration_jitter_s = 300;
    std::string route_name = "51";
    std::vector<core::GeoPoint> route;  // empty = built-in ring polyline
    std::vector<DwellEntry> dwell{{100, 20}};
    std::int64_t dwell_repeat_every_s = 200;  // 0 = pattern applied once
    FaultPlan faults;

    /// Same key-value format as the edge config file. Polyline syntax
    /// `lat:lon;lat:lon;...`, dwell syntax `offset:dwell;...`.
    static FixtureSpec parse(std::string_view text);
    static FixtureSpec load(const std::string& path);
};

struct GeneratedFixture {
    std::string csv_path;
    std::string ground_truth_path;
    std::string schedule_path;
    std::vector<wire::Message> ground_truth;  // required emission order
    std::int64_t data_rows = 0;
    std::int64_t trips = 0;
};

/// Writes avl.csv, ground_truth.ndjson, and schedule.csv under out_dir.
/// Ground truth is a straight-line batch recount over the emitted rows;
/// the only shared logic is the distance kernel.
GeneratedFixture generate(const FixtureSpec& spec, const std::string& out_dir);

struct CorruptionManifest {
    std::int64_t duplicates = 0;
    std::int64_t dropped = 0;
    std::int64_t reordered = 0;
    std::int64_t malformed_inserted = 0;
    std::int64_t fields_blanked = 0;
    std::int64_t targeted_slot_drops = 0;
};

/// Rewrites a clean fixture CSV with injected faults. Deterministic for a
/// fixed (plan, seed). Reordering keeps every row within
/// plan.reorder_max_lag_s of its event-time position.
CorruptionManifest corrupt(const std::string& clean_csv, const std::string& out_csv,
                           const FaultPlan& plan, std::uint64_t seed);

}  // namespace edgetransit::fixtures
