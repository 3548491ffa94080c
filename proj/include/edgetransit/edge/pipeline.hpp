#pragma once

#include <chrono>
#include <cstdint>

#include "edgetransit/analytics/day_fold.hpp"
#include "edgetransit/analytics/trip_fold.hpp"
#include "edgetransit/edge/config.hpp"
#include "edgetransit/edge/reorder.hpp"
#include "edgetransit/edge/source.hpp"
#include "edgetransit/edge/uplink.hpp"
#include "edgetransit/preprocess/cleaning.hpp"

namespace edgetransit::edge {

struct PipelineMetrics {
    std::int64_t tuples_in = 0;
    std::int64_t rows_skipped_malformed = 0;
    std::int64_t tuples_clean = 0;
    std::int64_t tuples_dropped_missing_critical = 0;
    std::int64_t tuples_dropped_invalid_values = 0;
    std::int64_t duplicates_removed = 0;
    std::int64_t late_tuples_dropped = 0;
    std::int64_t fields_filled_na = 0;
    std::int64_t redundant_fields_removed = 0;
    std::int64_t values_standardized = 0;
    std::int64_t trips_summarized = 0;
    std::int64_t trips_dropped = 0;
    std::int64_t days_summarized = 0;
    std::int64_t day_mismatch_trips = 0;
};

/// Single-writer streaming fold: reorder -> clean -> sessionize -> annotate
/// -> trip/day summaries -> sink. Trip boundaries are trip_id changes or
/// wall-clock idle; day boundaries are event-time rollover crossings.
class Pipeline {
  public:
    /// Loads the alias table when config.alias_file is set (throws on
    /// failure). The sink must outlive the pipeline.
    Pipeline(EdgeConfig config, MessageSink& sink);

    /// Consumes the source to exhaustion, flushes open trip and day, then
    /// drains the sink.
    void run(RecordSource& source);

    PipelineMetrics metrics() const;

  private:
    struct Session {
        bool open = false;
        analytics::TripState trip;
        std::int64_t first_ts = 0;
        std::int64_t last_ts = 0;
        std::int64_t last_slot = 0;
        std::int64_t occupied_slots = 0;
    };

    void on_record(core::RawRecord rec);
    void on_released(ReorderBuffer::Item item);
    void maybe_rollover(std::int64_t event_ts);
    void end_trip();
    void end_day();
    core::Date day_label(std::int64_t event_ts) const;

    EdgeConfig config_;
    MessageSink& sink_;
    preprocess::AliasTable aliases_;
    ReorderBuffer buffer_;
    PipelineMetrics metrics_;
    preprocess::CleaningReport cleaning_;  // stream-wide counter accumulation
    Session session_;
    analytics::DayState day_;
    bool day_open_ = false;
    std::chrono::steady_clock::time_point last_arrival_{};
};

}  // namespace edgetransit::edge
