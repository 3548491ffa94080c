#include "edgetransit/edge/pipeline.hpp"

#include <algorithm>

#include "edgetransit/core/time.hpp"

namespace edgetransit::edge {

using std::chrono::steady_clock;

Pipeline::Pipeline(EdgeConfig config, MessageSink& sink)
    : config_(std::move(config)), sink_(sink), buffer_(config_.reorder_window_s) {
    validate(config_);
    if (!config_.alias_file.empty()) {
        aliases_ = preprocess::AliasTable::from_csv_file(config_.alias_file);
    }
}

PipelineMetrics Pipeline::metrics() const {
    PipelineMetrics out = metrics_;
    out.tuples_dropped_missing_critical = cleaning_.tuples_dropped_missing_critical;
    out.tuples_dropped_invalid_values = cleaning_.tuples_dropped_invalid_values;
    out.duplicates_removed = cleaning_.duplicates_removed;
    out.fields_filled_na = cleaning_.fields_filled_na;
    out.redundant_fields_removed = cleaning_.redundant_fields_removed;
    out.values_standardized = cleaning_.values_standardized;
    return out;
}

core::Date Pipeline::day_label(std::int64_t event_ts) const {
    const core::LocalDateTime local = core::to_local(event_ts, config_.timezone);
    if (local.tod.seconds_of_day() < config_.day_rollover.seconds_of_day()) {
        return core::civil_from_days(core::days_from_civil(local.date) - 1);
    }
    return local.date;
}

void Pipeline::run(RecordSource& source) {
    last_arrival_ = steady_clock::now();
    const int poll_ms =
        std::clamp(static_cast<int>(config_.trip_idle_timeout_s * 250.0), 10, 200);
    while (true) {
        SourcePull pull = source.next(poll_ms);
        if (pull.kind == SourcePull::Kind::kExhausted) break;
        if (pull.kind == SourcePull::Kind::kTimeout) {
            const double idle_s =
                std::chrono::duration<double>(steady_clock::now() - last_arrival_).count();
            if (session_.open && idle_s >= config_.trip_idle_timeout_s) {
                for (auto& item : buffer_.flush()) on_released(std::move(item));
                end_trip();
            }
            continue;
        }
        last_arrival_ = steady_clock::now();
        on_record(std::move(pull.record));
    }
    for (auto& item : buffer_.flush()) on_released(std::move(item));
    end_trip();
    end_day();
    metrics_.rows_skipped_malformed = source.malformed_skipped();
    metrics_.late_tuples_dropped += buffer_.late_rejected();
    sink_.drain(config_.shutdown_drain_timeout_s);
}

void Pipeline::on_record(core::RawRecord rec) {
    ++metrics_.tuples_in;
    const std::string* cell = rec.find("timestamp");
    const std::string text = cell ? preprocess::trim(*cell) : std::string{};
    const auto ts = core::parse_rfc3339_utc(text);
    if (!ts) {
        if (text.empty()) {
            ++cleaning_.tuples_dropped_missing_critical;
        } else {
            ++cleaning_.tuples_dropped_invalid_values;
        }
        return;
    }
    for (auto& item : buffer_.push(ReorderBuffer::Item{*ts, std::move(rec)})) {
        on_released(std::move(item));
    }
}

void Pipeline::on_released(ReorderBuffer::Item item) {
    maybe_rollover(item.timestamp_s);
    auto tuple = preprocess::clean_record(std::move(item.record), aliases_, cleaning_);
    if (!tuple) return;

    if (session_.open && tuple->trip_id != session_.trip.trip_id) end_trip();
    if (session_.open) {
        if (tuple->timestamp_s == session_.last_ts) {
            ++cleaning_.duplicates_removed;
            return;
        }
        if (tuple->timestamp_s < session_.last_ts) {  // cannot happen post-buffer
            ++metrics_.late_tuples_dropped;
            return;
        }
    }

    if (!session_.open) {
        session_ = Session{};
        session_.open = true;
        session_.first_ts = tuple->timestamp_s;
        session_.last_slot = 0;
        session_.occupied_slots = 1;
    } else {
        const std::int64_t tol = config_.cadence_s / 2;
        const std::int64_t slot =
            (tuple->timestamp_s - session_.first_ts + tol) / config_.cadence_s;
        if (slot > session_.last_slot) {
            session_.last_slot = slot;
            ++session_.occupied_slots;
        }
    }
    analytics::annotate(session_.trip, *tuple, config_.stop_move_threshold_m);
    session_.last_ts = tuple->timestamp_s;
    ++metrics_.tuples_clean;
}

void Pipeline::maybe_rollover(std::int64_t event_ts) {
    const core::Date label = day_label(event_ts);
    if (!day_open_) {
        day_ = analytics::DayState{};
        day_.date = label;
        day_open_ = true;
        return;
    }
    if (label > day_.date) {
        end_trip();
        end_day();
        day_ = analytics::DayState{};
        day_.date = label;
        day_open_ = true;
    }
}

void Pipeline::end_trip() {
    if (!session_.open) return;
    const std::int64_t tol = config_.cadence_s / 2;
    const std::int64_t expected =
        (session_.last_ts - session_.first_ts + tol) / config_.cadence_s + 1;
    const std::int64_t missing = expected - session_.occupied_slots;
    if (missing >= config_.missing_slot_drop_threshold) {
        ++metrics_.trips_dropped;
        session_ = Session{};
        return;
    }
    const core::TripSummary summary = analytics::finalize_trip(session_.trip);
    ++metrics_.trips_summarized;
    if (day_open_ && summary.date == day_.date) {
        analytics::fold_trip_into_day(day_, summary);
    } else {
        ++metrics_.day_mismatch_trips;
    }
    sink_.submit(wire::make_trip_message(summary));
    session_ = Session{};
}

void Pipeline::end_day() {
    if (!day_open_) return;
    const core::DailySummary daily = analytics::finalize_day(day_);
    ++metrics_.days_summarized;
    sink_.submit(wire::make_daily_message(daily));
    day_open_ = false;
}

}  // namespace edgetransit::edge
