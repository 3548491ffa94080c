#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "edgetransit/core/summary.hpp"
#include "edgetransit/wire/wire.hpp"

namespace edgetransit::hub {

/// Append-only NDJSON message log, one file per payload date, with an
/// in-memory message_id index rebuilt by scanning on open. Appends are
/// serialized; readers see a consistent snapshot via load functions.
class MessageLog {
  public:
    /// Creates data_dir if needed and scans existing log files.
    /// Throws std::runtime_error when the directory is unusable.
    explicit MessageLog(std::string data_dir);

    /// False when message_id was already persisted (dedup hit).
    /// Throws std::runtime_error on I/O failure.
    bool append(const wire::Message& message);

    bool contains(const std::string& message_id) const;
    std::size_t message_count() const { return ids_.size(); }

    /// All persisted messages of one payload date, in append order.
    std::vector<wire::Message> messages_for(const core::Date& date) const;

    std::vector<core::TripSummary> trips_for(const core::Date& date) const;

    /// The last stored daily_summary of that date, if any.
    std::optional<core::DailySummary> daily_for(const core::Date& date) const;

    /// Payload dates having at least one message, ascending.
    std::vector<core::Date> dates() const;

    std::string log_path_for(const core::Date& date) const;

  private:
    void scan();

    std::string data_dir_;
    std::unordered_set<std::string> ids_;
    std::map<std::string, std::int64_t> per_date_counts_;  // "YYYY-MM-DD" -> messages
};

/// Payload date of a validated wire message.
std::optional<core::Date> message_date(const wire::Message& message);

}  // namespace edgetransit::hub
