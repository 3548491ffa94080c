#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "edgetransit/core/summary.hpp"

namespace edgetransit::wire {

inline constexpr std::string_view kTripSummaryType = "trip_summary";
inline constexpr std::string_view kDailySummaryType = "daily_summary";
inline constexpr int kSchemaVersion = 1;

/// Wire precision for averages: one decimal place.
double round1(double x);

nlohmann::json trip_payload(const core::TripSummary& s);
nlohmann::json daily_payload(const core::DailySummary& s);

std::optional<core::TripSummary> trip_from_payload(const nlohmann::json& payload);
std::optional<core::DailySummary> daily_from_payload(const nlohmann::json& payload);

/// Content-addressed id: FNV-1a 128 over type + canonical payload text,
/// rendered as UUID text. Identical payloads (retransmissions included)
/// carry identical ids, so hub dedup and log byte-determinism hold.
std::string deterministic_message_id(std::string_view type, const nlohmann::json& payload);

struct Message {
    std::string type;
    std::string message_id;
    nlohmann::json payload;
};

Message make_trip_message(const core::TripSummary& s);
Message make_daily_message(const core::DailySummary& s);

/// One protocol line (no trailing newline), keys in canonical sorted order.
std::string encode_message(const Message& m);

enum class ParseStatus { kOk, kMalformed, kUnknownType };

struct ParsedLine {
    ParseStatus status = ParseStatus::kMalformed;
    Message message;  // populated when kOk; message_id best-effort on kUnknownType
};

ParsedLine parse_message_line(std::string_view line);

std::string encode_ack(std::string_view message_id);
std::string encode_err(std::string_view message_id);

struct AckLine {
    bool ok = false;  // true for ack, false for err
    std::string message_id;
};

std::optional<AckLine> parse_ack_line(std::string_view line);

}  // namespace edgetransit::wire
