#include "edgetransit/wire/wire.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

#include "edgetransit/core/time.hpp"

namespace edgetransit::wire {

namespace {

using nlohmann::json;

// FNV-1a, 128-bit variant.
constexpr unsigned __int128 fnv128_prime() {
    return (static_cast<unsigned __int128>(1) << 88) | 0x13B;
}

constexpr unsigned __int128 fnv128_basis() {
    return (static_cast<unsigned __int128>(0x6C62272E07BB0142ULL) << 64) | 0x62B821756295C58DULL;
}

unsigned __int128 fnv1a128(std::string_view data, unsigned __int128 hash = fnv128_basis()) {
    for (const char c : data) {
        hash ^= static_cast<unsigned char>(c);
        hash *= fnv128_prime();
    }
    return hash;
}

std::string uuid_text(unsigned __int128 h) {
    unsigned char bytes[16];
    for (int i = 15; i >= 0; --i) {
        bytes[i] = static_cast<unsigned char>(h & 0xFF);
        h >>= 8;
    }
    bytes[6] = static_cast<unsigned char>(0x40 | (bytes[6] & 0x0F));  // version nibble
    bytes[8] = static_cast<unsigned char>(0x80 | (bytes[8] & 0x3F));  // variant bits
    char out[37];
    std::snprintf(out, sizeof out,
                  "%02x%02x%02x%02x-%02x%02x-%02x%02x-%02x%02x-%02x%02x%02x%02x%02x%02x",
                  bytes[0], bytes[1], bytes[2], bytes[3], bytes[4], bytes[5], bytes[6], bytes[7],
                  bytes[8], bytes[9], bytes[10], bytes[11], bytes[12], bytes[13], bytes[14],
                  bytes[15]);
    return out;
}

json daypart_block(const core::DaypartStats& s) {
    json block;
    block["trip_count"] = s.trip_count;
    if (s.avg_time_length_s) block["avg_time_length"] = round1(*s.avg_time_length_s);
    if (s.avg_moves) block["avg_moves"] = round1(*s.avg_moves);
    if (s.avg_stops) block["avg_stops"] = round1(*s.avg_stops);
    return block;
}

std::optional<core::DaypartStats> daypart_from_block(const json& block) {
    if (!block.is_object() || !block.contains("trip_count") ||
        !block["trip_count"].is_number_integer()) {
        return std::nullopt;
    }
    core::DaypartStats s;
    s.trip_count = block["trip_count"].get<std::int64_t>();
    if (s.trip_count < 0) return std::nullopt;
    const bool want_avgs = s.trip_count > 0;
    for (const char* key : {"avg_time_length", "avg_moves", "avg_stops"}) {
        if (block.contains(key) != want_avgs) return std::nullopt;
        if (want_avgs && !block[key].is_number()) return std::nullopt;
    }
    if (want_avgs) {
        s.avg_time_length_s = block["avg_time_length"].get<double>();
        s.avg_moves = block["avg_moves"].get<double>();
        s.avg_stops = block["avg_stops"].get<double>();
    }
    return s;
}

bool get_nonneg_int(const json& obj, const char* key, std::int64_t& out) {
    if (!obj.contains(key) || !obj[key].is_number_integer()) return false;
    out = obj[key].get<std::int64_t>();
    return out >= 0;
}

bool get_string(const json& obj, const char* key, std::string& out) {
    if (!obj.contains(key) || !obj[key].is_string()) return false;
    out = obj[key].get<std::string>();
    return true;
}

}  // namespace

double round1(double x) { return static_cast<double>(std::llround(x * 10.0)) / 10.0; }

json trip_payload(const core::TripSummary& s) {
    json payload;
    payload["trip_id"] = s.trip_id;
    payload["date"] = core::format_date(s.date);
    payload["start_time"] = core::format_time_of_day(s.start_time);
    payload["total_move"] = s.total_move;
    payload["total_stop"] = s.total_stop;
    payload["total_time_length"] = s.total_time_length_s;
    return payload;
}

json daily_payload(const core::DailySummary& s) {
    json payload;
    payload["date"] = core::format_date(s.date);
    payload["morning"] = daypart_block(s.morning);
    payload["afternoon"] = daypart_block(s.afternoon);
    payload["evening"] = daypart_block(s.evening);
    return payload;
}

std::optional<core::TripSummary> trip_from_payload(const json& payload) {
    if (!payload.is_object()) return std::nullopt;
    core::TripSummary s;
    std::string date_text;
    std::string time_text;
    if (!get_string(payload, "trip_id", s.trip_id) || s.trip_id.empty() ||
        !get_string(payload, "date", date_text) || !get_string(payload, "start_time", time_text) ||
        !get_nonneg_int(payload, "total_move", s.total_move) ||
        !get_nonneg_int(payload, "total_stop", s.total_stop) ||
        !get_nonneg_int(payload, "total_time_length", s.total_time_length_s)) {
        return std::nullopt;
    }
    const auto date = core::parse_date(date_text);
    const auto start = core::parse_time_of_day(time_text);
    if (!date || !start) return std::nullopt;
    s.date = *date;
    s.start_time = *start;
    return s;
}

std::optional<core::DailySummary> daily_from_payload(const json& payload) {
    if (!payload.is_object()) return std::nullopt;
    std::string date_text;
    if (!get_string(payload, "date", date_text)) return std::nullopt;
    const auto date = core::parse_date(date_text);
    if (!date) return std::nullopt;
    core::DailySummary s;
    s.date = *date;
    for (const core::Daypart part : core::kReportedDayparts) {
        const std::string key{core::daypart_name(part)};
        if (!payload.contains(key)) return std::nullopt;
        const auto stats = daypart_from_block(payload[key]);
        if (!stats) return std::nullopt;
        s.part(part) = *stats;
    }
    return s;
}

std::string deterministic_message_id(std::string_view type, const json& payload) {
    unsigned __int128 h = fnv1a128(type);
    h = fnv1a128("\n", h);
    h = fnv1a128(payload.dump(), h);
    return uuid_text(h);
}

Message make_trip_message(const core::TripSummary& s) {
    Message m;
    m.type = kTripSummaryType;
    m.payload = trip_payload(s);
    m.message_id = deterministic_message_id(m.type, m.payload);
    return m;
}

Message make_daily_message(const core::DailySummary& s) {
    Message m;
    m.type = kDailySummaryType;
    m.payload = daily_payload(s);
    m.message_id = deterministic_message_id(m.type, m.payload);
    return m;
}

std::string encode_message(const Message& m) {
    json line;
    line["type"] = m.type;
    line["message_id"] = m.message_id;
    line["schema_version"] = kSchemaVersion;
    line["payload"] = m.payload;
    return line.dump();
}

ParsedLine parse_message_line(std::string_view line) {
    ParsedLine out;
    const json parsed = json::parse(line, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) return out;

    if (parsed.contains("message_id") && parsed["message_id"].is_string()) {
        out.message.message_id = parsed["message_id"].get<std::string>();
    }
    std::string type;
    if (!get_string(parsed, "type", type) || out.message.message_id.empty() ||
        !parsed.contains("schema_version") || !parsed["schema_version"].is_number_integer() ||
        parsed["schema_version"].get<int>() != kSchemaVersion || !parsed.contains("payload")) {
        return out;
    }
    out.message.type = type;
    out.message.payload = parsed["payload"];

    if (type == kTripSummaryType) {
        if (!trip_from_payload(out.message.payload)) return out;
    } else if (type == kDailySummaryType) {
        if (!daily_from_payload(out.message.payload)) return out;
    } else {
        out.status = ParseStatus::kUnknownType;
        return out;
    }
    out.status = ParseStatus::kOk;
    return out;
}

std::string encode_ack(std::string_view message_id) {
    json line;
    line["ack"] = message_id;
    return line.dump();
}

std::string encode_err(std::string_view message_id) {
    json line;
    line["err"] = message_id;
    return line.dump();
}

std::optional<AckLine> parse_ack_line(std::string_view line) {
    const json parsed = json::parse(line, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) return std::nullopt;
    AckLine out;
    if (parsed.contains("ack") && parsed["ack"].is_string()) {
        out.ok = true;
        out.message_id = parsed["ack"].get<std::string>();
        return out;
    }
    if (parsed.contains("err") && parsed["err"].is_string()) {
        out.ok = false;
        out.message_id = parsed["err"].get<std::string>();
        return out;
    }
    return std::nullopt;
}

}  // namespace edgetransit::wire
