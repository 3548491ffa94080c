#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace edgetransit::core {

/// Proleptic Gregorian calendar date.
struct Date {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    auto operator<=>(const Date&) const = default;
};

/// Time of day at 1 s resolution, 00:00:00 .. 23:59:59.
struct TimeOfDay {
    int hour = 0;
    int minute = 0;
    int second = 0;

    auto operator<=>(const TimeOfDay&) const = default;

    int seconds_of_day() const { return hour * 3600 + minute * 60 + second; }
};

/// Days since 1970-01-01 (Gregorian, negative before the epoch).
std::int64_t days_from_civil(const Date& d);
Date civil_from_days(std::int64_t days);

/// "YYYY-MM-DD"
std::optional<Date> parse_date(std::string_view s);
std::string format_date(const Date& d);

/// "HH:MM" or "HH:MM:SS"
std::optional<TimeOfDay> parse_time_of_day(std::string_view s);
std::string format_time_of_day(const TimeOfDay& t);

/// RFC 3339 UTC instant "YYYY-MM-DDTHH:MM:SSZ" -> unix seconds.
std::optional<std::int64_t> parse_rfc3339_utc(std::string_view s);
std::string format_rfc3339_utc(std::int64_t unix_s);

/// Fixed offset from UTC. Accepted spellings: "UTC", "Z", "+HH:MM",
/// "-HH:MM", "UTC+HH:MM", "UTC-HH:MM".
struct UtcOffset {
    int offset_s = 0;

    static std::optional<UtcOffset> parse(std::string_view s);
    std::string to_string() const;
};

struct LocalDateTime {
    Date date;
    TimeOfDay tod;
};

LocalDateTime to_local(std::int64_t unix_s, UtcOffset offset);

/// Unix seconds of local midnight of `date` under `offset`.
std::int64_t local_midnight_utc(const Date& date, UtcOffset offset);

}  // namespace edgetransit::core
