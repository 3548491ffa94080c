#include "edgetransit/core/time.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace edgetransit::core {

namespace {

bool parse_int_field(std::string_view s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) return false;
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    auto res = std::from_chars(s.data() + pos, s.data() + pos + len, out);
    return res.ec == std::errc{};
}

bool valid_date(const Date& d) {
    if (d.month < 1 || d.month > 12 || d.day < 1) return false;
    static const int days_in[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int dim = days_in[d.month - 1];
    bool leap = (d.year % 4 == 0 && d.year % 100 != 0) || d.year % 400 == 0;
    if (d.month == 2 && leap) dim = 29;
    return d.day <= dim;
}

}  // namespace

std::int64_t days_from_civil(const Date& d) {
    // Howard Hinnant's days_from_civil.
    std::int64_t y = d.year;
    y -= d.month <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy =
        (153u * static_cast<unsigned>(d.month + (d.month > 2 ? -3 : 9)) + 2u) / 5u +
        static_cast<unsigned>(d.day) - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

Date civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

std::optional<Date> parse_date(std::string_view s) {
    Date d;
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    if (!parse_int_field(s, 0, 4, d.year) || !parse_int_field(s, 5, 2, d.month) ||
        !parse_int_field(s, 8, 2, d.day)) {
        return std::nullopt;
    }
    if (!valid_date(d)) return std::nullopt;
    return d;
}

std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

std::optional<TimeOfDay> parse_time_of_day(std::string_view s) {
    TimeOfDay t;
    if (s.size() != 5 && s.size() != 8) return std::nullopt;
    if (s[2] != ':') return std::nullopt;
    if (!parse_int_field(s, 0, 2, t.hour) || !parse_int_field(s, 3, 2, t.minute)) {
        return std::nullopt;
    }
    if (s.size() == 8) {
        if (s[5] != ':' || !parse_int_field(s, 6, 2, t.second)) return std::nullopt;
    }
    if (t.hour > 23 || t.minute > 59 || t.second > 59) return std::nullopt;
    return t;
}

std::string format_time_of_day(const TimeOfDay& t) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%02d:%02d:%02d", t.hour, t.minute, t.second);
    return buf;
}

std::optional<std::int64_t> parse_rfc3339_utc(std::string_view s) {
    // Strict form: YYYY-MM-DDTHH:MM:SSZ
    if (s.size() != 20 || s[10] != 'T' || s[19] != 'Z') return std::nullopt;
    auto date = parse_date(s.substr(0, 10));
    auto tod = parse_time_of_day(s.substr(11, 8));
    if (!date || !tod) return std::nullopt;
    return days_from_civil(*date) * 86400 + tod->seconds_of_day();
}

std::string format_rfc3339_utc(std::int64_t unix_s) {
    std::int64_t days = unix_s / 86400;
    std::int64_t sod = unix_s % 86400;
    if (sod < 0) {
        sod += 86400;
        --days;
    }
    Date d = civil_from_days(days);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", d.year, d.month, d.day,
                  static_cast<int>(sod / 3600), static_cast<int>((sod / 60) % 60),
                  static_cast<int>(sod % 60));
    return buf;
}

std::optional<UtcOffset> UtcOffset::parse(std::string_view s) {
    if (s == "UTC" || s == "Z" || s == "utc" || s == "z") return UtcOffset{0};
    if (s.size() >= 3 && (s.substr(0, 3) == "UTC" || s.substr(0, 3) == "utc")) {
        s.remove_prefix(3);
    }
    if (s.size() != 6 || (s[0] != '+' && s[0] != '-') || s[3] != ':') return std::nullopt;
    int h = 0, m = 0;
    if (!parse_int_field(s, 1, 2, h) || !parse_int_field(s, 4, 2, m)) return std::nullopt;
    if (h > 14 || m > 59) return std::nullopt;
    int total = h * 3600 + m * 60;
    return UtcOffset{s[0] == '-' ? -total : total};
}

std::string UtcOffset::to_string() const {
    if (offset_s == 0) return "UTC";
    int a = offset_s < 0 ? -offset_s : offset_s;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "UTC%c%02d:%02d", offset_s < 0 ? '-' : '+', a / 3600,
                  (a / 60) % 60);
    return buf;
}

LocalDateTime to_local(std::int64_t unix_s, UtcOffset offset) {
    std::int64_t t = unix_s + offset.offset_s;
    std::int64_t days = t / 86400;
    std::int64_t sod = t % 86400;
    if (sod < 0) {
        sod += 86400;
        --days;
    }
    LocalDateTime out;
    out.date = civil_from_days(days);
    out.tod = TimeOfDay{static_cast<int>(sod / 3600), static_cast<int>((sod / 60) % 60),
                        static_cast<int>(sod % 60)};
    return out;
}

std::int64_t local_midnight_utc(const Date& date, UtcOffset offset) {
    return days_from_civil(date) * 86400 - offset.offset_s;
}

}  // namespace edgetransit::core
