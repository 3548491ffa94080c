#include "edgetransit/edge/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "edgetransit/net/tcp.hpp"
#include "edgetransit/preprocess/alias_table.hpp"

namespace edgetransit::edge {

namespace {

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
    throw std::runtime_error("config: bad value for " + std::string(key) + ": '" +
                             std::string(value) + "'");
}

double parse_double_or_throw(std::string_view key, std::string_view value) {
    double out = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end) bad_value(key, value);
    return out;
}

std::int64_t parse_int_or_throw(std::string_view key, std::string_view value) {
    std::int64_t out = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end) bad_value(key, value);
    return out;
}

void apply_key(EdgeConfig& config, std::string_view key, std::string_view value) {
    if (key == "stop_move_threshold_m") {
        config.stop_move_threshold_m = parse_double_or_throw(key, value);
    } else if (key == "cadence_s") {
        config.cadence_s = parse_int_or_throw(key, value);
    } else if (key == "missing_slot_drop_threshold") {
        config.missing_slot_drop_threshold = parse_int_or_throw(key, value);
    } else if (key == "trip_idle_timeout_s") {
        config.trip_idle_timeout_s = parse_double_or_throw(key, value);
    } else if (key == "reorder_window_s") {
        config.reorder_window_s = parse_double_or_throw(key, value);
    } else if (key == "day_rollover") {
        const auto tod = core::parse_time_of_day(value);
        if (!tod) bad_value(key, value);
        config.day_rollover = *tod;
    } else if (key == "timezone") {
        const auto tz = core::UtcOffset::parse(value);
        if (!tz) bad_value(key, value);
        config.timezone = *tz;
    } else if (key == "hub_endpoint") {
        config.hub_endpoint = std::string(value);
    } else if (key == "uplink_buffer_capacity") {
        config.uplink_buffer_capacity = parse_int_or_throw(key, value);
    } else if (key == "alias_file") {
        config.alias_file = std::string(value);
    } else if (key == "uplink_backoff_base_s") {
        config.uplink_backoff_base_s = parse_double_or_throw(key, value);
    } else if (key == "uplink_backoff_cap_s") {
        config.uplink_backoff_cap_s = parse_double_or_throw(key, value);
    } else if (key == "shutdown_drain_timeout_s") {
        config.shutdown_drain_timeout_s = parse_double_or_throw(key, value);
    } else {
        throw std::runtime_error("config: unknown key '" + std::string(key) + "'");
    }
}

constexpr const char* kKeys[] = {
    "stop_move_threshold_m", "cadence_s",         "missing_slot_drop_threshold",
    "trip_idle_timeout_s",   "reorder_window_s",  "day_rollover",
    "timezone",              "hub_endpoint",      "uplink_buffer_capacity",
    "alias_file",            "uplink_backoff_base_s", "uplink_backoff_cap_s",
    "shutdown_drain_timeout_s"};

}  // namespace

EdgeConfig parse_edge_config(std::string_view text) {
    EdgeConfig config;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        const std::string stripped = preprocess::trim(line);
        if (stripped.empty() || stripped[0] == '#' || stripped[0] == ';') continue;
        if (stripped.front() == '[' && stripped.back() == ']') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config: expected key = value, got '" + stripped + "'");
        }
        const std::string key = preprocess::trim(std::string_view(stripped).substr(0, eq));
        const std::string value = preprocess::trim(std::string_view(stripped).substr(eq + 1));
        apply_key(config, key, value);
    }
    return config;
}

EdgeConfig load_edge_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_edge_config(buf.str());
}

void apply_env_overrides(EdgeConfig& config, const EnvLookup& getter) {
    const auto get = getter ? getter : EnvLookup([](const char* name) { return std::getenv(name); });
    for (const char* key : kKeys) {
        std::string env_name = "EDGETRANSIT_";
        for (const char* p = key; *p != '\0'; ++p) {
            env_name.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(*p))));
        }
        if (const char* value = get(env_name.c_str())) {
            apply_key(config, key, preprocess::trim(value));
        }
    }
}

void validate(const EdgeConfig& config) {
    const auto require = [](bool ok, const char* what) {
        if (!ok) throw std::runtime_error(std::string("config: ") + what);
    };
    require(config.stop_move_threshold_m > 0, "stop_move_threshold_m must be > 0");
    require(config.cadence_s > 0, "cadence_s must be > 0");
    require(config.missing_slot_drop_threshold > 0, "missing_slot_drop_threshold must be > 0");
    require(config.trip_idle_timeout_s > 0, "trip_idle_timeout_s must be > 0");
    require(config.reorder_window_s > 0, "reorder_window_s must be > 0");
    require(config.reorder_window_s < config.trip_idle_timeout_s,
            "reorder_window_s must be < trip_idle_timeout_s");
    require(config.uplink_buffer_capacity > 0, "uplink_buffer_capacity must be > 0");
    require(config.uplink_backoff_base_s > 0, "uplink_backoff_base_s must be > 0");
    require(config.uplink_backoff_cap_s >= config.uplink_backoff_base_s,
            "uplink_backoff_cap_s must be >= uplink_backoff_base_s");
    require(config.shutdown_drain_timeout_s >= 0, "shutdown_drain_timeout_s must be >= 0");
    if (!config.hub_endpoint.empty() && !net::parse_host_port(config.hub_endpoint)) {
        throw std::runtime_error("config: hub_endpoint must be host:port, got '" +
                                 config.hub_endpoint + "'");
    }
}

}  // namespace edgetransit::edge
