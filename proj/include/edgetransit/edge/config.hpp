#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "edgetransit/core/time.hpp"

namespace edgetransit::edge {

struct EdgeConfig {
    double stop_move_threshold_m = 15.0;
    std::int64_t cadence_s = 5;
    std::int64_t missing_slot_drop_threshold = 100;
    double trip_idle_timeout_s = 120.0;
    double reorder_window_s = 15.0;
    core::TimeOfDay day_rollover{0, 0, 0};
    core::UtcOffset timezone{0};
    std::string hub_endpoint;  // empty = uplink disabled (dry runs)
    std::int64_t uplink_buffer_capacity = 10'000;
    std::string alias_file;  // empty = no alias table
    double uplink_backoff_base_s = 1.0;
    double uplink_backoff_cap_s = 60.0;
    double shutdown_drain_timeout_s = 10.0;
};

/// Key-value text, one `key = value` per line; `#`/`;` comments and
/// `[section]` headers tolerated. Unknown keys are errors. Throws
/// std::runtime_error with the offending line.
EdgeConfig parse_edge_config(std::string_view text);

EdgeConfig load_edge_config(const std::string& path);

using EnvLookup = std::function<const char*(const char*)>;

/// Applies EDGETRANSIT_<UPPERCASED_KEY> overrides; `getter` defaults to
/// std::getenv.
void apply_env_overrides(EdgeConfig& config, const EnvLookup& getter = {});

/// Throws std::runtime_error on violated invariants (non-positive
/// thresholds, reorder_window_s >= trip_idle_timeout_s, bad endpoint).
void validate(const EdgeConfig& config);

}  // namespace edgetransit::edge
