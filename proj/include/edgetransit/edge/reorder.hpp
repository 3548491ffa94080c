#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "edgetransit/core/avl.hpp"

namespace edgetransit::edge {

/// Event-time reorder stage. Arrivals are held until the watermark
/// (max timestamp seen minus the window) passes them, then released in
/// timestamp order, arrival order preserved among equal timestamps. An
/// arrival older than the newest already-released timestamp cannot be
/// re-sequenced and is rejected as late.
class ReorderBuffer {
  public:
    struct Item {
        std::int64_t timestamp_s = 0;
        core::RawRecord record;
    };

    explicit ReorderBuffer(double window_s) : window_s_(window_s) {}

    /// Returns the items this arrival released, in release order.
    std::vector<Item> push(Item item);

    /// Releases everything still held, in order.
    std::vector<Item> flush();

    std::size_t pending() const { return held_.size(); }
    std::int64_t late_rejected() const { return late_rejected_; }

  private:
    double window_s_;
    std::multimap<std::int64_t, core::RawRecord> held_;  // stable for equal keys
    std::int64_t max_seen_ = INT64_MIN;
    std::int64_t last_released_ = INT64_MIN;
    std::int64_t late_rejected_ = 0;
};

}  // namespace edgetransit::edge
