#include "edgetransit/edge/reorder.hpp"

#include <cmath>

namespace edgetransit::edge {

std::vector<ReorderBuffer::Item> ReorderBuffer::push(Item item) {
    if (last_released_ != INT64_MIN && item.timestamp_s < last_released_) {
        ++late_rejected_;
        return {};
    }
    held_.emplace(item.timestamp_s, std::move(item.record));
    if (item.timestamp_s > max_seen_) max_seen_ = item.timestamp_s;

    const std::int64_t watermark =
        max_seen_ - static_cast<std::int64_t>(std::llround(std::ceil(window_s_)));
    std::vector<Item> released;
    while (!held_.empty() && held_.begin()->first <= watermark) {
        auto node = held_.extract(held_.begin());
        last_released_ = node.key();
        released.push_back(Item{node.key(), std::move(node.mapped())});
    }
    return released;
}

std::vector<ReorderBuffer::Item> ReorderBuffer::flush() {
    std::vector<Item> released;
    released.reserve(held_.size());
    while (!held_.empty()) {
        auto node = held_.extract(held_.begin());
        last_released_ = node.key();
        released.push_back(Item{node.key(), std::move(node.mapped())});
    }
    return released;
}

}  // namespace edgetransit::edge
