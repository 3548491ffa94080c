#include "edgetransit/edge/uplink.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace edgetransit::edge {

using std::chrono::steady_clock;

UplinkClient::UplinkClient(UplinkOptions options) : options_(std::move(options)) {
    worker_ = std::thread([this] { worker_loop(); });
}

UplinkClient::~UplinkClient() { shutdown(); }

void UplinkClient::shutdown() {
    if (stopping_.exchange(true)) return;
    wake_.notify_all();
    drained_.notify_all();
    if (worker_.joinable()) worker_.join();
    close_stream();
}

void UplinkClient::submit(wire::Message message) {
    {
        std::lock_guard lock(mutex_);
        ++counters_.submitted;
        queue_.push_back(std::move(message));
        if (static_cast<std::int64_t>(queue_.size()) > options_.buffer_capacity) {
            queue_.pop_front();
            ++counters_.evicted;
        }
    }
    wake_.notify_all();
}

bool UplinkClient::drain(double timeout_s) {
    std::unique_lock lock(mutex_);
    wake_.notify_all();
    drained_.wait_for(lock, std::chrono::duration<double>(timeout_s), [this] {
        return queue_.empty() || stopping_.load(std::memory_order_relaxed);
    });
    return queue_.empty();
}

SinkCounters UplinkClient::counters() const {
    std::lock_guard lock(mutex_);
    return counters_;
}

void UplinkClient::close_stream() {
    reader_.reset();
    stream_.close();
}

void UplinkClient::worker_loop() {
    while (true) {
        {
            std::unique_lock lock(mutex_);
            wake_.wait(lock, [this] {
                return stopping_.load(std::memory_order_relaxed) || !queue_.empty();
            });
        }
        if (stopping_.load(std::memory_order_relaxed)) return;

        if (deliver_front()) {
            failed_attempts_ = 0;
            continue;
        }
        close_stream();
        ++failed_attempts_;
        const double delay = std::min(
            options_.backoff_cap_s,
            options_.backoff_base_s * std::pow(2.0, static_cast<double>(failed_attempts_ - 1)));
        std::unique_lock lock(mutex_);
        wake_.wait_for(lock, std::chrono::duration<double>(delay),
                       [this] { return stopping_.load(std::memory_order_relaxed); });
        if (stopping_.load(std::memory_order_relaxed)) return;
    }
}

bool UplinkClient::deliver_front() {
    wire::Message message;
    {
        std::lock_guard lock(mutex_);
        if (queue_.empty()) return true;
        message = queue_.front();
    }

    if (!stream_.valid()) {
        auto stream =
            net::TcpStream::connect(options_.host, options_.port, options_.connect_timeout_ms);
        if (!stream) return false;
        stream_ = std::move(*stream);
        reader_ = std::make_unique<net::LineReader>(stream_);
    }

    {
        std::lock_guard lock(mutex_);
        if (message.message_id == last_sent_id_) ++counters_.retransmissions;
        last_sent_id_ = message.message_id;
    }
    if (!stream_.send_all(wire::encode_message(message) + "\n")) return false;

    const auto deadline = steady_clock::now() + std::chrono::milliseconds(options_.ack_timeout_ms);
    std::string line;
    while (!stopping_.load(std::memory_order_relaxed)) {
        const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
            deadline - steady_clock::now());
        if (remaining.count() <= 0) return false;  // retransmit after backoff
        const net::LineResult rc = reader_->read_line(line, static_cast<int>(remaining.count()));
        if (rc == net::LineResult::kTimeout) return false;
        if (rc != net::LineResult::kLine) return false;  // closed or error
        const auto ack = wire::parse_ack_line(line);
        if (!ack || ack->message_id != message.message_id) continue;  // stale or junk
        std::lock_guard lock(mutex_);
        if (!queue_.empty() && queue_.front().message_id == message.message_id) {
            queue_.pop_front();
        }
        if (ack->ok) {
            ++counters_.acked;
        } else {
            ++counters_.nacked;
        }
        drained_.notify_all();
        return true;
    }
    return false;
}

}  // namespace edgetransit::edge
