#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "edgetransit/net/tcp.hpp"
#include "edgetransit/wire/wire.hpp"

namespace edgetransit::edge {

struct SinkCounters {
    std::int64_t submitted = 0;
    std::int64_t acked = 0;
    std::int64_t nacked = 0;
    std::int64_t evicted = 0;
    std::int64_t retransmissions = 0;
};

/// Where the pipeline hands finished summaries. Implementations must accept
/// submissions without blocking on network progress.
class MessageSink {
  public:
    virtual ~MessageSink() = default;
    virtual void submit(wire::Message message) = 0;

    /// Best-effort flush; true when nothing is left unacknowledged.
    virtual bool drain(double timeout_s) = 0;

    virtual SinkCounters counters() const = 0;
};

struct UplinkOptions {
    std::string host;
    std::uint16_t port = 0;
    std::int64_t buffer_capacity = 10'000;
    double backoff_base_s = 1.0;
    double backoff_cap_s = 60.0;
    int ack_timeout_ms = 5'000;
    int connect_timeout_ms = 2'000;
};

/// At-least-once sender: FIFO buffer (oldest evicted when full), one
/// in-flight message, exponential backoff between failed attempts, hub acks
/// confirm delivery. Owns a worker thread.
class UplinkClient final : public MessageSink {
  public:
    explicit UplinkClient(UplinkOptions options);
    ~UplinkClient() override;

    void submit(wire::Message message) override;
    bool drain(double timeout_s) override;
    SinkCounters counters() const override;

    void shutdown();

  private:
    void worker_loop();
    bool deliver_front();  // one attempt; true when acked, nacked, or idle
    void close_stream();

    UplinkOptions options_;
    mutable std::mutex mutex_;
    std::condition_variable wake_;
    std::condition_variable drained_;
    std::deque<wire::Message> queue_;
    SinkCounters counters_;
    std::atomic<bool> stopping_{false};
    int failed_attempts_ = 0;
    std::string last_sent_id_;
    net::TcpStream stream_;
    std::unique_ptr<net::LineReader> reader_;
    std::thread worker_;
};

}  // namespace edgetransit::edge
