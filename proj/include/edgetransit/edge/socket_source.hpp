#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "edgetransit/edge/source.hpp"
#include "edgetransit/net/tcp.hpp"

namespace edgetransit::edge {

/// Accepts newline-delimited header-less CSV rows (canonical column order)
/// from any number of peers. Per-connection line order is preserved; lines
/// from different peers interleave by arrival. stop() ends the stream: next()
/// drains what was queued, then reports exhaustion.
class SocketSource final : public RecordSource {
  public:
    /// Throws std::runtime_error when the port cannot be bound.
    SocketSource(const std::string& host, std::uint16_t port);
    ~SocketSource() override;

    SourcePull next(int timeout_ms) override;
    std::int64_t malformed_skipped() const override {
        return malformed_.load(std::memory_order_relaxed);
    }

    std::uint16_t port() const { return listener_.port(); }
    void stop();

  private:
    void accept_loop();
    void connection_loop(net::TcpStream stream);

    net::TcpListener listener_;
    std::atomic<bool> stopping_{false};
    std::atomic<std::int64_t> malformed_{0};

    std::mutex mutex_;
    std::condition_variable queue_cv_;
    std::deque<core::RawRecord> queue_;

    std::thread acceptor_;
    std::mutex workers_mutex_;
    std::vector<std::thread> workers_;
};

}  // namespace edgetransit::edge
