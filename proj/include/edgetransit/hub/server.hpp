#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "edgetransit/hub/store.hpp"
#include "edgetransit/net/tcp.hpp"

namespace edgetransit::hub {

struct HubCounters {
    std::int64_t persisted = 0;
    std::int64_t duplicate_acks = 0;
    std::int64_t malformed_lines = 0;
    std::int64_t unknown_type = 0;
};

/// Accepts uplink connections, validates each NDJSON line, appends new
/// messages to the log (message_id dedup), and replies per line: ack for
/// persisted or duplicate messages, err for unknown types, silence for
/// malformed lines.
class HubServer {
  public:
    /// Throws std::runtime_error when the port cannot be bound.
    HubServer(const std::string& host, std::uint16_t port, MessageLog& log);
    ~HubServer();

    std::uint16_t port() const { return listener_.port(); }
    HubCounters counters() const;

    void stop();

  private:
    void accept_loop();
    void connection_loop(net::TcpStream stream);

    MessageLog& log_;
    net::TcpListener listener_;
    std::atomic<bool> stopping_{false};

    mutable std::mutex mutex_;  // serializes log appends and counters
    HubCounters counters_;

    std::thread acceptor_;
    std::mutex workers_mutex_;
    std::vector<std::thread> workers_;
};

}  // namespace edgetransit::hub
