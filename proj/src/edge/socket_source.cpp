#include "edgetransit/edge/socket_source.hpp"

#include <stdexcept>

#include "edgetransit/preprocess/alias_table.hpp"

namespace edgetransit::edge {

SocketSource::SocketSource(const std::string& host, std::uint16_t port) {
    auto listener = net::TcpListener::bind(host, port);
    if (!listener) {
        throw std::runtime_error("socket source: cannot bind " + host + ":" +
                                 std::to_string(port));
    }
    listener_ = std::move(*listener);
    acceptor_ = std::thread([this] { accept_loop(); });
}

SocketSource::~SocketSource() {
    stop();
    if (acceptor_.joinable()) acceptor_.join();
    std::lock_guard lock(workers_mutex_);
    for (std::thread& w : workers_) {
        if (w.joinable()) w.join();
    }
}

void SocketSource::stop() {
    if (stopping_.exchange(true)) return;
    queue_cv_.notify_all();
}

void SocketSource::accept_loop() {
    while (!stopping_.load(std::memory_order_relaxed)) {
        auto stream = listener_.accept(200);
        if (!stream) continue;
        std::lock_guard lock(workers_mutex_);
        workers_.emplace_back(
            [this, s = std::move(*stream)]() mutable { connection_loop(std::move(s)); });
    }
}

void SocketSource::connection_loop(net::TcpStream stream) {
    net::LineReader reader(stream);
    std::string line;
    while (!stopping_.load(std::memory_order_relaxed)) {
        const net::LineResult rc = reader.read_line(line, 200);
        if (rc == net::LineResult::kTimeout) continue;
        if (rc == net::LineResult::kClosed || rc == net::LineResult::kError) {
            if (!reader.pending().empty()) {
                malformed_.fetch_add(1, std::memory_order_relaxed);  // partial final line
            }
            return;
        }
        if (preprocess::trim(line).empty()) continue;
        auto record = core::record_from_canonical_cells(core::split_csv_line(line));
        if (!record || record->fields.size() < core::kCsvColumns.size()) {
            malformed_.fetch_add(1, std::memory_order_relaxed);
            continue;
        }
        {
            std::lock_guard lock(mutex_);
            queue_.push_back(std::move(*record));
        }
        queue_cv_.notify_one();
    }
}

SourcePull SocketSource::next(int timeout_ms) {
    std::unique_lock lock(mutex_);
    const auto ready = [this] {
        return !queue_.empty() || stopping_.load(std::memory_order_relaxed);
    };
    if (timeout_ms < 0) {
        queue_cv_.wait(lock, ready);
    } else {
        queue_cv_.wait_for(lock, std::chrono::milliseconds(timeout_ms), ready);
    }
    if (!queue_.empty()) {
        SourcePull out{SourcePull::Kind::kRecord, std::move(queue_.front())};
        queue_.pop_front();
        return out;
    }
    if (stopping_.load(std::memory_order_relaxed)) {
        return SourcePull{SourcePull::Kind::kExhausted, {}};
    }
    return SourcePull{SourcePull::Kind::kTimeout, {}};
}

}  // namespace edgetransit::edge
