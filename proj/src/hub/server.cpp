#include "edgetransit/hub/server.hpp"

#include <stdexcept>

namespace edgetransit::hub {

HubServer::HubServer(const std::string& host, std::uint16_t port, MessageLog& log) : log_(log) {
    auto listener = net::TcpListener::bind(host, port);
    if (!listener) {
        throw std::runtime_error("hub: cannot bind " + host + ":" + std::to_string(port));
    }
    listener_ = std::move(*listener);
    acceptor_ = std::thread([this] { accept_loop(); });
}

HubServer::~HubServer() {
    stop();
    if (acceptor_.joinable()) acceptor_.join();
    std::lock_guard lock(workers_mutex_);
    for (std::thread& w : workers_) {
        if (w.joinable()) w.join();
    }
}

void HubServer::stop() { stopping_.store(true, std::memory_order_relaxed); }

HubCounters HubServer::counters() const {
    std::lock_guard lock(mutex_);
    return counters_;
}

void HubServer::accept_loop() {
    while (!stopping_.load(std::memory_order_relaxed)) {
        auto stream = listener_.accept(200);
        if (!stream) continue;
        std::lock_guard lock(workers_mutex_);
        workers_.emplace_back(
            [this, s = std::move(*stream)]() mutable { connection_loop(std::move(s)); });
    }
}

void HubServer::connection_loop(net::TcpStream stream) {
    net::LineReader reader(stream);
    std::string line;
    while (!stopping_.load(std::memory_order_relaxed)) {
        const net::LineResult rc = reader.read_line(line, 200);
        if (rc == net::LineResult::kTimeout) continue;
        if (rc != net::LineResult::kLine) return;
        if (line.empty()) continue;

        const wire::ParsedLine parsed = wire::parse_message_line(line);
        std::string reply;
        {
            std::lock_guard lock(mutex_);
            switch (parsed.status) {
                case wire::ParseStatus::kOk:
                    if (log_.append(parsed.message)) {
                        ++counters_.persisted;
                    } else {
                        ++counters_.duplicate_acks;
                    }
                    reply = wire::encode_ack(parsed.message.message_id) + "\n";
                    break;
                case wire::ParseStatus::kUnknownType:
                    ++counters_.unknown_type;
                    if (!parsed.message.message_id.empty()) {
                        reply = wire::encode_err(parsed.message.message_id) + "\n";
                    }
                    break;
                case wire::ParseStatus::kMalformed:
                    ++counters_.malformed_lines;
                    break;
            }
        }
        if (!reply.empty() && !stream.send_all(reply)) return;
    }
}

}  // namespace edgetransit::hub
