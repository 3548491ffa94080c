#include <chrono>
#include <csignal>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "edgetransit/hub/server.hpp"
#include "edgetransit/hub/store.hpp"
#include "edgetransit/net/tcp.hpp"

namespace {

volatile std::sig_atomic_t g_stop = 0;

void on_signal(int) { g_stop = 1; }

}  // namespace

int main(int argc, char** argv) {
    using namespace edgetransit;

    CLI::App app{"Hub: receives edge summaries and persists them per day"};
    std::string listen_endpoint;
    std::string data_dir;

    app.add_option("--listen", listen_endpoint, "Bind address host:port")->required();
    app.add_option("--data-dir", data_dir, "Directory for per-day message logs")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const auto endpoint = net::parse_host_port(listen_endpoint);
        if (!endpoint) throw std::runtime_error("bad --listen endpoint: " + listen_endpoint);
        hub::MessageLog log(data_dir);
        hub::HubServer server(endpoint->host, endpoint->port, log);
        std::cerr << "hub listening on " << endpoint->host << ':' << server.port() << " ("
                  << log.message_count() << " messages on disk)\n";

        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);
        while (!g_stop) {
            std::this_thread::sleep_for(std::chrono::milliseconds(200));
        }
        server.stop();

        const auto c = server.counters();
        std::cerr << "persisted=" << c.persisted << " duplicates=" << c.duplicate_acks
                  << " malformed=" << c.malformed_lines << " unknown_type=" << c.unknown_type
                  << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "hub: " << e.what() << '\n';
        return 1;
    }
}
