#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdint>
#include <iostream>
#include <memory>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "edgetransit/edge/config.hpp"
#include "edgetransit/edge/pipeline.hpp"
#include "edgetransit/edge/replay.hpp"
#include "edgetransit/edge/socket_source.hpp"
#include "edgetransit/edge/uplink.hpp"
#include "edgetransit/net/tcp.hpp"
#include "edgetransit/wire/wire.hpp"

namespace {

volatile std::sig_atomic_t g_stop = 0;

void on_signal(int) { g_stop = 1; }

/// Dry-run sink: summaries go to stdout as NDJSON instead of a hub.
class StdoutSink final : public edgetransit::edge::MessageSink {
  public:
    void submit(edgetransit::wire::Message message) override {
        std::cout << edgetransit::wire::encode_message(message) << '\n';
        ++counters_.submitted;
        ++counters_.acked;
    }

    bool drain(double) override {
        std::cout.flush();
        return true;
    }

    edgetransit::edge::SinkCounters counters() const override { return counters_; }

  private:
    edgetransit::edge::SinkCounters counters_;
};

void print_metrics(const edgetransit::edge::PipelineMetrics& m,
                   const edgetransit::edge::SinkCounters& s) {
    std::cerr << "tuples_in=" << m.tuples_in << " clean=" << m.tuples_clean
              << " malformed=" << m.rows_skipped_malformed
              << " dropped_missing_critical=" << m.tuples_dropped_missing_critical
              << " dropped_invalid=" << m.tuples_dropped_invalid_values
              << " duplicates=" << m.duplicates_removed << " late=" << m.late_tuples_dropped
              << '\n'
              << "trips_summarized=" << m.trips_summarized
              << " trips_dropped=" << m.trips_dropped << " days=" << m.days_summarized
              << " uplink_submitted=" << s.submitted << " acked=" << s.acked
              << " evicted=" << s.evicted << " retransmissions=" << s.retransmissions << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    using namespace edgetransit;

    CLI::App app{"Streaming AVL analytics edge node"};
    std::string config_path;
    std::string replay_path;
    std::string listen_endpoint;
    double speed = 1.0;

    app.add_option("--config", config_path, "Edge config file")->required();
    auto* replay_opt =
        app.add_option("--replay", replay_path, "Replay a recorded AVL csv file");
    auto* listen_opt = app.add_option("--listen", listen_endpoint,
                                      "Accept live NDCSV feeds on host:port");
    app.add_option("--speed", speed, "Replay speed multiplier; 0 = unpaced")
        ->needs(replay_opt);
    replay_opt->excludes(listen_opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (replay_path.empty() == listen_endpoint.empty()) {
            throw std::runtime_error("exactly one of --replay and --listen is required");
        }
        if (speed < 0.0) throw std::runtime_error("--speed must be >= 0");

        edge::EdgeConfig config = edge::load_edge_config(config_path);
        edge::apply_env_overrides(config);
        edge::validate(config);

        std::unique_ptr<edge::MessageSink> sink;
        if (config.hub_endpoint.empty()) {
            sink = std::make_unique<StdoutSink>();
        } else {
            const auto endpoint = net::parse_host_port(config.hub_endpoint);
            if (!endpoint) throw std::runtime_error("bad hub_endpoint: " + config.hub_endpoint);
            edge::UplinkOptions options;
            options.host = endpoint->host;
            options.port = endpoint->port;
            options.buffer_capacity = config.uplink_buffer_capacity;
            options.backoff_base_s = config.uplink_backoff_base_s;
            options.backoff_cap_s = config.uplink_backoff_cap_s;
            sink = std::make_unique<edge::UplinkClient>(options);
        }

        edge::Pipeline pipeline(config, *sink);
        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);

        if (!replay_path.empty()) {
            edge::ReplaySource source(replay_path, speed);
            pipeline.run(source);
        } else {
            const auto endpoint = net::parse_host_port(listen_endpoint);
            if (!endpoint) throw std::runtime_error("bad --listen endpoint: " + listen_endpoint);
            edge::SocketSource source(endpoint->host, endpoint->port);
            std::cerr << "edge listening on " << endpoint->host << ':' << source.port() << '\n';

            std::atomic<bool> done{false};
            std::thread watcher([&] {
                while (!done.load(std::memory_order_relaxed)) {
                    if (g_stop) {
                        source.stop();
                        break;
                    }
                    std::this_thread::sleep_for(std::chrono::milliseconds(100));
                }
            });
            pipeline.run(source);
            done.store(true, std::memory_order_relaxed);
            watcher.join();
        }

        print_metrics(pipeline.metrics(), sink->counters());
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "edge: " << e.what() << '\n';
        return 1;
    }
}
