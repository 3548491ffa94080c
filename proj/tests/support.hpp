#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <unistd.h>

#include "edgetransit/edge/uplink.hpp"
#include "edgetransit/wire/wire.hpp"

namespace testsupport {

/// Unique per-test scratch directory, removed on destruction.
class TempDir {
  public:
    explicit TempDir(std::string_view tag) {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("edgetransit-" + std::string(tag) + "-" + std::to_string(::getpid()) + "-" +
                 std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path_);
    }

    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }

    const std::filesystem::path& path() const { return path_; }
    std::string str(std::string_view leaf = "") const {
        return leaf.empty() ? path_.string() : (path_ / leaf).string();
    }

  private:
    std::filesystem::path path_;
};

inline void write_text(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("write_text failed: " + path);
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_text failed: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// In-process sink capturing everything the pipeline emits, in order.
class CollectingSink final : public edgetransit::edge::MessageSink {
  public:
    void submit(edgetransit::wire::Message message) override {
        ++counters_.submitted;
        ++counters_.acked;
        messages.push_back(std::move(message));
    }

    bool drain(double) override { return true; }

    edgetransit::edge::SinkCounters counters() const override { return counters_; }

    std::vector<edgetransit::wire::Message> messages;

  private:
    edgetransit::edge::SinkCounters counters_;
};

inline std::vector<std::string> encode_all(
    const std::vector<edgetransit::wire::Message>& messages) {
    std::vector<std::string> lines;
    lines.reserve(messages.size());
    for (const auto& m : messages) lines.push_back(edgetransit::wire::encode_message(m));
    return lines;
}

}  // namespace testsupport
