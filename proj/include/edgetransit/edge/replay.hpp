#pragma once

#include <chrono>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "edgetransit/edge/source.hpp"

namespace edgetransit::edge {

/// File replay paced at recorded inter-arrival times divided by `speed`;
/// speed 0 replays as fast as possible. Throws std::runtime_error when the
/// file cannot be opened or has no header row.
class ReplaySource final : public RecordSource {
  public:
    ReplaySource(const std::string& path, double speed);

    SourcePull next(int timeout_ms) override;
    std::int64_t malformed_skipped() const override { return malformed_; }

  private:
    struct Pending {
        core::RawRecord record;
        std::optional<std::int64_t> timestamp_s;
    };

    bool read_ahead();  // fills pending_, skipping malformed rows

    std::ifstream in_;
    std::vector<std::string> header_;
    double speed_;
    std::int64_t malformed_ = 0;
    std::optional<Pending> pending_;
    std::optional<std::int64_t> last_emitted_ts_;
    std::chrono::steady_clock::time_point next_due_{};
    bool due_valid_ = false;
    bool exhausted_ = false;
};

}  // namespace edgetransit::edge
