#include "edgetransit/edge/replay.hpp"

#include <stdexcept>
#include <thread>

#include "edgetransit/core/time.hpp"
#include "edgetransit/preprocess/alias_table.hpp"

namespace edgetransit::edge {

namespace {

std::optional<std::int64_t> timestamp_of(const core::RawRecord& rec) {
    const std::string* cell = rec.find("timestamp");
    if (!cell) return std::nullopt;
    return core::parse_rfc3339_utc(preprocess::trim(*cell));
}

}  // namespace

ReplaySource::ReplaySource(const std::string& path, double speed)
    : in_(path, std::ios::binary), speed_(speed) {
    if (!in_) throw std::runtime_error("replay: cannot open " + path);
    std::string header_line;
    if (!std::getline(in_, header_line)) throw std::runtime_error("replay: empty file " + path);
    header_ = core::split_csv_line(header_line);
    if (header_.empty() || header_[0] != "timestamp") {
        throw std::runtime_error("replay: missing header row in " + path);
    }
}

bool ReplaySource::read_ahead() {
    std::string line;
    while (std::getline(in_, line)) {
        if (preprocess::trim(line).empty()) continue;
        auto record = core::record_from_cells(header_, core::split_csv_line(line));
        if (!record || record->fields.size() < header_.size()) {
            ++malformed_;
            continue;
        }
        pending_ = Pending{std::move(*record), std::nullopt};
        pending_->timestamp_s = timestamp_of(pending_->record);
        return true;
    }
    return false;
}

SourcePull ReplaySource::next(int timeout_ms) {
    using clock = std::chrono::steady_clock;
    if (exhausted_) return SourcePull{SourcePull::Kind::kExhausted, {}};

    if (!pending_) {
        if (!read_ahead()) {
            exhausted_ = true;
            return SourcePull{SourcePull::Kind::kExhausted, {}};
        }
        // Schedule the fresh record exactly once.
        if (speed_ > 0.0) {
            if (!due_valid_) {
                next_due_ = clock::now();
                due_valid_ = true;
            } else if (last_emitted_ts_ && pending_->timestamp_s &&
                       *pending_->timestamp_s > *last_emitted_ts_) {
                const double gap_s =
                    static_cast<double>(*pending_->timestamp_s - *last_emitted_ts_) / speed_;
                next_due_ += std::chrono::duration_cast<clock::duration>(
                    std::chrono::duration<double>(gap_s));
            }
            if (pending_->timestamp_s) last_emitted_ts_ = pending_->timestamp_s;
        }
    }

    if (speed_ > 0.0) {
        const auto now = clock::now();
        if (next_due_ > now) {
            const auto wait = next_due_ - now;
            if (timeout_ms >= 0 && wait > std::chrono::milliseconds(timeout_ms)) {
                std::this_thread::sleep_for(std::chrono::milliseconds(timeout_ms));
                return SourcePull{SourcePull::Kind::kTimeout, {}};
            }
            std::this_thread::sleep_for(wait);
        }
    }

    SourcePull out{SourcePull::Kind::kRecord, std::move(pending_->record)};
    pending_.reset();
    return out;
}

}  // namespace edgetransit::edge
