#include "edgetransit/hub/store.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "edgetransit/core/time.hpp"

namespace edgetransit::hub {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kPrefix = "messages-";
constexpr std::string_view kSuffix = ".ndjson";

std::optional<core::Date> date_of_log_name(const std::string& name) {
    if (name.size() != kPrefix.size() + 10 + kSuffix.size()) return std::nullopt;
    if (name.compare(0, kPrefix.size(), kPrefix) != 0) return std::nullopt;
    if (name.compare(name.size() - kSuffix.size(), kSuffix.size(), kSuffix) != 0) {
        return std::nullopt;
    }
    return core::parse_date(std::string_view(name).substr(kPrefix.size(), 10));
}

std::vector<wire::Message> read_log_file(const fs::path& path) {
    std::vector<wire::Message> out;
    std::ifstream in(path, std::ios::binary);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        wire::ParsedLine parsed = wire::parse_message_line(line);
        if (parsed.status == wire::ParseStatus::kOk) out.push_back(std::move(parsed.message));
    }
    return out;
}

}  // namespace

std::optional<core::Date> message_date(const wire::Message& message) {
    if (!message.payload.is_object() || !message.payload.contains("date") ||
        !message.payload["date"].is_string()) {
        return std::nullopt;
    }
    return core::parse_date(message.payload["date"].get<std::string>());
}

MessageLog::MessageLog(std::string data_dir) : data_dir_(std::move(data_dir)) {
    std::error_code ec;
    fs::create_directories(data_dir_, ec);
    if (!fs::is_directory(data_dir_)) {
        throw std::runtime_error("message log: cannot use directory " + data_dir_);
    }
    scan();
}

std::string MessageLog::log_path_for(const core::Date& date) const {
    return (fs::path(data_dir_) /
            (std::string(kPrefix) + core::format_date(date) + std::string(kSuffix)))
        .string();
}

void MessageLog::scan() {
    for (const auto& entry : fs::directory_iterator(data_dir_)) {
        if (!entry.is_regular_file()) continue;
        const auto date = date_of_log_name(entry.path().filename().string());
        if (!date) continue;
        const auto messages = read_log_file(entry.path());
        per_date_counts_[core::format_date(*date)] =
            static_cast<std::int64_t>(messages.size());
        for (const wire::Message& m : messages) ids_.insert(m.message_id);
    }
}

bool MessageLog::append(const wire::Message& message) {
    if (ids_.contains(message.message_id)) return false;
    const auto date = message_date(message);
    if (!date) throw std::runtime_error("message log: message without payload date");
    const std::string path = log_path_for(*date);
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw std::runtime_error("message log: cannot open " + path);
    out << wire::encode_message(message) << '\n';
    out.flush();
    if (!out) throw std::runtime_error("message log: write failed on " + path);
    ids_.insert(message.message_id);
    ++per_date_counts_[core::format_date(*date)];
    return true;
}

bool MessageLog::contains(const std::string& message_id) const {
    return ids_.contains(message_id);
}

std::vector<wire::Message> MessageLog::messages_for(const core::Date& date) const {
    return read_log_file(log_path_for(date));
}

std::vector<core::TripSummary> MessageLog::trips_for(const core::Date& date) const {
    std::vector<core::TripSummary> out;
    for (const wire::Message& m : messages_for(date)) {
        if (m.type != wire::kTripSummaryType) continue;
        if (auto trip = wire::trip_from_payload(m.payload)) out.push_back(std::move(*trip));
    }
    return out;
}

std::optional<core::DailySummary> MessageLog::daily_for(const core::Date& date) const {
    std::optional<core::DailySummary> out;
    for (const wire::Message& m : messages_for(date)) {
        if (m.type != wire::kDailySummaryType) continue;
        if (auto daily = wire::daily_from_payload(m.payload)) out = std::move(*daily);
    }
    return out;
}

std::vector<core::Date> MessageLog::dates() const {
    std::vector<core::Date> out;
    out.reserve(per_date_counts_.size());
    for (const auto& [text, count] : per_date_counts_) {
        if (count <= 0) continue;
        if (auto date = core::parse_date(text)) out.push_back(*date);
    }
    return out;  // map keys are ISO dates, already ascending
}

}  // namespace edgetransit::hub
