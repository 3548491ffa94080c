#include "edgetransit/fixtures/fixture.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "edgetransit/core/avl.hpp"
#include "edgetransit/core/distance_kernels.hpp"
#include "edgetransit/core/summary.hpp"

namespace fs = std::filesystem;

namespace edgetransit::fixtures {

std::uint64_t DeterministicRng::next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double DeterministicRng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::int64_t DeterministicRng::next_in(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("next_in: empty range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_u64() % span);
}

// Zero and one short-circuit without consuming a draw, so disabled fault
// passes leave the stream untouched.
bool DeterministicRng::chance(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return next_unit() < p;
}

bool FaultPlan::any() const {
    return duplicate_rate > 0.0 || drop_rate > 0.0 || reorder_rate > 0.0 ||
           malformed_rate > 0.0 || blank_rate > 0.0 || target_drop_slots > 0;
}

namespace {

constexpr std::int64_t kCadenceS = 5;
constexpr double kMovingSpeedMps = 8.0;  // 40 m per cadence step

// Daypart packing windows in seconds of day. Evening stops short of
// midnight so every trip closes inside its own calendar day.
struct Window {
    std::int64_t begin_s;
    std::int64_t end_s;
};
constexpr Window kNoneWindow{1800, 18000};       // 00:30 - 05:00
constexpr Window kMorningWindow{18000, 46800};   // 05:00 - 13:00
constexpr Window kAfternoonWindow{46800, 68400}; // 13:00 - 19:00
constexpr Window kEveningWindow{68400, 86340};   // 19:00 - 23:59

// Smooth 12-point ring (~680 m radius); gentle 30-degree turns keep every
// moving chord close to the 40 m path step, far from the 15 m threshold.
const std::vector<core::GeoPoint>& default_route() {
    static const std::vector<core::GeoPoint> ring = {
        {46.1010000, -64.7650000}, {46.1001962, -64.7605000}, {46.0980000, -64.7572057},
        {46.0950000, -64.7560000}, {46.0920000, -64.7572057}, {46.0898038, -64.7605000},
        {46.0890000, -64.7650000}, {46.0898038, -64.7695000}, {46.0920000, -64.7727943},
        {46.0950000, -64.7740000}, {46.0980000, -64.7727943}, {46.1001962, -64.7695000}};
    return ring;
}

std::string_view trimmed(std::string_view v) {
    while (!v.empty() && (v.front() == ' ' || v.front() == '\t' || v.front() == '\r')) {
        v.remove_prefix(1);
    }
    while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r')) {
        v.remove_suffix(1);
    }
    return v;
}

std::int64_t to_i64(std::string_view key, std::string_view value) {
    std::int64_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw std::invalid_argument("fixture spec: bad integer for " + std::string(key));
    }
    return out;
}

std::uint64_t to_u64(std::string_view key, std::string_view value) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw std::invalid_argument("fixture spec: bad unsigned for " + std::string(key));
    }
    return out;
}

double to_f64(std::string_view key, std::string_view value) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw std::invalid_argument("fixture spec: bad number for " + std::string(key));
    }
    return out;
}

std::vector<std::string_view> split_on(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

std::vector<core::GeoPoint> parse_route(std::string_view value) {
    std::vector<core::GeoPoint> pts;
    for (auto part : split_on(value, ';')) {
        part = trimmed(part);
        if (part.empty()) continue;
        const auto colon = part.find(':');
        if (colon == std::string_view::npos) {
            throw std::invalid_argument("fixture spec: route point needs lat:lon");
        }
        const double lat = to_f64("route", trimmed(part.substr(0, colon)));
        const double lon = to_f64("route", trimmed(part.substr(colon + 1)));
        const auto p = core::GeoPoint::try_make(lat, lon);
        if (!p) throw std::invalid_argument("fixture spec: route point out of range");
        pts.push_back(*p);
    }
    return pts;
}

std::vector<DwellEntry> parse_dwell(std::string_view value) {
    std::vector<DwellEntry> entries;
    for (auto part : split_on(value, ';')) {
        part = trimmed(part);
        if (part.empty()) continue;
        const auto colon = part.find(':');
        if (colon == std::string_view::npos) {
            throw std::invalid_argument("fixture spec: dwell entry needs offset:seconds");
        }
        entries.push_back({to_i64("dwell", trimmed(part.substr(0, colon))),
                           to_i64("dwell", trimmed(part.substr(colon + 1)))});
    }
    return entries;
}

// Closed polyline walk; positions interpolate linearly inside a segment,
// distance wraps modulo the loop length.
class PathWalk {
  public:
    explicit PathWalk(std::vector<core::GeoPoint> pts) : pts_(std::move(pts)) {
        if (pts_.empty()) throw std::invalid_argument("fixture route is empty");
        const std::size_t n = pts_.size();
        if (n == 1) return;
        seg_len_.resize(n);
        prefix_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            seg_len_[i] = core::great_circle_distance(pts_[i], pts_[(i + 1) % n]);
            prefix_[i] = total_;
            total_ += seg_len_[i];
        }
    }

    struct At {
        double lat;
        double lon;
        std::size_t seg;
    };

    At at(double dist) const {
        if (total_ <= 0.0 || pts_.size() == 1) {
            return {pts_[0].latitude(), pts_[0].longitude(), 0};
        }
        double d = std::fmod(dist, total_);
        if (d < 0.0) d += total_;
        const std::size_t n = pts_.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (seg_len_[i] <= 0.0) continue;
            if (d <= prefix_[i] + seg_len_[i] || i + 1 == n) {
                const double f = std::clamp((d - prefix_[i]) / seg_len_[i], 0.0, 1.0);
                const auto& a = pts_[i];
                const auto& b = pts_[(i + 1) % n];
                return {a.latitude() + f * (b.latitude() - a.latitude()),
                        a.longitude() + f * (b.longitude() - a.longitude()), i};
            }
        }
        return {pts_[0].latitude(), pts_[0].longitude(), 0};
    }

  private:
    std::vector<core::GeoPoint> pts_;
    std::vector<double> seg_len_;
    std::vector<double> prefix_;
    double total_ = 0.0;
};

// Dwell occurrences snapped to the cadence grid so move/stop transitions
// land exactly on sample boundaries; steps are then either a full 40 m or
// sub-2 m drift, never near the classification threshold.
std::vector<std::pair<std::int64_t, std::int64_t>> resolve_dwells(const FixtureSpec& spec,
                                                                  std::int64_t duration_s) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (const auto& entry : spec.dwell) {
        if (entry.dwell_s <= 0) continue;
        const std::int64_t len = std::max<std::int64_t>(
            kCadenceS, (entry.dwell_s + kCadenceS - 1) / kCadenceS * kCadenceS);
        for (std::int64_t occurrence = 0;; ++occurrence) {
            std::int64_t off = entry.offset_s + occurrence * spec.dwell_repeat_every_s;
            if (occurrence > 0 && spec.dwell_repeat_every_s <= 0) break;
            off = off / kCadenceS * kCadenceS;
            if (off >= duration_s) break;
            if (off >= kCadenceS && off + len <= duration_s - 2 * kCadenceS) {
                out.emplace_back(off, off + len);
            }
            if (spec.dwell_repeat_every_s <= 0) break;
        }
    }
    std::sort(out.begin(), out.end());
    std::vector<std::pair<std::int64_t, std::int64_t>> merged;
    for (const auto& iv : out) {
        if (!merged.empty() && iv.first < merged.back().second + kCadenceS) continue;
        merged.push_back(iv);
    }
    return merged;
}

std::int64_t moving_seconds(std::int64_t t,
                            const std::vector<std::pair<std::int64_t, std::int64_t>>& dwells) {
    std::int64_t moving = t;
    for (const auto& [s, e] : dwells) {
        if (t <= s) break;
        moving -= std::min(t, e) - s;
    }
    return moving;
}

bool in_dwell(std::int64_t t,
              const std::vector<std::pair<std::int64_t, std::int64_t>>& dwells) {
    for (const auto& [s, e] : dwells) {
        if (t < s) return false;
        if (t < e) return true;
    }
    return false;
}

// Coordinates are snapped through the CSV's own %.7f rendering before any
// distance math, so the ground truth sees exactly what a reader parses.
double snap7(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.7f", v);
    return std::strtod(buf, nullptr);
}

std::string fixed1(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

core::TimeOfDay tod_from_seconds(std::int64_t s) {
    return {static_cast<int>(s / 3600), static_cast<int>(s / 60 % 60), static_cast<int>(s % 60)};
}

std::string compact_date(const core::Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d%02d%02d", d.year, d.month, d.day);
    return buf;
}

struct TripPlan {
    std::string trip_id;
    core::Date date;
    std::int64_t start_of_day_s;
    std::int64_t duration_s;
};

core::TripSummary emit_trip(std::ofstream& csv, DeterministicRng& rng, const PathWalk& walk,
                            const FixtureSpec& spec, const TripPlan& plan,
                            std::int64_t midnight_utc, std::int64_t& rows_out) {
    const auto start_tod = tod_from_seconds(plan.start_of_day_s);
    const auto finish_tod = tod_from_seconds(plan.start_of_day_s + plan.duration_s);
    const auto dwells = resolve_dwells(spec, plan.duration_s);

    const std::int64_t vehicle = rng.next_in(1, 24);
    const std::int64_t driver = rng.next_in(1, 180);
    const std::int64_t occupancy = rng.next_in(5, 45);
    const std::int64_t delay = rng.next_in(-60, 300);

    std::vector<std::int64_t> offsets;
    for (std::int64_t t = 0; t <= plan.duration_s; t += kCadenceS) offsets.push_back(t);
    if (plan.duration_s % kCadenceS != 0) offsets.push_back(plan.duration_s);

    char small[32];
    std::snprintf(small, sizeof small, "bus-%02lld", static_cast<long long>(vehicle));
    const std::string vehicle_id = small;
    std::snprintf(small, sizeof small, "drv-%03lld", static_cast<long long>(driver));
    const std::string driver_id = small;
    const std::string adherence = delay > 120 ? "late" : (delay < -30 ? "early" : "on-time");

    std::vector<core::GeoPoint> positions;
    positions.reserve(offsets.size());
    std::int64_t last_ts = 0;
    for (const std::int64_t t : offsets) {
        const std::int64_t moved = moving_seconds(t, dwells);
        const double dist = kMovingSpeedMps * static_cast<double>(moved);
        const auto at = walk.at(dist);
        double lat = at.lat;
        double lon = at.lon;
        const bool dwelling = in_dwell(t, dwells);
        if (dwelling) {
            lat += (rng.next_unit() - 0.5) * 1e-5;
            lon += (rng.next_unit() - 0.5) * 1e-5;
        }

        core::AvlTuple tup;
        tup.timestamp_s = midnight_utc + plan.start_of_day_s + t;
        tup.position = core::GeoPoint(snap7(lat), snap7(lon));
        tup.route_name = spec.route_name;
        tup.trip_id = plan.trip_id;
        tup.trip_date = plan.date;
        tup.trip_start_time = start_tod;
        tup.trip_finish_time = core::format_time_of_day(finish_tod);
        tup.vehicle_id = vehicle_id;
        tup.driver_id = driver_id;
        tup.heading = std::to_string(at.seg * 30 % 360);
        tup.speed = dwelling ? "0.0" : "8.0";
        tup.odometer = fixed1(dist);
        tup.door_status = dwelling ? "open" : "closed";
        tup.occupancy = std::to_string(occupancy);
        tup.delay_seconds = std::to_string(delay);
        tup.next_stop_id = "stop-" + std::to_string(at.seg + 1);
        tup.schedule_adherence = adherence;

        csv << core::to_csv_row(tup) << '\n';
        ++rows_out;
        positions.push_back(tup.position);
        last_ts = tup.timestamp_s;
    }

    // Batch recount over the emitted coordinates; the threshold compare is
    // written out here on purpose so only the distance kernel is shared.
    std::int64_t moves = 0;
    std::int64_t stops = 1;  // a trip's first tuple has no predecessor
    if (positions.size() >= 2) {
        std::vector<double> steps(positions.size() - 1);
        core::path_step_distances(positions, steps);
        for (const double step : steps) {
            if (step < core::kStopMoveThresholdM) {
                ++stops;
            } else {
                ++moves;
            }
        }
    }

    core::TripSummary summary;
    summary.trip_id = plan.trip_id;
    summary.date = plan.date;
    summary.start_time = start_tod;
    summary.total_move = moves;
    summary.total_stop = stops;
    summary.total_time_length_s = last_ts - (midnight_utc + plan.start_of_day_s);
    return summary;
}

core::DailySummary daily_from_trips(const core::Date& date,
                                    const std::vector<core::TripSummary>& trips) {
    std::array<std::int64_t, 3> sum_time{}, sum_moves{}, sum_stops{}, count{};
    for (const auto& t : trips) {
        const int h = t.start_time.hour;
        int idx = -1;
        if (h >= 5 && h <= 12) idx = 0;
        if (h >= 13 && h <= 18) idx = 1;
        if (h >= 19 && h <= 23) idx = 2;
        if (idx < 0) continue;  // small-hours trips carry no daypart average
        count[idx] += 1;
        sum_time[idx] += t.total_time_length_s;
        sum_moves[idx] += t.total_move;
        sum_stops[idx] += t.total_stop;
    }
    core::DailySummary day;
    day.date = date;
    core::DaypartStats* blocks[3] = {&day.morning, &day.afternoon, &day.evening};
    for (int i = 0; i < 3; ++i) {
        blocks[i]->trip_count = count[i];
        if (count[i] > 0) {
            blocks[i]->avg_time_length_s = static_cast<double>(sum_time[i]) / count[i];
            blocks[i]->avg_moves = static_cast<double>(sum_moves[i]) / count[i];
            blocks[i]->avg_stops = static_cast<double>(sum_stops[i]) / count[i];
        }
    }
    return day;
}

}  // namespace

FixtureSpec FixtureSpec::parse(std::string_view text) {
    FixtureSpec spec;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        line = trimmed(line);
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;
        if (line.front() == '[' && line.back() == ']') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("fixture spec: expected key=value, got: " +
                                        std::string(line));
        }
        const auto key = trimmed(line.substr(0, eq));
        const auto value = trimmed(line.substr(eq + 1));

        if (key == "seed") {
            spec.seed = to_u64(key, value);
        } else if (key == "days") {
            spec.days = to_i64(key, value);
        } else if (key == "start_date") {
            const auto d = core::parse_date(value);
            if (!d) throw std::invalid_argument("fixture spec: bad start_date");
            spec.start_date = *d;
        } else if (key == "trips_morning") {
            spec.trips_morning = to_i64(key, value);
        } else if (key == "trips_afternoon") {
            spec.trips_afternoon = to_i64(key, value);
        } else if (key == "trips_evening") {
            spec.trips_evening = to_i64(key, value);
        } else if (key == "trips_none") {
            spec.trips_none = to_i64(key, value);
        } else if (key == "trip_duration_mean_s") {
            spec.trip_duration_mean_s = to_i64(key, value);
        } else if (key == "trip_duration_jitter_s") {
            spec.trip_duration_jitter_s = to_i64(key, value);
        } else if (key == "route_name") {
            spec.route_name = std::string(value);
        } else if (key == "route") {
            spec.route = parse_route(value);
        } else if (key == "dwell") {
            spec.dwell = parse_dwell(value);
        } else if (key == "dwell_repeat_every_s") {
            spec.dwell_repeat_every_s = to_i64(key, value);
        } else if (key == "fault_duplicate_rate") {
            spec.faults.duplicate_rate = to_f64(key, value);
        } else if (key == "fault_drop_rate") {
            spec.faults.drop_rate = to_f64(key, value);
        } else if (key == "fault_reorder_rate") {
            spec.faults.reorder_rate = to_f64(key, value);
        } else if (key == "fault_reorder_max_lag_s") {
            spec.faults.reorder_max_lag_s = to_i64(key, value);
        } else if (key == "fault_malformed_rate") {
            spec.faults.malformed_rate = to_f64(key, value);
        } else if (key == "fault_blank_rate") {
            spec.faults.blank_rate = to_f64(key, value);
        } else if (key == "fault_target_trip") {
            spec.faults.target_trip_index = to_i64(key, value);
        } else if (key == "fault_target_drop_slots") {
            spec.faults.target_drop_slots = to_i64(key, value);
        } else {
            throw std::invalid_argument("fixture spec: unknown key: " + std::string(key));
        }
    }
    return spec;
}

FixtureSpec FixtureSpec::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open fixture spec: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

GeneratedFixture generate(const FixtureSpec& spec, const std::string& out_dir) {
    if (spec.days < 1) throw std::invalid_argument("fixture spec: days must be >= 1");
    if (spec.trips_morning < 0 || spec.trips_afternoon < 0 || spec.trips_evening < 0 ||
        spec.trips_none < 0) {
        throw std::invalid_argument("fixture spec: trip counts must be >= 0");
    }
    if (spec.trip_duration_mean_s < 60) {
        throw std::invalid_argument("fixture spec: trip_duration_mean_s must be >= 60");
    }
    if (spec.trip_duration_jitter_s < 0) {
        throw std::invalid_argument("fixture spec: trip_duration_jitter_s must be >= 0");
    }

    fs::create_directories(out_dir);
    GeneratedFixture out;
    out.csv_path = (fs::path(out_dir) / "avl.csv").string();
    out.ground_truth_path = (fs::path(out_dir) / "ground_truth.ndjson").string();
    out.schedule_path = (fs::path(out_dir) / "schedule.csv").string();

    std::ofstream csv(out.csv_path, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + out.csv_path);
    csv << core::csv_header_line() << '\n';

    std::ofstream schedule(out.schedule_path, std::ios::binary);
    if (!schedule) throw std::runtime_error("cannot write " + out.schedule_path);
    schedule << "route_name,date,departure_time\n";

    DeterministicRng rng(spec.seed);
    PathWalk walk(spec.route.empty() ? default_route() : spec.route);

    const std::array<std::pair<Window, std::int64_t>, 4> parts = {{
        {kNoneWindow, spec.trips_none},
        {kMorningWindow, spec.trips_morning},
        {kAfternoonWindow, spec.trips_afternoon},
        {kEveningWindow, spec.trips_evening},
    }};

    const std::int64_t first_day = core::days_from_civil(spec.start_date);
    for (std::int64_t d = 0; d < spec.days; ++d) {
        const core::Date date = core::civil_from_days(first_day + d);
        const std::int64_t midnight_utc = (first_day + d) * 86400;
        std::vector<core::TripSummary> day_trips;
        std::int64_t seq = 0;

        for (const auto& [window, trip_count] : parts) {
            if (trip_count == 0) continue;
            const std::int64_t width = (window.end_s - window.begin_s) / trip_count;
            if (width < 180) {
                throw std::invalid_argument("fixture spec: too many trips for a daypart window");
            }
            for (std::int64_t i = 0; i < trip_count; ++i) {
                std::int64_t duration = spec.trip_duration_mean_s;
                if (spec.trip_duration_jitter_s > 0) {
                    duration += rng.next_in(-spec.trip_duration_jitter_s,
                                            spec.trip_duration_jitter_s);
                }
                duration = std::clamp<std::int64_t>(duration, 60, width - 120);
                const std::int64_t head =
                    rng.next_in(0, std::min<std::int64_t>(60, width - duration - 60));

                TripPlan plan;
                plan.date = date;
                plan.start_of_day_s = window.begin_s + i * width + head;
                plan.duration_s = duration;
                char id[32];
                std::snprintf(id, sizeof id, "t%s-%03lld", compact_date(date).c_str(),
                              static_cast<long long>(++seq));
                plan.trip_id = id;

                const auto summary =
                    emit_trip(csv, rng, walk, spec, plan, midnight_utc, out.data_rows);
                out.ground_truth.push_back(wire::make_trip_message(summary));
                day_trips.push_back(summary);
                ++out.trips;

                const auto dep = tod_from_seconds(plan.start_of_day_s);
                char hm[8];
                std::snprintf(hm, sizeof hm, "%02d:%02d", dep.hour, dep.minute);
                schedule << spec.route_name << ',' << core::format_date(date) << ',' << hm
                         << '\n';
            }
        }

        if (!day_trips.empty()) {
            out.ground_truth.push_back(wire::make_daily_message(daily_from_trips(date, day_trips)));
        }
    }

    std::ofstream truth(out.ground_truth_path, std::ios::binary);
    if (!truth) throw std::runtime_error("cannot write " + out.ground_truth_path);
    for (const auto& message : out.ground_truth) {
        truth << wire::encode_message(message) << '\n';
    }

    csv.flush();
    schedule.flush();
    truth.flush();
    if (!csv || !schedule || !truth) {
        throw std::runtime_error("short write while generating fixture in " + out_dir);
    }
    return out;
}

CorruptionManifest corrupt(const std::string& clean_csv, const std::string& out_csv,
                           const FaultPlan& plan, std::uint64_t seed) {
    std::ifstream in(clean_csv, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + clean_csv);

    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("empty fixture csv: " + clean_csv);
    if (header.rfind("timestamp", 0) != 0) {
        throw std::invalid_argument("corrupt(): input is not a fixture csv");
    }
    while (!header.empty() && header.back() == '\r') header.pop_back();

    struct Line {
        std::vector<std::string> cells;  // empty for junk lines
        std::string raw;                 // junk text
        std::int64_t ts = 0;
        std::int64_t sort_key = 0;
    };

    std::vector<Line> rows;
    std::string text;
    while (std::getline(in, text)) {
        if (trimmed(text).empty()) continue;
        Line line;
        line.cells = core::split_csv_line(text);
        if (line.cells.size() != core::kCsvColumns.size()) {
            throw std::invalid_argument("corrupt(): input row is not clean");
        }
        const auto ts = core::parse_rfc3339_utc(line.cells[0]);
        if (!ts) throw std::invalid_argument("corrupt(): input row has no timestamp");
        line.ts = *ts;
        rows.push_back(std::move(line));
    }

    CorruptionManifest manifest;
    DeterministicRng rng(seed);
    std::vector<bool> dropped(rows.size(), false);

    // Targeted slot drops: a contiguous interior block of on-cadence rows,
    // one vacated slot per dropped row. First two and last two rows stay so
    // the trip's span (and thus its expected slot count) is unchanged.
    if (plan.target_drop_slots > 0) {
        std::vector<std::string> order;
        std::map<std::string, std::vector<std::size_t>> by_trip;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& tid = rows[i].cells[4];
            if (by_trip.find(tid) == by_trip.end()) order.push_back(tid);
            by_trip[tid].push_back(i);
        }
        if (order.empty()) throw std::invalid_argument("corrupt(): no rows to target");
        const auto pick = static_cast<std::size_t>(
            std::clamp<std::int64_t>(plan.target_trip_index, 0,
                                     static_cast<std::int64_t>(order.size()) - 1));
        const auto& indices = by_trip[order[pick]];
        if (static_cast<std::int64_t>(indices.size()) < plan.target_drop_slots + 4) {
            throw std::invalid_argument("corrupt(): target trip too short for slot drops");
        }
        for (std::int64_t k = 0; k < plan.target_drop_slots; ++k) {
            dropped[indices[static_cast<std::size_t>(2 + k)]] = true;
        }
        manifest.targeted_slot_drops = plan.target_drop_slots;
    }

    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!dropped[i] && rng.chance(plan.drop_rate)) {
            dropped[i] = true;
            ++manifest.dropped;
        }
    }

    std::vector<Line> out;
    out.reserve(rows.size() + rows.size() / 4);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (dropped[i]) continue;
        out.push_back(rows[i]);
        if (rng.chance(plan.duplicate_rate)) {
            out.push_back(rows[i]);
            ++manifest.duplicates;
        }
    }

    for (auto& line : out) {
        if (!rng.chance(plan.blank_rate)) continue;
        const std::int64_t picks = rng.next_in(1, 3);
        for (std::int64_t k = 0; k < picks; ++k) {
            // Only non-critical columns; blanked cells become "N/A" during
            // cleaning and never change a summary.
            const auto col = static_cast<std::size_t>(rng.next_in(7, 17));
            if (!line.cells[col].empty()) {
                line.cells[col].clear();
                ++manifest.fields_blanked;
            }
        }
    }

    static constexpr std::array<std::string_view, 3> kJunk = {
        "### telemetry burst ###", "bogus,row", ",,,"};
    std::vector<Line> with_junk;
    with_junk.reserve(out.size() + 8);
    std::size_t junk_cycle = 0;
    for (auto& line : out) {
        if (rng.chance(plan.malformed_rate)) {
            Line junk;
            junk.raw = std::string(kJunk[junk_cycle++ % kJunk.size()]);
            junk.ts = line.ts;
            with_junk.push_back(std::move(junk));
            ++manifest.malformed_inserted;
        }
        with_junk.push_back(std::move(line));
    }

    for (auto& line : with_junk) {
        line.sort_key = line.ts;
        if (!line.cells.empty() && plan.reorder_max_lag_s > 0 &&
            rng.chance(plan.reorder_rate)) {
            line.sort_key += rng.next_in(1, plan.reorder_max_lag_s);
            ++manifest.reordered;
        }
    }
    std::stable_sort(with_junk.begin(), with_junk.end(),
                     [](const Line& a, const Line& b) { return a.sort_key < b.sort_key; });

    std::ofstream outf(out_csv, std::ios::binary);
    if (!outf) throw std::runtime_error("cannot write " + out_csv);
    outf << header << '\n';
    for (const auto& line : with_junk) {
        if (!line.cells.empty()) {
            for (std::size_t i = 0; i < line.cells.size(); ++i) {
                if (i) outf << ',';
                outf << line.cells[i];
            }
            outf << '\n';
        } else {
            outf << line.raw << '\n';
        }
    }
    outf.flush();
    if (!outf) throw std::runtime_error("short write: " + out_csv);
    return manifest;
}

}  // namespace edgetransit::fixtures
