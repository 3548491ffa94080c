// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Everything here goes through public interfaces only; oracles are
// independent recounts, not calls back into the code under test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "edgetransit/analytics/trip_fold.hpp"
#include "edgetransit/core/avl.hpp"
#include "edgetransit/core/geo.hpp"
#include "edgetransit/core/time.hpp"
#include "edgetransit/edge/config.hpp"
#include "edgetransit/edge/pipeline.hpp"
#include "edgetransit/edge/replay.hpp"
#include "edgetransit/edge/uplink.hpp"
#include "edgetransit/fixtures/fixture.hpp"
#include "edgetransit/hub/export.hpp"
#include "edgetransit/hub/reports.hpp"
#include "edgetransit/hub/server.hpp"
#include "edgetransit/hub/store.hpp"
#include "edgetransit/net/tcp.hpp"
#include "edgetransit/wire/wire.hpp"
#include "support.hpp"

using namespace edgetransit;
using testsupport::TempDir;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct Outcome {
    bool ok = true;
    std::string detail;
};

/// Collects the first failure; later expectations still run so the detail
/// line can summarize totals.
struct Gate {
    bool ok = true;
    std::string why;

    void expect(bool condition, const std::string& message) {
        if (!condition && ok) {
            ok = false;
            why = message;
        }
    }
};

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

struct PipelineRun {
    std::vector<std::string> lines;
    edge::PipelineMetrics metrics;
};

PipelineRun replay_through_pipeline(const std::string& csv_path,
                                    const edge::EdgeConfig& config = {}) {
    edge::ReplaySource source(csv_path, 0.0);
    testsupport::CollectingSink sink;
    edge::Pipeline pipeline(config, sink);
    pipeline.run(source);
    return {testsupport::encode_all(sink.messages), pipeline.metrics()};
}

// --- criteria 1 + 2: the seeded fixture battery ---------------------------

fixtures::FixtureSpec battery_spec(int i) {
    fixtures::DeterministicRng rng(9'000 + static_cast<std::uint64_t>(i));
    fixtures::FixtureSpec spec;
    spec.seed = 1'000 + static_cast<std::uint64_t>(i);
    spec.days = rng.next_in(1, 7);
    const std::int64_t total = rng.next_in(1, 60);
    std::int64_t morning = (total + 2) / 3;
    std::int64_t afternoon = (total - morning + 1) / 2;
    std::int64_t evening = total - morning - afternoon;
    std::int64_t none = 0;
    if (i % 4 == 0 && evening > 0) {
        none = 1;
        --evening;
    }
    spec.trips_none = none;
    spec.trips_morning = morning;
    spec.trips_afternoon = afternoon;
    spec.trips_evening = evening;
    spec.trip_duration_mean_s = rng.next_in(120, 360);
    spec.trip_duration_jitter_s = rng.next_in(0, 60);
    return spec;
}

struct BatteryResult {
    int clean_matches = 0;
    int corrupted_matches = 0;
    int fixtures = 0;
    std::int64_t rows = 0;
    double clean_seconds = 0;  // generate + replay + compare, criterion 1's budget
    std::string first_clean_mismatch;
    std::string first_corrupted_mismatch;
};

const BatteryResult& battery() {
    static const BatteryResult result = [] {
        BatteryResult r;
        for (int i = 0; i < 100; ++i) {
            TempDir dir("accept-battery");
            const fixtures::FixtureSpec spec = battery_spec(i);

            const auto t0 = clock_type::now();
            const auto fixture = fixtures::generate(spec, dir.str());
            const auto expected = split_lines(testsupport::read_text(fixture.ground_truth_path));
            const auto clean = replay_through_pipeline(fixture.csv_path);
            r.clean_seconds += seconds_since(t0);
            r.rows += fixture.data_rows;
            ++r.fixtures;
            if (clean.lines == expected) {
                ++r.clean_matches;
            } else if (r.first_clean_mismatch.empty()) {
                r.first_clean_mismatch = "fixture " + std::to_string(i);
            }

            fixtures::FaultPlan plan;
            plan.duplicate_rate = 0.10;
            plan.reorder_rate = 0.30;
            plan.reorder_max_lag_s = 10;  // displacement stays inside the 15 s window
            plan.blank_rate = 0.05;
            const std::string corrupted_csv = dir.str("avl_corrupted.csv");
            fixtures::corrupt(fixture.csv_path, corrupted_csv, plan, spec.seed * 31 + 7);
            const auto corrupted = replay_through_pipeline(corrupted_csv);
            if (corrupted.lines == expected && corrupted.metrics.late_tuples_dropped == 0) {
                ++r.corrupted_matches;
            } else if (r.first_corrupted_mismatch.empty()) {
                r.first_corrupted_mismatch = "fixture " + std::to_string(i);
            }
        }
        return r;
    }();
    return result;
}

Outcome criterion_oracle_equivalence() {
    const BatteryResult& r = battery();
    Gate g;
    g.expect(r.clean_matches == r.fixtures,
             std::to_string(r.fixtures - r.clean_matches) + " mismatches, first at " +
                 r.first_clean_mismatch);
    g.expect(r.clean_seconds < 60.0,
             "took " + std::to_string(r.clean_seconds) + " s, budget is 60");
    char detail[160];
    std::snprintf(detail, sizeof detail, "%d/%d fixtures byte-identical, %lld rows, %.1f s",
                  r.clean_matches, r.fixtures, static_cast<long long>(r.rows), r.clean_seconds);
    return {g.ok, g.ok ? detail : g.why};
}

Outcome criterion_fault_equivalence() {
    const BatteryResult& r = battery();
    Gate g;
    g.expect(r.corrupted_matches == r.fixtures,
             std::to_string(r.fixtures - r.corrupted_matches) + " mismatches, first at " +
                 r.first_corrupted_mismatch);
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "%d/%d corrupted variants identical (10%% dup, reorder <= 10 s, 5%% blank)",
                  r.corrupted_matches, r.fixtures);
    return {g.ok, g.ok ? detail : g.why};
}

// --- criterion 3: the 100-missing-slot boundary ----------------------------

Outcome criterion_trip_drop_boundary() {
    TempDir dir("accept-slots");
    fixtures::FixtureSpec spec;
    spec.seed = 3'333;
    spec.trips_morning = 1;
    spec.trips_afternoon = 1;
    spec.trips_evening = 0;
    spec.trip_duration_mean_s = 900;  // 181 cadence slots, room for a 100-slot gap
    spec.trip_duration_jitter_s = 0;
    const auto fixture = fixtures::generate(spec, dir.str());

    std::vector<std::string> truth_ids;
    for (const auto& m : fixture.ground_truth) {
        if (m.type == wire::kTripSummaryType) {
            truth_ids.push_back(m.payload.at("trip_id").get<std::string>());
        }
    }

    Gate g;
    g.expect(truth_ids.size() == 2, "expected two generated trips");
    const auto run_with = [&](std::int64_t drops) {
        fixtures::FaultPlan plan;
        plan.target_trip_index = 0;
        plan.target_drop_slots = drops;
        const std::string path = dir.str("avl_" + std::to_string(drops) + ".csv");
        fixtures::corrupt(fixture.csv_path, path, plan, 11);
        return replay_through_pipeline(path);
    };

    const auto kept = run_with(99);
    std::string kept_ids;
    for (const auto& line : kept.lines) {
        const auto parsed = wire::parse_message_line(line);
        if (parsed.status == wire::ParseStatus::kOk &&
            parsed.message.type == wire::kTripSummaryType) {
            kept_ids += parsed.message.payload.at("trip_id").get<std::string>() + ";";
        }
    }
    g.expect(kept.metrics.trips_dropped == 0, "99 empty slots must not drop the trip");
    g.expect(kept_ids.find(truth_ids[0]) != std::string::npos,
             "trip with 99 empty slots missing from output");

    const auto dropped = run_with(100);
    std::string dropped_ids;
    for (const auto& line : dropped.lines) {
        const auto parsed = wire::parse_message_line(line);
        if (parsed.status == wire::ParseStatus::kOk &&
            parsed.message.type == wire::kTripSummaryType) {
            dropped_ids += parsed.message.payload.at("trip_id").get<std::string>() + ";";
        }
    }
    g.expect(dropped.metrics.trips_dropped == 1, "100 empty slots must drop exactly one trip");
    g.expect(dropped_ids.find(truth_ids[0]) == std::string::npos,
             "trip with 100 empty slots still in output");
    g.expect(dropped_ids.find(truth_ids[1]) != std::string::npos,
             "untouched trip must survive");

    return {g.ok, g.ok ? "99 empty slots kept, 100 dropped" : g.why};
}

// --- criterion 4: threshold semantics at 15 m ------------------------------

core::GeoPoint north_at_least(const core::GeoPoint& origin, double meters) {
    double lo = 0.0;
    double hi = (meters + 1.0) / 111'000.0;  // past the target for any latitude
    for (int i = 0; i < 200; ++i) {
        const double mid = (lo + hi) / 2.0;
        const core::GeoPoint p(origin.latitude() + mid, origin.longitude());
        if (core::great_circle_distance(origin, p) < meters) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {origin.latitude() + hi, origin.longitude()};
}

Outcome criterion_threshold_semantics() {
    const core::GeoPoint origin(46.0953, -64.7651);
    Gate g;

    struct Probe {
        double target;
        core::Motion want;
    };
    for (const Probe probe : {Probe{14.99, core::Motion::kStop}, Probe{15.00, core::Motion::kMove},
                              Probe{15.01, core::Motion::kMove}}) {
        const core::GeoPoint p = north_at_least(origin, probe.target);
        const double d = core::great_circle_distance(origin, p);
        g.expect(d >= probe.target && d < probe.target + 1e-6,
                 "probe construction drifted for " + std::to_string(probe.target));
        g.expect(core::classify_motion(origin, p) == probe.want,
                 "classify_motion wrong at " + std::to_string(probe.target) + " m");

        analytics::TripState state;
        core::AvlTuple first;
        first.timestamp_s = 1'700'000'000;
        first.position = origin;
        first.route_name = "51";
        first.trip_id = "t-threshold";
        first.trip_date = {2024, 2, 14};
        first.trip_start_time = {6, 0, 0};
        core::AvlTuple second = first;
        second.timestamp_s += 5;
        second.position = p;
        analytics::annotate(state, first);
        const auto label = analytics::annotate(state, second);
        g.expect(label.label == probe.want,
                 "annotate label wrong at " + std::to_string(probe.target) + " m");
    }
    return {g.ok, g.ok ? "14.99 m -> Stop; 15.00 m and 15.01 m -> Move" : g.why};
}

// --- criterion 5: haversine vs spherical law of cosines --------------------

double law_of_cosines_distance(const core::GeoPoint& a, const core::GeoPoint& b) {
    const double rad = std::acos(-1.0) / 180.0;
    const double f1 = a.latitude() * rad;
    const double f2 = b.latitude() * rad;
    const double dl = (b.longitude() - a.longitude()) * rad;
    const double c =
        std::sin(f1) * std::sin(f2) + std::cos(f1) * std::cos(f2) * std::cos(dl);
    return core::kEarthRadiusM * std::acos(std::clamp(c, -1.0, 1.0));
}

Outcome criterion_haversine_accuracy() {
    fixtures::DeterministicRng rng(50'000);
    Gate g;
    double worst = 0.0;
    for (int i = 0; i < 1'000; ++i) {
        core::GeoPoint a(0, 0), b(0, 0);
        double oracle = 0.0;
        do {  // a 50 km box around Moncton; redraw the rare near-identical pair
            a = core::GeoPoint(46.0 + (rng.next_unit() - 0.5) * 0.45,
                               -64.7 + (rng.next_unit() - 0.5) * 0.64);
            b = core::GeoPoint(46.0 + (rng.next_unit() - 0.5) * 0.45,
                               -64.7 + (rng.next_unit() - 0.5) * 0.64);
            oracle = law_of_cosines_distance(a, b);
        } while (oracle < 5.0);
        const double got = core::great_circle_distance(a, b);
        worst = std::max(worst, std::abs(got - oracle) / oracle);
    }
    g.expect(worst <= 0.005, "worst relative error " + std::to_string(worst));

    const double lat_step =
        core::great_circle_distance({46.0, -64.0}, {46.001, -64.0});
    g.expect(std::abs(lat_step - 111.19) <= 0.05,
             "0.001 deg latitude pair gave " + std::to_string(lat_step));

    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "1000 pairs, worst relative error %.2e; 0.001 deg pair = %.3f m", worst,
                  lat_step);
    return {g.ok, g.ok ? detail : g.why};
}

// --- criterion 6: the 3,056 s morning trip ---------------------------------

fixtures::FixtureSpec table_shape_spec() {
    fixtures::FixtureSpec spec;
    spec.seed = 3'056;
    spec.start_date = {2024, 2, 14};
    spec.trips_morning = 1;
    spec.trips_afternoon = 0;
    spec.trips_evening = 0;
    spec.trip_duration_mean_s = 3'056;
    spec.trip_duration_jitter_s = 0;
    return spec;
}

Outcome criterion_table_shape() {
    TempDir dir("accept-3056");
    const auto fixture = fixtures::generate(table_shape_spec(), dir.str());
    const auto run = replay_through_pipeline(fixture.csv_path);
    const auto expected = split_lines(testsupport::read_text(fixture.ground_truth_path));

    Gate g;
    g.expect(run.lines == expected, "pipeline output diverged from ground truth");

    std::optional<nlohmann::json> daily;
    std::optional<nlohmann::json> trip;
    for (const auto& line : run.lines) {
        const auto parsed = wire::parse_message_line(line);
        if (parsed.status != wire::ParseStatus::kOk) continue;
        if (parsed.message.type == wire::kDailySummaryType) daily = parsed.message.payload;
        if (parsed.message.type == wire::kTripSummaryType) trip = parsed.message.payload;
    }
    g.expect(trip.has_value() && daily.has_value(), "missing trip or daily summary");
    if (trip && daily) {
        g.expect(trip->at("total_time_length") == 3'056, "trip length is not 3056 s");
        const auto& morning = daily->at("morning");
        g.expect(morning.at("trip_count") == 1, "morning trip count");
        g.expect(morning.at("avg_time_length") == 3'056.0, "morning average is not 3056");
        const auto& evening = daily->at("evening");
        g.expect(evening.at("trip_count") == 0, "evening trip count must be 0");
        g.expect(!evening.contains("avg_time_length") && !evening.contains("avg_moves") &&
                     !evening.contains("avg_stops"),
                 "evening averages must be absent, not zero");
    }
    return {g.ok, g.ok ? "morning avg 3056.0; evening cells absent" : g.why};
}

// --- criterion 7: missing-trip detection pattern ---------------------------

Outcome criterion_missing_trips() {
    const core::Date date{2024, 2, 14};
    std::vector<hub::ScheduleEntry> schedule;
    for (int h = 5; h <= 20; ++h) {
        schedule.push_back({"51", date, {h, 0, 0}});
    }

    std::vector<core::TripSummary> summaries;
    for (int h = 5; h <= 20; ++h) {
        if (h == 6 || h == 7) continue;  // the runs that never happened
        core::TripSummary s;
        s.trip_id = "t-" + std::to_string(h);
        s.date = date;
        s.start_time = {h, 3, 0};
        s.total_move = 200;
        s.total_stop = 40;
        s.total_time_length_s = 2'600;
        summaries.push_back(s);
    }

    const auto missing = hub::detect_missing_trips(summaries, schedule);
    Gate g;
    g.expect(missing.size() == 2, "expected exactly two missing departures, got " +
                                      std::to_string(missing.size()));
    if (missing.size() == 2) {
        g.expect(missing[0].departure == core::TimeOfDay{6, 0, 0}, "first gap is not 06:00");
        g.expect(missing[1].departure == core::TimeOfDay{7, 0, 0}, "second gap is not 07:00");
    }
    return {g.ok, g.ok ? "16 departures, exactly {06:00, 07:00} reported missing" : g.why};
}

// --- criterion 8: boxplot vs brute-force oracle -----------------------------

Outcome criterion_boxplot_oracle() {
    fixtures::DeterministicRng rng(80'808);
    Gate g;
    for (int group = 0; group < 50; ++group) {
        const std::int64_t n = rng.next_in(3, 200);
        std::vector<double> values;
        values.reserve(static_cast<std::size_t>(n));
        for (std::int64_t i = 0; i < n; ++i) {
            values.push_back(static_cast<double>(rng.next_in(1'200, 4'800)) + rng.next_unit());
        }
        if (rng.chance(0.4)) values.push_back(25'000.0);  // guarantee outlier coverage

        auto sorted = values;
        std::sort(sorted.begin(), sorted.end());
        const auto median_between = [&](std::size_t lo, std::size_t hi) {  // [lo, hi)
            const std::size_t count = hi - lo;
            return count % 2 == 1
                       ? sorted[lo + count / 2]
                       : (sorted[lo + count / 2 - 1] + sorted[lo + count / 2]) / 2.0;
        };
        const std::size_t total = sorted.size();
        const std::size_t half = (total + 1) / 2;
        const double median = median_between(0, total);
        const double q1 = median_between(0, half);
        const double q3 = median_between(total - half, total);
        const double lo_fence = q1 - 1.5 * (q3 - q1);
        const double hi_fence = q3 + 1.5 * (q3 - q1);
        std::vector<double> outliers;
        double lo_whisker = median, hi_whisker = median;
        bool any = false;
        for (const double v : sorted) {
            if (v < lo_fence || v > hi_fence) {
                outliers.push_back(v);
            } else if (!any) {
                lo_whisker = hi_whisker = v;
                any = true;
            } else {
                hi_whisker = std::max(hi_whisker, v);
            }
        }

        const auto got = hub::boxplot_stats("g" + std::to_string(group), values);
        const std::string where = " in group " + std::to_string(group);
        g.expect(got.q1 == q1, "q1" + where);
        g.expect(got.median == median, "median" + where);
        g.expect(got.q3 == q3, "q3" + where);
        g.expect(got.min == lo_whisker, "lower whisker" + where);
        g.expect(got.max == hi_whisker, "upper whisker" + where);
        g.expect(got.outliers == outliers, "outlier set" + where);
    }
    return {g.ok, g.ok ? "50 groups (n=3..200), quartiles and outliers exact" : g.why};
}

// --- criterion 9: uplink resilience through a hub outage -------------------

Outcome criterion_uplink_resilience() {
    TempDir dir("accept-outage");
    fixtures::FixtureSpec spec;
    spec.seed = 77;
    spec.trips_morning = 3;
    spec.trips_afternoon = 3;
    spec.trips_evening = 0;
    spec.trip_duration_mean_s = 300;
    spec.trip_duration_jitter_s = 30;
    const auto fixture = fixtures::generate(spec, dir.str());

    std::set<std::string> truth_ids;
    for (const auto& m : fixture.ground_truth) truth_ids.insert(m.message_id);

    // Phase 1: a listener that never accepts. Connections land in the
    // backlog, sends appear to succeed, and no ack ever comes back, which is
    // exactly what a wedged hub looks like from the vehicle.
    auto decoy = net::TcpListener::bind("127.0.0.1", 0);
    Gate g;
    g.expect(decoy.has_value(), "cannot bind decoy listener");
    if (!decoy) return {false, g.why};
    const std::uint16_t port = decoy->port();

    hub::MessageLog log(dir.str("data"));
    edge::UplinkOptions opt;
    opt.host = "127.0.0.1";
    opt.port = port;
    opt.backoff_base_s = 0.05;
    opt.backoff_cap_s = 0.2;
    opt.ack_timeout_ms = 300;
    opt.connect_timeout_ms = 500;
    edge::UplinkClient client(opt);

    std::unique_ptr<hub::HubServer> server;
    std::thread phase([&] {
        std::this_thread::sleep_for(std::chrono::milliseconds(1'000));
        decoy->close();
        std::this_thread::sleep_for(std::chrono::milliseconds(50));
        server = std::make_unique<hub::HubServer>("127.0.0.1", port, log);
    });

    edge::ReplaySource source(fixture.csv_path, 20'000.0);  // ~2 s wall for the service day
    edge::EdgeConfig config;
    config.shutdown_drain_timeout_s = 30.0;
    edge::Pipeline pipeline(config, client);
    pipeline.run(source);
    phase.join();

    const bool drained = client.drain(30.0);
    const auto counters = client.counters();
    client.shutdown();
    if (server) server->stop();

    g.expect(drained, "uplink never drained after the hub came back");
    g.expect(counters.submitted == static_cast<std::int64_t>(truth_ids.size()),
             "submitted != expected message count");
    g.expect(counters.acked == counters.submitted, "not every message was acked");
    g.expect(counters.retransmissions >= 1, "outage produced no retransmissions");
    g.expect(counters.evicted == 0, "messages were evicted during the outage");

    g.expect(log.message_count() == truth_ids.size(),
             "hub log has " + std::to_string(log.message_count()) + " messages, expected " +
                 std::to_string(truth_ids.size()));
    for (const auto& id : truth_ids) {
        g.expect(log.contains(id), "hub log is missing id " + id);
    }

    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "%lld messages exactly once after %lld retransmissions",
                  static_cast<long long>(log.message_count()),
                  static_cast<long long>(counters.retransmissions));
    return {g.ok, g.ok ? detail : g.why};
}

// --- criteria 10 + 11: full-path runs through a live hub --------------------

struct HubRun {
    std::map<std::string, std::string> artifacts;  // log/<date> and report files
    std::int64_t data_rows = 0;
    std::int64_t tuples_in = 0;
    double pipeline_seconds = 0;
    double total_seconds = 0;
    bool clean_output = false;
};

HubRun run_through_hub(const fixtures::FixtureSpec& spec, const std::string& root) {
    HubRun run;
    const auto t_start = clock_type::now();
    const auto fixture = fixtures::generate(spec, root + "/fix");
    run.data_rows = fixture.data_rows;

    hub::MessageLog log(root + "/data");
    hub::HubServer server("127.0.0.1", 0, log);
    {
        edge::UplinkOptions opt;
        opt.host = "127.0.0.1";
        opt.port = server.port();
        opt.backoff_base_s = 0.05;
        opt.backoff_cap_s = 0.5;
        edge::UplinkClient client(opt);

        edge::ReplaySource source(fixture.csv_path, 0.0);
        edge::EdgeConfig config;
        config.shutdown_drain_timeout_s = 60.0;
        edge::Pipeline pipeline(config, client);
        const auto t_pipe = clock_type::now();
        pipeline.run(source);
        run.pipeline_seconds = seconds_since(t_pipe);
        run.tuples_in = pipeline.metrics().tuples_in;
        client.drain(30.0);
        client.shutdown();
    }
    server.stop();
    run.clean_output = log.message_count() == fixture.ground_truth.size();

    std::vector<hub::DailyReport> days;
    std::vector<core::TripSummary> all_trips;
    std::map<std::string, std::vector<double>> groups;
    for (const core::Date& date : log.dates()) {
        const auto trips = log.trips_for(date);
        days.push_back(hub::daily_report(date, trips, log.daily_for(date)));
        auto& group = groups[core::format_date(date)];
        for (const auto& t : trips) {
            group.push_back(static_cast<double>(t.total_time_length_s));
            all_trips.push_back(t);
        }
    }
    const auto schedule = hub::load_schedule_csv(fixture.schedule_path);
    const auto missing = hub::detect_missing_trips(all_trips, schedule);
    const auto box = hub::boxplot(groups);

    const std::string out_dir = root + "/report";
    hub::export_daily_csv(days, out_dir);
    hub::export_missing_csv(missing, out_dir);
    hub::export_boxplot_csv(box, out_dir);
    hub::export_daily_svg(days, out_dir);
    hub::export_boxplot_svg(box, out_dir);

    for (const core::Date& date : log.dates()) {
        run.artifacts["log/" + core::format_date(date)] =
            testsupport::read_text(log.log_path_for(date));
    }
    for (const char* name : {"daily_report.csv", "missing_trips.csv", "boxplot.csv",
                             "daily_report.svg", "boxplot.svg"}) {
        run.artifacts[name] = testsupport::read_text(out_dir + "/" + name);
    }
    run.total_seconds = seconds_since(t_start);
    return run;
}

Outcome criterion_throughput() {
    TempDir dir("accept-throughput");
    fixtures::FixtureSpec spec;
    spec.seed = 10'101;
    spec.days = 7;
    spec.trips_morning = 24;
    spec.trips_afternoon = 20;
    spec.trips_evening = 16;  // 60 trips a day for a week
    spec.trip_duration_mean_s = 600;
    spec.trip_duration_jitter_s = 60;
    const HubRun run = run_through_hub(spec, dir.str());

    const double tuples_per_s =
        static_cast<double>(run.tuples_in) / std::max(run.pipeline_seconds, 1e-9);
    Gate g;
    g.expect(run.clean_output, "hub log does not carry every summary");
    g.expect(tuples_per_s >= 10'000.0,
             "throughput " + std::to_string(tuples_per_s) + " tuples/s < 10000");
    g.expect(run.total_seconds < 120.0,
             "end-to-end took " + std::to_string(run.total_seconds) + " s");

    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "%lld tuples at %.0f tuples/s; week end-to-end %.1f s incl. reports",
                  static_cast<long long>(run.tuples_in), tuples_per_s, run.total_seconds);
    return {g.ok, g.ok ? detail : g.why};
}

Outcome criterion_determinism() {
    Gate g;
    int compared = 0;
    for (const auto& [name, spec] :
         std::vector<std::pair<std::string, fixtures::FixtureSpec>>{
             {"battery-0", battery_spec(0)}, {"table-shape", table_shape_spec()}}) {
        TempDir first("accept-det-a");
        TempDir second("accept-det-b");
        const HubRun a = run_through_hub(spec, first.str());
        const HubRun b = run_through_hub(spec, second.str());
        g.expect(a.clean_output && b.clean_output, name + ": hub log incomplete");
        g.expect(!a.artifacts.empty(), name + ": no artifacts collected");
        g.expect(a.artifacts == b.artifacts,
                 name + ": hub logs or report files differ between runs");
        compared += static_cast<int>(a.artifacts.size());
    }
    return {g.ok, g.ok ? std::to_string(compared) + " artifacts byte-identical across reruns"
                       : g.why};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"oracle equivalence on 100 seeded fixtures", criterion_oracle_equivalence},
        {"fault-injection equivalence", criterion_fault_equivalence},
        {"trip-drop rule at the 100-slot boundary", criterion_trip_drop_boundary},
        {"stop/move threshold semantics at 15 m", criterion_threshold_semantics},
        {"haversine accuracy vs law-of-cosines oracle", criterion_haversine_accuracy},
        {"daily summary shape for a 3,056 s morning trip", criterion_table_shape},
        {"missing-trip detection over 16 departures", criterion_missing_trips},
        {"boxplot quartiles and outliers vs brute force", criterion_boxplot_oracle},
        {"uplink resilience through a hub outage", criterion_uplink_resilience},
        {"throughput and one-week wall time", criterion_throughput},
        {"byte-identical hub logs and reports on rerun", criterion_determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        if (!outcome.ok) ++failures;
        std::printf("criterion %2zu: %s - %s%s%s\n", i + 1, outcome.ok ? "PASS" : "FAIL",
                    criteria[i].first, outcome.detail.empty() ? "" : " | ",
                    outcome.detail.c_str());
        std::fflush(stdout);
    }
    if (failures != 0) {
        std::printf("%d of %zu criteria failing\n", failures, criteria.size());
    }
    return failures == 0 ? 0 : 1;
}
