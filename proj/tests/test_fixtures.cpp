#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "edgetransit/core/avl.hpp"
#include "edgetransit/core/time.hpp"
#include "edgetransit/fixtures/fixture.hpp"
#include "edgetransit/hub/reports.hpp"
#include "edgetransit/wire/wire.hpp"
#include "support.hpp"

using namespace edgetransit;
using testsupport::TempDir;

namespace {

struct ParsedRow {
    std::int64_t ts = 0;
    std::string trip_id;
    std::vector<std::string> cells;
};

std::vector<ParsedRow> parse_fixture_csv(const std::string& path) {
    const std::string text = testsupport::read_text(path);
    std::vector<ParsedRow> rows;
    std::size_t pos = text.find('\n');  // skip header
    REQUIRE(pos != std::string::npos);
    ++pos;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        const std::string line = text.substr(pos, nl - pos);
        pos = nl + 1;
        if (line.empty()) continue;
        ParsedRow row;
        row.cells = core::split_csv_line(line);
        if (row.cells.size() == core::kCsvColumns.size()) {
            const auto ts = core::parse_rfc3339_utc(row.cells[0]);
            if (ts) {
                row.ts = *ts;
                row.trip_id = row.cells[4];
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

fixtures::FixtureSpec small_spec(std::uint64_t seed) {
    fixtures::FixtureSpec spec;
    spec.seed = seed;
    spec.trips_morning = 1;
    spec.trips_afternoon = 1;
    spec.trips_evening = 0;
    spec.trip_duration_mean_s = 300;
    spec.trip_duration_jitter_s = 30;
    return spec;
}

}  // namespace

TEST_CASE("deterministic rng produces a stable stream with inclusive bounds") {
    fixtures::DeterministicRng a(42);
    fixtures::DeterministicRng b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    // Degenerate probabilities answer without consuming a draw.
    fixtures::DeterministicRng with_chance(7);
    fixtures::DeterministicRng plain(7);
    CHECK_FALSE(with_chance.chance(0.0));
    CHECK(with_chance.chance(1.0));
    CHECK(with_chance.next_u64() == plain.next_u64());

    fixtures::DeterministicRng r(3);
    std::set<std::int64_t> seen;
    for (int i = 0; i < 200; ++i) {
        const auto v = r.next_in(10, 12);
        CHECK(v >= 10);
        CHECK(v <= 12);
        seen.insert(v);
    }
    CHECK(seen == std::set<std::int64_t>{10, 11, 12});
    CHECK(r.next_in(5, 5) == 5);
    CHECK_THROWS_AS(r.next_in(5, 4), std::invalid_argument);

    for (int i = 0; i < 200; ++i) {
        const double u = r.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("the same seed regenerates byte-identical fixture files") {
    TempDir a("fix-seed-a");
    TempDir b("fix-seed-b");
    TempDir c("fix-seed-c");
    const auto fa = fixtures::generate(small_spec(21), a.str());
    const auto fb = fixtures::generate(small_spec(21), b.str());
    CHECK(testsupport::read_text(fa.csv_path) == testsupport::read_text(fb.csv_path));
    CHECK(testsupport::read_text(fa.ground_truth_path) ==
          testsupport::read_text(fb.ground_truth_path));
    CHECK(testsupport::read_text(fa.schedule_path) == testsupport::read_text(fb.schedule_path));

    const auto fc = fixtures::generate(small_spec(22), c.str());
    CHECK(testsupport::read_text(fa.csv_path) != testsupport::read_text(fc.csv_path));
}

TEST_CASE("generated fixtures have consistent structure across all three files") {
    TempDir dir("fix-shape");
    fixtures::FixtureSpec spec;
    spec.seed = 5;
    spec.days = 2;
    spec.trips_none = 1;
    spec.trips_morning = 2;
    spec.trips_afternoon = 1;
    spec.trips_evening = 1;
    spec.trip_duration_mean_s = 300;
    spec.trip_duration_jitter_s = 30;
    const auto fixture = fixtures::generate(spec, dir.str());

    CHECK(fixture.trips == 2 * (1 + 2 + 1 + 1));
    const auto rows = parse_fixture_csv(fixture.csv_path);
    CHECK(static_cast<std::int64_t>(rows.size()) == fixture.data_rows);
    CHECK(testsupport::read_text(fixture.csv_path)
              .rfind(core::csv_header_line() + "\n", 0) == 0);

    // Ground truth vector and file carry the same lines.
    std::string encoded;
    for (const auto& m : fixture.ground_truth) encoded += wire::encode_message(m) + "\n";
    CHECK(encoded == testsupport::read_text(fixture.ground_truth_path));

    // Per day: trips in chronological order, then exactly one daily summary.
    std::size_t i = 0;
    const std::int64_t first_day = core::days_from_civil(spec.start_date);
    for (std::int64_t d = 0; d < spec.days; ++d) {
        const std::string day_text = core::format_date(core::civil_from_days(first_day + d));
        std::string last_start = "00:00:00";
        for (std::int64_t t = 0; t < 5; ++t, ++i) {
            REQUIRE(i < fixture.ground_truth.size());
            const auto& m = fixture.ground_truth[i];
            REQUIRE(m.type == wire::kTripSummaryType);
            CHECK(m.payload.at("date") == day_text);
            const std::string start = m.payload.at("start_time");
            CHECK(start >= last_start);
            last_start = start;
            const std::string id = m.payload.at("trip_id");
            CHECK(id.rfind("t", 0) == 0);
            CHECK(id.find('-') != std::string::npos);
        }
        REQUIRE(i < fixture.ground_truth.size());
        CHECK(fixture.ground_truth[i].type == wire::kDailySummaryType);
        CHECK(fixture.ground_truth[i].payload.at("date") == day_text);
        ++i;
    }
    CHECK(i == fixture.ground_truth.size());

    // The schedule is loadable and lists one departure per generated trip.
    const auto schedule = hub::load_schedule_csv(fixture.schedule_path);
    CHECK(static_cast<std::int64_t>(schedule.size()) == fixture.trips);
    for (const auto& entry : schedule) CHECK(entry.route_name == spec.route_name);

    // Every data row belongs to a ground-truth trip and ticks the 5 s grid.
    std::set<std::string> truth_ids;
    for (const auto& m : fixture.ground_truth) {
        if (m.type == wire::kTripSummaryType) truth_ids.insert(m.payload.at("trip_id"));
    }
    for (const auto& row : rows) {
        REQUIRE(row.cells.size() == core::kCsvColumns.size());
        CHECK(truth_ids.count(row.trip_id) == 1);
    }
}

TEST_CASE("trip payload accounting matches an independent scan of the csv") {
    TempDir dir("fix-account");
    const auto fixture = fixtures::generate(small_spec(31), dir.str());
    const auto rows = parse_fixture_csv(fixture.csv_path);

    std::map<std::string, std::vector<std::int64_t>> ts_by_trip;
    for (const auto& row : rows) ts_by_trip[row.trip_id].push_back(row.ts);

    for (const auto& m : fixture.ground_truth) {
        if (m.type != wire::kTripSummaryType) continue;
        const std::string id = m.payload.at("trip_id");
        REQUIRE(ts_by_trip.count(id) == 1);
        const auto& ts = ts_by_trip[id];
        const std::int64_t move = m.payload.at("total_move");
        const std::int64_t stop = m.payload.at("total_stop");
        const std::int64_t span = m.payload.at("total_time_length");
        CHECK(move + stop == static_cast<std::int64_t>(ts.size()));
        CHECK(span == ts.back() - ts.front());
        CHECK(std::is_sorted(ts.begin(), ts.end()));
    }
}

TEST_CASE("a stationary route classifies every tuple as a stop") {
    TempDir dir("fix-still");
    fixtures::FixtureSpec spec;
    spec.seed = 4;
    spec.trips_morning = 1;
    spec.trips_afternoon = 0;
    spec.trips_evening = 0;
    spec.trip_duration_mean_s = 60;
    spec.trip_duration_jitter_s = 0;
    spec.route = {{46.1, -64.8}};  // one point: the bus never moves
    const auto fixture = fixtures::generate(spec, dir.str());

    REQUIRE(fixture.ground_truth.size() == 2);
    const auto& trip = fixture.ground_truth[0];
    CHECK(trip.payload.at("total_move") == 0);
    CHECK(trip.payload.at("total_stop") == 13);  // 60 s on a 5 s cadence
    CHECK(trip.payload.at("total_time_length") == 60);

    const auto& daily = fixture.ground_truth[1];
    CHECK(daily.payload.at("morning").at("trip_count") == 1);
    CHECK(daily.payload.at("morning").at("avg_moves") == 0.0);
    CHECK(daily.payload.at("morning").at("avg_stops") == 13.0);
    CHECK(daily.payload.at("morning").at("avg_time_length") == 60.0);
}

TEST_CASE("fixture specs parse the key-value format") {
    const char* text =
        "# generator profile\n"
        "seed = 9\n"
        "days = 2\n"
        "start_date = 2024-03-01\n"
        "trips_morning = 1\n"
        "trips_afternoon = 2\n"
        "trips_evening = 1\n"
        "trips_none = 1\n"
        "trip_duration_mean_s = 300\n"
        "trip_duration_jitter_s = 30\n"
        "route_name = 7\n"
        "route = 46.1:-64.8; 46.102:-64.801\n"
        "dwell = 60:20;150:10\n"
        "dwell_repeat_every_s = 0\n"
        "fault_duplicate_rate = 0.1\n"
        "fault_drop_rate = 0.05\n"
        "fault_reorder_rate = 0.2\n"
        "fault_reorder_max_lag_s = 6\n"
        "fault_malformed_rate = 0.02\n"
        "fault_blank_rate = 0.1\n"
        "fault_target_trip = 1\n"
        "fault_target_drop_slots = 3\n";
    const auto spec = fixtures::FixtureSpec::parse(text);
    CHECK(spec.seed == 9);
    CHECK(spec.days == 2);
    CHECK(spec.start_date == core::Date{2024, 3, 1});
    CHECK(spec.trips_morning == 1);
    CHECK(spec.trips_afternoon == 2);
    CHECK(spec.trips_evening == 1);
    CHECK(spec.trips_none == 1);
    CHECK(spec.trip_duration_mean_s == 300);
    CHECK(spec.trip_duration_jitter_s == 30);
    CHECK(spec.route_name == "7");
    REQUIRE(spec.route.size() == 2);
    CHECK(spec.route[0].latitude() == doctest::Approx(46.1));
    CHECK(spec.route[1].longitude() == doctest::Approx(-64.801));
    REQUIRE(spec.dwell.size() == 2);
    CHECK(spec.dwell[0].offset_s == 60);
    CHECK(spec.dwell[0].dwell_s == 20);
    CHECK(spec.dwell[1].offset_s == 150);
    CHECK(spec.dwell_repeat_every_s == 0);
    CHECK(spec.faults.duplicate_rate == 0.1);
    CHECK(spec.faults.drop_rate == 0.05);
    CHECK(spec.faults.reorder_rate == 0.2);
    CHECK(spec.faults.reorder_max_lag_s == 6);
    CHECK(spec.faults.malformed_rate == 0.02);
    CHECK(spec.faults.blank_rate == 0.1);
    CHECK(spec.faults.target_trip_index == 1);
    CHECK(spec.faults.target_drop_slots == 3);
    CHECK(spec.faults.any());
    CHECK_FALSE(fixtures::FixtureSpec{}.faults.any());

    CHECK_THROWS_AS(fixtures::FixtureSpec::parse("mystery = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(fixtures::FixtureSpec::parse("days = soon\n"), std::invalid_argument);
    CHECK_THROWS_AS(fixtures::FixtureSpec::parse("start_date = 2024-13-01\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(fixtures::FixtureSpec::parse("route = 46.1\n"), std::invalid_argument);
    CHECK_THROWS_AS(fixtures::FixtureSpec::parse("route = 99.0:-64.8\n"), std::invalid_argument);
    CHECK_THROWS_AS(fixtures::FixtureSpec::parse("dwell = 60\n"), std::invalid_argument);
    CHECK_THROWS_AS(fixtures::FixtureSpec::parse("no equals sign\n"), std::invalid_argument);

    TempDir dir("fix-spec");
    testsupport::write_text(dir.str("gen.ini"), text);
    const auto loaded = fixtures::FixtureSpec::load(dir.str("gen.ini"));
    CHECK(loaded.seed == 9);
    CHECK_THROWS_AS(fixtures::FixtureSpec::load(dir.str("absent.ini")), std::runtime_error);
}

TEST_CASE("generate rejects unusable specs") {
    TempDir dir("fix-reject");
    const auto expect_throw = [&](auto mutate) {
        fixtures::FixtureSpec spec = small_spec(1);
        mutate(spec);
        CHECK_THROWS_AS(fixtures::generate(spec, dir.str()), std::invalid_argument);
    };
    expect_throw([](auto& s) { s.days = 0; });
    expect_throw([](auto& s) { s.trips_morning = -1; });
    expect_throw([](auto& s) { s.trip_duration_mean_s = 59; });
    expect_throw([](auto& s) { s.trip_duration_jitter_s = -1; });
    // The none window spans 16,200 s; 100 trips leave 162 s slots, too narrow.
    expect_throw([](auto& s) { s.trips_none = 100; });
}

TEST_CASE("corrupt with an empty plan is the identity") {
    TempDir dir("fix-idem");
    const auto fixture = fixtures::generate(small_spec(41), dir.str());
    const std::string out = dir.str("copy.csv");
    const auto manifest = fixtures::corrupt(fixture.csv_path, out, fixtures::FaultPlan{}, 1);
    CHECK(manifest.duplicates == 0);
    CHECK(manifest.dropped == 0);
    CHECK(manifest.reordered == 0);
    CHECK(manifest.malformed_inserted == 0);
    CHECK(manifest.fields_blanked == 0);
    CHECK(manifest.targeted_slot_drops == 0);
    CHECK(testsupport::read_text(out) == testsupport::read_text(fixture.csv_path));
}

TEST_CASE("corruption manifest counts reconcile with the written file") {
    TempDir dir("fix-manifest");
    const auto fixture = fixtures::generate(small_spec(51), dir.str());
    fixtures::FaultPlan plan;
    plan.duplicate_rate = 0.2;
    plan.drop_rate = 0.1;
    plan.malformed_rate = 0.05;
    plan.blank_rate = 0.2;
    plan.reorder_rate = 0.3;
    plan.reorder_max_lag_s = 9;
    const std::string out = dir.str("corrupted.csv");
    const auto manifest = fixtures::corrupt(fixture.csv_path, out, plan, 5);
    CHECK(manifest.duplicates > 0);
    CHECK(manifest.dropped > 0);
    CHECK(manifest.malformed_inserted > 0);
    CHECK(manifest.fields_blanked > 0);
    CHECK(manifest.reordered > 0);

    const auto rows = parse_fixture_csv(out);
    CHECK(static_cast<std::int64_t>(rows.size()) ==
          fixture.data_rows + manifest.duplicates + manifest.malformed_inserted -
              manifest.dropped);

    std::int64_t malformed = 0;
    std::int64_t blank_cells = 0;
    for (const auto& row : rows) {
        if (row.cells.size() != core::kCsvColumns.size()) {
            ++malformed;
            continue;
        }
        for (const auto& cell : row.cells) {
            if (cell.empty()) ++blank_cells;
        }
    }
    CHECK(malformed == manifest.malformed_inserted);
    CHECK(blank_cells == manifest.fields_blanked);  // clean fixtures have no empty cells
}

TEST_CASE("bounded reordering never exceeds the promised lag") {
    TempDir dir("fix-lag");
    const auto fixture = fixtures::generate(small_spec(61), dir.str());
    fixtures::FaultPlan plan;
    plan.reorder_rate = 1.0;
    plan.reorder_max_lag_s = 10;
    const std::string out = dir.str("shuffled.csv");
    const auto manifest = fixtures::corrupt(fixture.csv_path, out, plan, 3);
    CHECK(manifest.reordered > 0);

    const auto clean = parse_fixture_csv(fixture.csv_path);
    const auto moved = parse_fixture_csv(out);
    REQUIRE(moved.size() == clean.size());

    std::multiset<std::int64_t> clean_ts;
    for (const auto& row : clean) clean_ts.insert(row.ts);
    std::multiset<std::int64_t> moved_ts;
    std::int64_t newest = INT64_MIN;
    for (const auto& row : moved) {
        moved_ts.insert(row.ts);
        newest = std::max(newest, row.ts);
        CHECK(row.ts >= newest - plan.reorder_max_lag_s);  // within the reorder window
    }
    CHECK(moved_ts == clean_ts);  // a permutation, nothing lost or invented
}

TEST_CASE("targeted drops vacate exactly the requested number of slots") {
    TempDir dir("fix-target");
    fixtures::FixtureSpec spec = small_spec(71);
    spec.trip_duration_mean_s = 600;
    spec.trip_duration_jitter_s = 0;
    const auto fixture = fixtures::generate(spec, dir.str());

    fixtures::FaultPlan plan;
    plan.target_trip_index = 1;  // the afternoon trip
    plan.target_drop_slots = 7;
    const std::string out = dir.str("gapped.csv");
    const auto manifest = fixtures::corrupt(fixture.csv_path, out, plan, 7);
    CHECK(manifest.targeted_slot_drops == 7);

    const auto rows = parse_fixture_csv(out);
    std::map<std::string, std::vector<std::int64_t>> ts_by_trip;
    std::vector<std::string> order;
    for (const auto& row : rows) {
        if (ts_by_trip.find(row.trip_id) == ts_by_trip.end()) order.push_back(row.trip_id);
        ts_by_trip[row.trip_id].push_back(row.ts);
    }
    REQUIRE(order.size() == 2);

    const auto missing_slots = [](const std::vector<std::int64_t>& ts) {
        const std::int64_t first = ts.front();
        const std::int64_t last = ts.back();
        std::set<std::int64_t> occupied;
        for (const std::int64_t t : ts) occupied.insert((t - first + 2) / 5);
        const std::int64_t expected = (last - first + 2) / 5 + 1;
        return expected - static_cast<std::int64_t>(occupied.size());
    };
    CHECK(missing_slots(ts_by_trip[order[0]]) == 0);
    CHECK(missing_slots(ts_by_trip[order[1]]) == 7);

    // A trip that cannot spare the rows is a planning error, not silent data.
    fixtures::FaultPlan too_many;
    too_many.target_trip_index = 0;
    too_many.target_drop_slots = 500;
    CHECK_THROWS_AS(fixtures::corrupt(fixture.csv_path, dir.str("no.csv"), too_many, 1),
                    std::invalid_argument);
}

TEST_CASE("corrupt rejects input that is not a clean fixture") {
    TempDir dir("fix-badin");
    CHECK_THROWS_AS(
        fixtures::corrupt(dir.str("absent.csv"), dir.str("out.csv"), fixtures::FaultPlan{}, 1),
        std::runtime_error);

    const std::string no_header = dir.str("no-header.csv");
    testsupport::write_text(no_header, "a,b,c\n1,2,3\n");
    CHECK_THROWS_AS(fixtures::corrupt(no_header, dir.str("out.csv"), fixtures::FaultPlan{}, 1),
                    std::invalid_argument);

    const std::string short_row = dir.str("short-row.csv");
    testsupport::write_text(short_row, core::csv_header_line() + "\n1,2,3\n");
    CHECK_THROWS_AS(fixtures::corrupt(short_row, dir.str("out.csv"), fixtures::FaultPlan{}, 1),
                    std::invalid_argument);
}
