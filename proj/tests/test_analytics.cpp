#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "edgetransit/analytics/day_fold.hpp"
#include "edgetransit/analytics/trip_fold.hpp"
#include "edgetransit/core/geo.hpp"
#include "edgetransit/fixtures/fixture.hpp"

using namespace edgetransit;

namespace {

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

core::GeoPoint north_of(const core::GeoPoint& base, double meters) {
    return {base.latitude() + meters / (core::kEarthRadiusM * kDegToRad), base.longitude()};
}

core::AvlTuple tuple_at(std::int64_t ts, const core::GeoPoint& pos,
                        const std::string& trip_id = "t-1") {
    core::AvlTuple t;
    t.timestamp_s = ts;
    t.position = pos;
    t.route_name = "51";
    t.trip_id = trip_id;
    t.trip_date = {2024, 2, 12};
    t.trip_start_time = {5, 30, 0};
    return t;
}

core::TripSummary summary_at(int hour, std::int64_t time_len, std::int64_t moves,
                             std::int64_t stops) {
    core::TripSummary s;
    s.trip_id = "t-" + std::to_string(hour);
    s.date = {2024, 2, 12};
    s.start_time = {hour, 0, 0};
    s.total_move = moves;
    s.total_stop = stops;
    s.total_time_length_s = time_len;
    return s;
}

}  // namespace

TEST_CASE("first tuple of a trip is a Stop") {
    analytics::TripState state;
    const auto ann = annotate(state, tuple_at(1000, {46.09, -64.77}));
    CHECK(ann.label == core::Motion::kStop);
    CHECK(ann.tuple_timestamp_s == 1000);
    CHECK(state.stop_count == 1);
    CHECK(state.move_count == 0);
    CHECK(state.first_timestamp_s == 1000);
    CHECK(state.date == core::Date{2024, 2, 12});
    CHECK(state.start_time == core::TimeOfDay{5, 30, 0});
}

TEST_CASE("annotation classifies by displacement from the previous point") {
    analytics::TripState state;
    const core::GeoPoint base{46.09, -64.77};
    annotate(state, tuple_at(0, base));

    // 111.19 m north: a Move.
    auto ann = annotate(state, tuple_at(5, {46.091, -64.77}));
    CHECK(ann.label == core::Motion::kMove);

    // 5 m from there: a Stop.
    ann = annotate(state, tuple_at(10, north_of({46.091, -64.77}, 5.0)));
    CHECK(ann.label == core::Motion::kStop);

    CHECK(state.move_count == 1);
    CHECK(state.stop_count == 2);
    CHECK(state.last_timestamp_s == 10);
}

TEST_CASE("annotation honors a custom threshold") {
    const core::GeoPoint base{46.09, -64.77};
    const auto at_18m = north_of(base, 18.0);

    analytics::TripState strict;
    annotate(strict, tuple_at(0, base), 15.0);
    CHECK(annotate(strict, tuple_at(5, at_18m), 15.0).label == core::Motion::kMove);

    analytics::TripState loose;
    annotate(loose, tuple_at(0, base), 20.0);
    CHECK(annotate(loose, tuple_at(5, at_18m), 20.0).label == core::Motion::kStop);
}

TEST_CASE("annotation rejects foreign trips and non-increasing timestamps") {
    analytics::TripState state;
    annotate(state, tuple_at(100, {46.09, -64.77}));
    CHECK_THROWS_AS(annotate(state, tuple_at(105, {46.09, -64.77}, "t-2")), std::logic_error);
    CHECK_THROWS_AS(annotate(state, tuple_at(100, {46.09, -64.77})), std::logic_error);
    CHECK_THROWS_AS(annotate(state, tuple_at(95, {46.09, -64.77})), std::logic_error);
}

TEST_CASE("finalize_trip emits the six-field aggregate") {
    analytics::TripState state;
    CHECK_THROWS_AS(analytics::finalize_trip(state), std::logic_error);

    const core::GeoPoint base{46.09, -64.77};
    annotate(state, tuple_at(1000, base));
    annotate(state, tuple_at(1005, north_of(base, 40.0)));
    annotate(state, tuple_at(1010, north_of(base, 41.0)));

    const auto s = analytics::finalize_trip(state);
    CHECK(s.trip_id == "t-1");
    CHECK(s.date == core::Date{2024, 2, 12});
    CHECK(s.start_time == core::TimeOfDay{5, 30, 0});
    CHECK(s.total_move == 1);
    CHECK(s.total_stop == 2);
    CHECK(s.total_time_length_s == 10);
}

TEST_CASE("streaming fold equals a batch recount over 540 tuples") {
    // 45 minutes of 5 s cadence: walk, dwell, walk, with displacements
    // safely away from the threshold.
    fixtures::DeterministicRng rng(1234);
    const core::GeoPoint origin{46.05, -64.80};

    std::vector<core::AvlTuple> tuples;
    double offset_m = 0.0;
    for (int i = 0; i < 540; ++i) {
        const bool dwelling = (i / 60) % 3 == 1;  // alternate minute blocks
        if (!dwelling) {
            offset_m += 35.0 + rng.next_unit() * 10.0;  // 35-45 m per step
        } else {
            offset_m += rng.next_unit() * 2.0;  // sub-2 m drift
        }
        tuples.push_back(tuple_at(5000 + i * 5, north_of(origin, offset_m)));
    }

    analytics::TripState state;
    for (const auto& t : tuples) annotate(state, t);
    const auto streamed = analytics::finalize_trip(state);

    // Batch recount, straight over the stored positions.
    std::int64_t moves = 0;
    std::int64_t stops = 1;
    for (std::size_t i = 1; i < tuples.size(); ++i) {
        const double d =
            core::great_circle_distance(tuples[i - 1].position, tuples[i].position);
        (d < 15.0 ? stops : moves) += 1;
    }

    CHECK(streamed.total_move == moves);
    CHECK(streamed.total_stop == stops);
    CHECK(streamed.total_move + streamed.total_stop == 540);
    CHECK(streamed.total_time_length_s == 539 * 5);
    CHECK(streamed.total_move > 0);
    CHECK(streamed.total_stop > 1);
}

TEST_CASE("day fold routes trips into start-hour dayparts") {
    analytics::DayState day;
    day.date = {2024, 2, 12};

    fold_trip_into_day(day, summary_at(5, 3056, 240, 28));
    fold_trip_into_day(day, summary_at(12, 2000, 180, 20));
    fold_trip_into_day(day, summary_at(13, 1500, 140, 15));
    fold_trip_into_day(day, summary_at(23, 900, 80, 10));
    fold_trip_into_day(day, summary_at(2, 600, 50, 5));  // none: totals only

    CHECK(day.morning.trip_count == 2);
    CHECK(day.afternoon.trip_count == 1);
    CHECK(day.evening.trip_count == 1);
    CHECK(day.total_trips == 5);
    CHECK(day.morning.sum_time_length_s == 5056);

    const auto daily = analytics::finalize_day(day);
    CHECK(daily.date == core::Date{2024, 2, 12});
    CHECK(daily.morning.trip_count == 2);
    CHECK(daily.morning.avg_time_length_s == 2528.0);
    CHECK(daily.morning.avg_moves == 210.0);
    CHECK(daily.morning.avg_stops == 24.0);
    CHECK(daily.afternoon.avg_time_length_s == 1500.0);
    CHECK(daily.evening.avg_time_length_s == 900.0);
}

TEST_CASE("day fold rejects date mismatches") {
    analytics::DayState day;
    day.date = {2024, 2, 12};
    auto s = summary_at(6, 1000, 10, 2);
    s.date = {2024, 2, 13};
    CHECK_THROWS_AS(fold_trip_into_day(day, s), std::logic_error);
}

TEST_CASE("zero-trip dayparts have no averages") {
    analytics::DayState day;
    day.date = {2024, 2, 12};
    fold_trip_into_day(day, summary_at(6, 3056, 240, 28));

    const auto daily = analytics::finalize_day(day);
    CHECK(daily.morning.trip_count == 1);
    CHECK(daily.morning.avg_time_length_s == 3056.0);
    CHECK(daily.afternoon.trip_count == 0);
    CHECK_FALSE(daily.afternoon.avg_time_length_s.has_value());
    CHECK_FALSE(daily.afternoon.avg_moves.has_value());
    CHECK_FALSE(daily.afternoon.avg_stops.has_value());
    CHECK(daily.evening.trip_count == 0);
    CHECK_FALSE(daily.evening.avg_stops.has_value());
}

TEST_CASE("averages are the real-valued mean of the daypart") {
    analytics::DayState day;
    day.date = {2024, 2, 12};
    fold_trip_into_day(day, summary_at(6, 2600, 201, 30));
    fold_trip_into_day(day, summary_at(8, 2800, 200, 31));

    const auto daily = analytics::finalize_day(day);
    CHECK(daily.morning.avg_time_length_s == 2700.0);
    CHECK(daily.morning.avg_moves == 200.5);
    CHECK(daily.morning.avg_stops == 30.5);
}

TEST_CASE("day fold is additive across any trip split") {
    // Folding trips one by one equals summing them wholesale: the fold is a
    // monoid action, so stream order and batching cannot matter.
    fixtures::DeterministicRng rng(55);
    std::vector<core::TripSummary> trips;
    for (int i = 0; i < 60; ++i) {
        trips.push_back(summary_at(static_cast<int>(rng.next_in(0, 23)),
                                   rng.next_in(300, 4000), rng.next_in(10, 400),
                                   rng.next_in(1, 60)));
    }

    analytics::DayState streamed;
    streamed.date = {2024, 2, 12};
    for (const auto& t : trips) fold_trip_into_day(streamed, t);

    std::array<std::int64_t, 4> count{}, time{}, moves{}, stops{};
    for (const auto& t : trips) {
        const auto part = core::daypart_of(t.start_time);
        const auto idx = static_cast<std::size_t>(part);
        count[idx] += 1;
        time[idx] += t.total_time_length_s;
        moves[idx] += t.total_move;
        stops[idx] += t.total_stop;
    }

    CHECK(streamed.morning.trip_count ==
          count[static_cast<std::size_t>(core::Daypart::kMorning)]);
    CHECK(streamed.afternoon.sum_time_length_s ==
          time[static_cast<std::size_t>(core::Daypart::kAfternoon)]);
    CHECK(streamed.evening.sum_moves ==
          moves[static_cast<std::size_t>(core::Daypart::kEvening)]);
    CHECK(streamed.evening.sum_stops ==
          stops[static_cast<std::size_t>(core::Daypart::kEvening)]);
    CHECK(streamed.total_trips == 60);
}
