#include "eband/channel_plan.hpp"

#include <cmath>

#include "doctest.h"
#include "eband/errors.hpp"

using namespace eband;

namespace {

/// Plan-level structural checks shared by every region.
void check_plan_structure(const ChannelPlan& plan) {
  REQUIRE(plan.bands.size() == 2);
  CHECK(plan.bands[0].start_hz == 71.0e9);
  CHECK(plan.bands[0].stop_hz == 76.0e9);
  CHECK(plan.bands[1].start_hz == 81.0e9);
  CHECK(plan.bands[1].stop_hz == 86.0e9);

  // Channels are ordered, disjoint, and inside a band minus its guards.
  for (std::size_t i = 0; i < plan.channels.size(); ++i) {
    const PlanChannel& ch = plan.channels[i];
    CHECK(ch.index == static_cast<int>(i) + 1);
    CHECK(ch.stop_hz > ch.start_hz);
    if (i > 0) CHECK(ch.start_hz >= plan.channels[i - 1].stop_hz);

    bool in_band = false;
    for (const FrequencySpan& band : plan.bands)
      if (ch.start_hz >= band.start_hz && ch.stop_hz <= band.stop_hz) in_band = true;
    CHECK(in_band);

    for (const FrequencySpan& guard : plan.guard_bands) {
      const bool overlaps = ch.start_hz < guard.stop_hz && guard.start_hz < ch.stop_hz;
      CHECK_FALSE(overlaps);
    }
  }
}

}  // namespace

TEST_CASE("US/Canada plan: eight 1.25 GHz segments, no guards") {
  const ChannelPlan plan = channel_plan(Region::UsCanada);
  check_plan_structure(plan);
  REQUIRE(plan.channels.size() == 8);
  CHECK(plan.guard_bands.empty());
  double total = 0.0;
  for (const PlanChannel& ch : plan.channels) {
    CHECK(ch.width_hz() == doctest::Approx(1.25e9));
    total += ch.width_hz();
  }
  CHECK(total == doctest::Approx(10.0e9));
  CHECK(plan.channels[0].start_hz == 71.0e9);
  CHECK(plan.channels[3].stop_hz == 76.0e9);
  CHECK(plan.channels[4].start_hz == 81.0e9);
  CHECK(plan.channels[7].stop_hz == 86.0e9);
}

TEST_CASE("UK/Australia plan: edge guards only, no channel raster") {
  const ChannelPlan plan = channel_plan(Region::UkAustralia);
  check_plan_structure(plan);
  CHECK(plan.channels.empty());
  REQUIRE(plan.guard_bands.size() == 4);
  for (const FrequencySpan& guard : plan.guard_bands)
    CHECK(guard.width_hz() == doctest::Approx(125e6));
}

TEST_CASE("Europe plan: nineteen 250 MHz channels per band inside the guards") {
  const ChannelPlan plan = channel_plan(Region::Europe);
  check_plan_structure(plan);
  REQUIRE(plan.channels.size() == 38);
  REQUIRE(plan.guard_bands.size() == 4);

  double total = 0.0;
  for (const PlanChannel& ch : plan.channels) {
    CHECK(ch.width_hz() == doctest::Approx(250e6));
    total += ch.width_hz();
  }
  CHECK(total == doctest::Approx(2.0 * 4.75e9));

  CHECK(plan.channels[0].start_hz == doctest::Approx(71.125e9));
  CHECK(plan.channels[18].stop_hz == doctest::Approx(75.875e9));
  CHECK(plan.channels[19].start_hz == doctest::Approx(81.125e9));
  CHECK(plan.channels[37].stop_hz == doctest::Approx(85.875e9));
}

TEST_CASE("aggregating the full lower Europe band yields 4.75 GHz") {
  const ChannelPlan plan = channel_plan(Region::Europe);
  std::vector<int> indices;
  for (int i = 1; i <= 19; ++i) indices.push_back(i);
  const AggregateSpan span = aggregate_channels(plan, indices);
  CHECK(span.width_hz == doctest::Approx(4.75e9));
  CHECK(span.start_hz == doctest::Approx(71.125e9));
  CHECK(span.stop_hz == doctest::Approx(75.875e9));
  CHECK(span.channel_count == 19);
}

TEST_CASE("a single channel aggregates to its own extent") {
  const ChannelPlan plan = channel_plan(Region::Europe);
  const AggregateSpan span = aggregate_channels(plan, {7});
  CHECK(span.start_hz == doctest::Approx(plan.channels[6].start_hz));
  CHECK(span.stop_hz == doctest::Approx(plan.channels[6].stop_hz));
  CHECK(span.channel_count == 1);
}

TEST_CASE("aggregation rules are enforced") {
  const ChannelPlan eu = channel_plan(Region::Europe);
  CHECK_THROWS_AS(aggregate_channels(eu, {1, 3}), AggregationError);
  CHECK_THROWS_AS(aggregate_channels(eu, {}), AggregationError);
  CHECK_THROWS_AS(aggregate_channels(eu, {0}), AggregationError);
  CHECK_THROWS_AS(aggregate_channels(eu, {39}), AggregationError);
  CHECK_THROWS_AS(aggregate_channels(eu, {5, 5}), AggregationError);
  CHECK_THROWS_AS(aggregate_channels(eu, {19, 20}), AggregationError);  // crosses 76-81

  // More than 19 in Europe is a policy limit, not a geometry problem.
  std::vector<int> twenty;
  for (int i = 1; i <= 20; ++i) twenty.push_back(i);
  CHECK_THROWS_AS(aggregate_channels(eu, twenty), PolicyError);

  const ChannelPlan us = channel_plan(Region::UsCanada);
  const AggregateSpan whole_low = aggregate_channels(us, {1, 2, 3, 4});
  CHECK(whole_low.width_hz == doctest::Approx(5.0e9));
  CHECK_THROWS_AS(aggregate_channels(us, {4, 5}), AggregationError);  // crosses the gap

  const ChannelPlan uk = channel_plan(Region::UkAustralia);
  CHECK_THROWS_AS(aggregate_channels(uk, {1}), AggregationError);  // no raster to aggregate
}
