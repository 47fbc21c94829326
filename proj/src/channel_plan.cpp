#include "eband/channel_plan.hpp"

#include <algorithm>

#include "eband/errors.hpp"

namespace eband {

namespace {

constexpr double kLowBandStartHz = 71.0e9;
constexpr double kLowBandStopHz = 76.0e9;
constexpr double kHighBandStartHz = 81.0e9;
constexpr double kHighBandStopHz = 86.0e9;
constexpr double kGuardWidthHz = 125.0e6;
constexpr double kEuChannelWidthHz = 250.0e6;
constexpr int kEuChannelsPerBand = 19;
constexpr double kUsSegmentWidthHz = 1.25e9;
constexpr int kUsSegmentsPerBand = 4;

void add_edge_guards(ChannelPlan& plan) {
  plan.guard_bands.push_back({kLowBandStartHz, kLowBandStartHz + kGuardWidthHz});
  plan.guard_bands.push_back({kLowBandStopHz - kGuardWidthHz, kLowBandStopHz});
  plan.guard_bands.push_back({kHighBandStartHz, kHighBandStartHz + kGuardWidthHz});
  plan.guard_bands.push_back({kHighBandStopHz - kGuardWidthHz, kHighBandStopHz});
}

/// Band index (0 = 71-76, 1 = 81-86) that fully contains a channel.
int band_of(const ChannelPlan& plan, const PlanChannel& ch) {
  for (std::size_t b = 0; b < plan.bands.size(); ++b)
    if (ch.start_hz >= plan.bands[b].start_hz && ch.stop_hz <= plan.bands[b].stop_hz)
      return static_cast<int>(b);
  return -1;
}

}  // namespace

std::string region_name(Region r) {
  switch (r) {
    case Region::UsCanada: return "us_canada";
    case Region::UkAustralia: return "uk_australia";
    case Region::Europe: return "europe";
  }
  return "unknown";
}

ChannelPlan channel_plan(Region region) {
  ChannelPlan plan;
  plan.region = region;
  plan.bands = {{kLowBandStartHz, kLowBandStopHz}, {kHighBandStartHz, kHighBandStopHz}};

  switch (region) {
    case Region::UsCanada: {
      int index = 1;
      for (const FrequencySpan& band : plan.bands) {
        for (int k = 0; k < kUsSegmentsPerBand; ++k) {
          const double start = band.start_hz + k * kUsSegmentWidthHz;
          plan.channels.push_back({index++, start, start + kUsSegmentWidthHz});
        }
      }
      break;
    }
    case Region::UkAustralia:
      add_edge_guards(plan);
      break;
    case Region::Europe: {
      add_edge_guards(plan);
      int index = 1;
      for (const FrequencySpan& band : plan.bands) {
        const double usable_start = band.start_hz + kGuardWidthHz;
        for (int k = 0; k < kEuChannelsPerBand; ++k) {
          const double start = usable_start + k * kEuChannelWidthHz;
          plan.channels.push_back({index++, start, start + kEuChannelWidthHz});
        }
      }
      break;
    }
  }
  return plan;
}

AggregateSpan aggregate_channels(const ChannelPlan& plan, const std::vector<int>& indices) {
  if (indices.empty()) throw AggregationError("no channel indices given");

  std::vector<int> sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw AggregationError("duplicate channel index in aggregation request");

  const int max_index = static_cast<int>(plan.channels.size());
  for (int idx : sorted)
    if (idx < 1 || idx > max_index)
      throw AggregationError("channel index " + std::to_string(idx) +
                             " does not exist in the " + region_name(plan.region) + " plan");

  if (plan.region == Region::Europe && sorted.size() > kEuChannelsPerBand)
    throw PolicyError("Europe permits aggregating at most 19 channels, got " +
                      std::to_string(sorted.size()));

  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] != sorted[i - 1] + 1)
      throw AggregationError("channels must form a contiguous run; gap between " +
                             std::to_string(sorted[i - 1]) + " and " +
                             std::to_string(sorted[i]));

  const PlanChannel& first = plan.channels[sorted.front() - 1];
  const PlanChannel& last = plan.channels[sorted.back() - 1];
  if (band_of(plan, first) != band_of(plan, last))
    throw AggregationError("aggregation cannot cross the 76-81 GHz gap");

  AggregateSpan span;
  span.start_hz = first.start_hz;
  span.stop_hz = last.stop_hz;
  span.width_hz = span.stop_hz - span.start_hz;
  span.channel_count = static_cast<int>(sorted.size());
  return span;
}

}  // namespace eband
