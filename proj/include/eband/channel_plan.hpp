#ifndef EBAND_CHANNEL_PLAN_HPP
#define EBAND_CHANNEL_PLAN_HPP

#include <string>
#include <vector>

#include "eband/units.hpp"

namespace eband {

enum class Region { UsCanada, UkAustralia, Europe };

std::string region_name(Region r);

struct FrequencySpan {
  double start_hz = 0.0;
  double stop_hz = 0.0;

  double width_hz() const { return stop_hz - start_hz; }
};

struct PlanChannel {
  int index = 0;  // 1-based, lower band first
  double start_hz = 0.0;
  double stop_hz = 0.0;

  double width_hz() const { return stop_hz - start_hz; }
};

/// Regional E-band channelization over 71-76 and 81-86 GHz.
struct ChannelPlan {
  Region region = Region::Europe;
  std::vector<FrequencySpan> bands;
  std::vector<PlanChannel> channels;
  std::vector<FrequencySpan> guard_bands;
  // Channels may run TDD or FDD; the plan carries no duplexing pairing.
  std::vector<std::string> duplex_modes{"TDD", "FDD"};
};

/// US/Canada: eight 1.25 GHz segments, no guards, unlimited aggregation.
/// UK/Australia: 125 MHz edge guards, no interior channel raster.
/// Europe: 125 MHz edge guards, nineteen 250 MHz channels per band,
/// aggregation of 1 to 19 contiguous channels.
ChannelPlan channel_plan(Region region);

struct AggregateSpan {
  double start_hz = 0.0;
  double stop_hz = 0.0;
  double width_hz = 0.0;
  int channel_count = 0;
};

/// Merge a contiguous run of same-band channel indices into one span.
AggregateSpan aggregate_channels(const ChannelPlan& plan, const std::vector<int>& indices);

}  // namespace eband

#endif  // EBAND_CHANNEL_PLAN_HPP
