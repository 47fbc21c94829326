#ifndef EBAND_AIRFRAME_HPP
#define EBAND_AIRFRAME_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "eband/units.hpp"

namespace eband {

// Round-figure propagation speed used in air-interface timing budgets
// (Doppler, clock drift). Kept separate from the wavelength constant on
// purpose: timing margins are quoted against the 3e8 convention.
inline constexpr double kTimingLightSpeedMps = 3.0e8;

/// OFDM numerology. Rates are integer hertz so every slot/subframe/frame
/// identity can be checked in exact integer arithmetic.
struct Numerology {
  std::int64_t sampling_rate_hz = 0;
  std::int64_t subcarrier_spacing_hz = 0;
  int fft_size = 0;
  int symbols_per_slot = 0;
  int cp_first_samples = 0;
  int cp_rest_samples = 0;
  int slots_per_subframe = 0;
  int subframes_per_frame = 0;

  std::int64_t samples_per_slot() const {
    return static_cast<std::int64_t>(symbols_per_slot) * fft_size + cp_first_samples +
           static_cast<std::int64_t>(symbols_per_slot - 1) * cp_rest_samples;
  }
  std::int64_t samples_per_subframe() const {
    return samples_per_slot() * slots_per_subframe;
  }
  std::int64_t samples_per_frame() const {
    return samples_per_subframe() * subframes_per_frame;
  }

  /// Throws NumerologyError naming the first failed identity.
  void check_consistency() const;
};

/// 245.76 MHz sampling, 480 kHz spacing, 512-point FFT, 14 symbols per
/// slot with 44/36-sample CPs, 32 slots per 1 ms subframe, 10 ms frame.
Numerology emb_default_numerology();

struct SymbolRecord {
  int frame = 0;
  int subframe = 0;
  int slot = 0;
  int symbol = 0;
  std::int64_t start_sample = 0;
  int cp_samples = 0;
  int useful_samples = 0;
};

struct FrameLayout {
  std::vector<SymbolRecord> symbols;
  std::int64_t samples_per_slot = 0;
  std::int64_t samples_per_subframe = 0;
  std::int64_t samples_per_frame = 0;
  double cp_overhead = 0.0;  // total CP samples / total samples
};

/// Sample-accurate expansion of one frame; symbols tile each slot exactly.
FrameLayout build_frame_layout(const Numerology& n);

/// CSV columns: frame,subframe,slot,symbol,start_sample,cp_samples,useful_samples.
void write_frame_layout_csv(std::ostream& os, const FrameLayout& layout);

/// Doppler shift v * f / c with the 3e8 timing convention.
double doppler_shift_hz(double speed_mps, Frequency f);

/// Coherence time 1 / f_d.
double coherence_time_s(double doppler_hz);

struct ConstraintCheck {
  std::string name;
  bool pass = false;
  double value = 0.0;   // quantity under test
  double limit = 0.0;   // threshold it is compared against
  std::string detail;
};

struct ValidationReport {
  std::vector<ConstraintCheck> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Five design constraints: power-of-two FFT, sampling/spacing grid
/// consistency, Doppler margin, clock-drift margin, CP delay-spread margin.
/// Failures are report entries, not errors.
ValidationReport validate_numerology(const Numerology& n, double max_speed_mps,
                                     Frequency f_max, double clock_ppm,
                                     double max_delay_spread_s,
                                     double doppler_margin_factor = 10.0);

}  // namespace eband

#endif  // EBAND_AIRFRAME_HPP
