#include "eband/airframe.hpp"

#include <cstdio>

#include "eband/errors.hpp"

namespace eband {

namespace {

bool is_power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

std::string format_hz(double hz) {
  char buf[64];
  if (hz >= 1e6)
    std::snprintf(buf, sizeof buf, "%.6g MHz", hz / 1e6);
  else if (hz >= 1e3)
    std::snprintf(buf, sizeof buf, "%.6g kHz", hz / 1e3);
  else
    std::snprintf(buf, sizeof buf, "%.6g Hz", hz);
  return buf;
}

}  // namespace

void Numerology::check_consistency() const {
  if (sampling_rate_hz <= 0 || subcarrier_spacing_hz <= 0)
    throw NumerologyError("sampling rate and subcarrier spacing must be positive");
  if (fft_size <= 0 || symbols_per_slot <= 0 || slots_per_subframe <= 0 ||
      subframes_per_frame <= 0)
    throw NumerologyError("frame dimensions must be positive");
  if (cp_first_samples < 0 || cp_rest_samples < 0)
    throw NumerologyError("cyclic prefix lengths must be non-negative");

  if (sampling_rate_hz % subcarrier_spacing_hz != 0)
    throw NumerologyError("failed identity: sampling_rate = fft_size * subcarrier_spacing "
                          "(rate is not divisible by the spacing)");
  if (sampling_rate_hz / subcarrier_spacing_hz != fft_size)
    throw NumerologyError("failed identity: sampling_rate / subcarrier_spacing = fft_size");

  if (sampling_rate_hz % 1000 != 0)
    throw NumerologyError("failed identity: subframe duration 1 ms requires the sampling "
                          "rate to be a multiple of 1 kHz");
  const std::int64_t subframe_target = sampling_rate_hz / 1000;
  if (samples_per_subframe() != subframe_target)
    throw NumerologyError("failed identity: slots_per_subframe * samples_per_slot = "
                          "sampling_rate * 1 ms (" + std::to_string(samples_per_subframe()) +
                          " != " + std::to_string(subframe_target) + " samples)");
}

Numerology emb_default_numerology() {
  Numerology n;
  n.sampling_rate_hz = 245760000;     // 30.72 MHz * 8
  n.subcarrier_spacing_hz = 480000;
  n.fft_size = 512;
  n.symbols_per_slot = 14;
  n.cp_first_samples = 44;
  n.cp_rest_samples = 36;
  n.slots_per_subframe = 32;
  n.subframes_per_frame = 10;
  return n;
}

FrameLayout build_frame_layout(const Numerology& n) {
  n.check_consistency();

  FrameLayout layout;
  layout.samples_per_slot = n.samples_per_slot();
  layout.samples_per_subframe = n.samples_per_subframe();
  layout.samples_per_frame = n.samples_per_frame();
  layout.symbols.reserve(static_cast<std::size_t>(n.subframes_per_frame) *
                         n.slots_per_subframe * n.symbols_per_slot);

  std::int64_t cursor = 0;
  std::int64_t cp_total = 0;
  for (int sf = 0; sf < n.subframes_per_frame; ++sf) {
    for (int slot = 0; slot < n.slots_per_subframe; ++slot) {
      for (int sym = 0; sym < n.symbols_per_slot; ++sym) {
        SymbolRecord rec;
        rec.frame = 0;
        rec.subframe = sf;
        rec.slot = slot;
        rec.symbol = sym;
        rec.start_sample = cursor;
        rec.cp_samples = (sym == 0) ? n.cp_first_samples : n.cp_rest_samples;
        rec.useful_samples = n.fft_size;
        cursor += rec.cp_samples + rec.useful_samples;
        cp_total += rec.cp_samples;
        layout.symbols.push_back(rec);
      }
    }
  }

  if (cursor != layout.samples_per_frame)
    throw NumerologyError("failed identity: symbols do not tile the frame exactly");
  layout.cp_overhead =
      static_cast<double>(cp_total) / static_cast<double>(layout.samples_per_frame);
  return layout;
}

void write_frame_layout_csv(std::ostream& os, const FrameLayout& layout) {
  os << "frame,subframe,slot,symbol,start_sample,cp_samples,useful_samples\n";
  for (const SymbolRecord& r : layout.symbols) {
    os << r.frame << ',' << r.subframe << ',' << r.slot << ',' << r.symbol << ','
       << r.start_sample << ',' << r.cp_samples << ',' << r.useful_samples << '\n';
  }
}

double doppler_shift_hz(double speed_mps, Frequency f) {
  if (speed_mps < 0.0) throw DomainError("speed must be >= 0 m/s");
  return speed_mps * f.hz() / kTimingLightSpeedMps;
}

double coherence_time_s(double doppler_hz) {
  if (!(doppler_hz > 0.0)) throw DomainError("coherence time requires a positive Doppler shift");
  return 1.0 / doppler_hz;
}

ValidationReport validate_numerology(const Numerology& n, double max_speed_mps,
                                     Frequency f_max, double clock_ppm,
                                     double max_delay_spread_s,
                                     double doppler_margin_factor) {
  if (max_speed_mps < 0.0 || clock_ppm < 0.0 || max_delay_spread_s < 0.0 ||
      !(doppler_margin_factor > 0.0))
    throw DomainError("validation inputs must be non-negative (margin factor positive)");

  ValidationReport report;
  const double spacing = static_cast<double>(n.subcarrier_spacing_hz);

  {
    ConstraintCheck c;
    c.name = "fft_power_of_two";
    c.value = n.fft_size;
    c.limit = 0.0;
    c.pass = is_power_of_two(n.fft_size);
    c.detail = "FFT size " + std::to_string(n.fft_size) +
               (c.pass ? " is a power of two" : " is not a power of two");
    report.checks.push_back(c);
  }
  {
    ConstraintCheck c;
    c.name = "sampling_grid";
    const bool divisible = n.subcarrier_spacing_hz > 0 &&
                           n.sampling_rate_hz % n.subcarrier_spacing_hz == 0;
    const std::int64_t quotient =
        divisible ? n.sampling_rate_hz / n.subcarrier_spacing_hz : 0;
    c.pass = divisible && is_power_of_two(quotient) && quotient == n.fft_size;
    c.value = static_cast<double>(quotient);
    c.limit = n.fft_size;
    c.detail = divisible ? "sampling rate / spacing = " + std::to_string(quotient)
                         : "sampling rate is not a multiple of the subcarrier spacing";
    report.checks.push_back(c);
  }
  {
    ConstraintCheck c;
    c.name = "doppler_margin";
    c.value = doppler_shift_hz(max_speed_mps, f_max);
    c.limit = spacing / doppler_margin_factor;
    c.pass = c.value < c.limit;
    c.detail = "Doppler " + format_hz(c.value) + " vs " + format_hz(c.limit);
    report.checks.push_back(c);
  }
  {
    ConstraintCheck c;
    c.name = "clock_drift";
    c.value = clock_ppm * 1e-6 * f_max.hz();
    c.limit = 2.0 * spacing;
    c.pass = c.value < c.limit;
    c.detail = "drift " + format_hz(c.value) + " vs " + format_hz(c.limit);
    report.checks.push_back(c);
  }
  {
    ConstraintCheck c;
    c.name = "cp_delay_spread";
    c.value = static_cast<double>(n.cp_rest_samples) / static_cast<double>(n.sampling_rate_hz);
    c.limit = max_delay_spread_s;
    c.pass = c.value > c.limit;
    char buf[96];
    std::snprintf(buf, sizeof buf, "CP %.4g us vs delay spread %.4g us", c.value * 1e6,
                  c.limit * 1e6);
    c.detail = buf;
    report.checks.push_back(c);
  }
  return report;
}

}  // namespace eband
