#ifndef EBAND_PROPAGATION_HPP
#define EBAND_PROPAGATION_HPP

#include <cstdint>
#include <optional>

#include "eband/units.hpp"

namespace eband {

// NLoS model parameters measured by NYU WIRELESS at 73 GHz in dense urban
// Manhattan: path-loss exponent 5.88, lognormal shadow factor 14.19 dB.
inline constexpr double kNlosPathLossExponent = 5.88;
inline constexpr double kNlosShadowSigmaDb = 14.19;

/// Close-in reference distance for the NLoS model, meters.
inline constexpr double kDefaultNlosReferenceM = 5.0;

/// FCC output-power ceiling for E-band radios: 3 W.
inline const double kTxPowerCeilingDbm = 10.0 * std::log10(3000.0);

/// E-band model validity range for the attenuation curves.
inline constexpr double kEbandLowHz = 71e9;
inline constexpr double kEbandHighHz = 86e9;

struct AntennaGains {
  double tx_linear = 1.0;
  double rx_linear = 1.0;

  static AntennaGains from_dbi(double tx_dbi, double rx_dbi) {
    return {linear_from_db(tx_dbi), linear_from_db(rx_dbi)};
  }
};

struct WeatherState {
  double rain_mmh = 0.0;     // rain rate, mm/hour
  double fog_gm3 = 0.0;      // fog liquid water density, g/m^3
  double foliage_m = 0.0;    // foliage penetration depth, meters
};

struct LinkBudgetReport {
  bool los = true;
  // Distance-dependent path gain including both antenna gains, before
  // weather losses. Free-space law on the LoS branch, the NLoS power-law
  // model on the NLoS branch.
  double free_space_gain_db = 0.0;
  double atmospheric_loss_db = 0.0;
  double rain_loss_db = 0.0;
  double fog_loss_db = 0.0;
  double foliage_loss_db = 0.0;
  double total_path_gain_db = 0.0;
  double received_power_dbm = 0.0;
  double snr_db = 0.0;
};

/// Free-space path gain G_T * G_R * lambda^2 / (4 pi d)^2, linear.
double free_space_path_gain(const AntennaGains& gains, Wavelength lambda, Distance d);

/// NLoS path loss in dB: close-in free-space anchor at d0 plus a 5.88
/// distance exponent; optional keyed lognormal shadowing (sigma 14.19 dB).
double nlos_path_loss_db(Distance d, Distance d0, Wavelength lambda,
                         std::optional<std::uint64_t> shadow_key = std::nullopt);

/// Gaseous absorption inside 71-86 GHz, dB/km. Out-of-band input is rejected.
double atmospheric_attenuation_db_per_km(Frequency f);

/// Rain attenuation, dB/km. Power law through 10 dB/km at 25 mm/h and
/// 30 dB/km at 100 mm/h.
double rain_attenuation_db_per_km(double rain_mmh);

/// Fog attenuation, dB/km, linear in density: 4 dB/km per g/m^3.
double fog_attenuation_db_per_km(double fog_gm3);

/// Total foliage penetration loss, dB: 2.5 dB per meter of depth.
double foliage_loss_db(double depth_m);

/// Elements that fit a square aperture at half-wavelength pitch.
/// Quadruples for every doubling of the operating frequency.
long long array_element_count(double aperture_area_m2, Wavelength lambda);

struct LinkBudgetParams {
  double tx_power_dbm = 0.0;
  AntennaGains gains;
  Frequency frequency = Frequency::gigahertz(73.5);
  Distance distance = Distance::meters(1.0);
  WeatherState weather;
  bool los = true;
  double noise_power_dbm = -85.0;
  // Exceeding the 3 W ceiling is a policy error unless explicitly overridden.
  bool allow_power_override = false;
  double nlos_reference_m = kDefaultNlosReferenceM;
  std::optional<std::uint64_t> shadow_key;
};

/// End-to-end link budget composing path gain, weather losses, and noise.
LinkBudgetReport link_budget(const LinkBudgetParams& p);

}  // namespace eband

#endif  // EBAND_PROPAGATION_HPP
