#include "eband/propagation.hpp"

#include <cmath>
#include <string>

#include "eband/rng.hpp"

namespace eband {

namespace {

// Rain power law gamma = k * R^alpha fitted through the two measured
// anchors (25 mm/h, 10 dB/km) and (100 mm/h, 30 dB/km).
const double kRainAlpha = std::log(3.0) / std::log(4.0);
const double kRainK = 10.0 / std::pow(25.0, std::log(3.0) / std::log(4.0));

constexpr double kAtmosphericDbPerKm = 0.5;
constexpr double kFogDbPerKmPerGm3 = 4.0;      // 0.4 dB/km at 0.1 g/m^3
constexpr double kFoliageDbPerM = 2.5;         // 20 dB at 8 m penetration

double free_space_path_loss_db(Distance d, Wavelength lambda) {
  // dB inverse of the free-space law with unity antenna gains.
  return 20.0 * std::log10(4.0 * M_PI * d.m() / lambda.m());
}

}  // namespace

double free_space_path_gain(const AntennaGains& gains, Wavelength lambda, Distance d) {
  if (!(gains.tx_linear > 0.0) || !(gains.rx_linear > 0.0))
    throw DomainError("antenna gains must be > 0");
  const double factor = lambda.m() / (4.0 * M_PI * d.m());
  return gains.tx_linear * gains.rx_linear * factor * factor;
}

double nlos_path_loss_db(Distance d, Distance d0, Wavelength lambda,
                         std::optional<std::uint64_t> shadow_key) {
  if (d.m() < d0.m())
    throw DomainError("NLoS model requires d >= reference distance d0");
  double pl = free_space_path_loss_db(d0, lambda) +
              10.0 * kNlosPathLossExponent * std::log10(d.m() / d0.m());
  if (shadow_key) {
    KeyedRng rng(*shadow_key);
    pl += kNlosShadowSigmaDb * rng.next_normal();
  }
  return pl;
}

double atmospheric_attenuation_db_per_km(Frequency f) {
  if (f.hz() < kEbandLowHz || f.hz() > kEbandHighHz)
    throw OutOfBandError("atmospheric model is valid for 71-86 GHz only, got " +
                         std::to_string(f.ghz()) + " GHz");
  return kAtmosphericDbPerKm;
}

double rain_attenuation_db_per_km(double rain_mmh) {
  if (rain_mmh < 0.0) throw DomainError("rain rate must be >= 0 mm/h");
  if (rain_mmh == 0.0) return 0.0;
  return kRainK * std::pow(rain_mmh, kRainAlpha);
}

double fog_attenuation_db_per_km(double fog_gm3) {
  if (fog_gm3 < 0.0) throw DomainError("fog density must be >= 0 g/m^3");
  return kFogDbPerKmPerGm3 * fog_gm3;
}

double foliage_loss_db(double depth_m) {
  if (depth_m < 0.0) throw DomainError("foliage depth must be >= 0 m");
  return kFoliageDbPerM * depth_m;
}

long long array_element_count(double aperture_area_m2, Wavelength lambda) {
  if (!(aperture_area_m2 > 0.0)) throw DomainError("aperture area must be > 0");
  const double pitch = lambda.m() / 2.0;
  const double ratio = aperture_area_m2 / (pitch * pitch);
  // Tolerate last-ulp rounding so exact multiples of the cell area count fully.
  return static_cast<long long>(std::floor(ratio * (1.0 + 1e-12)));
}

LinkBudgetReport link_budget(const LinkBudgetParams& p) {
  if (p.tx_power_dbm > kTxPowerCeilingDbm && !p.allow_power_override)
    throw PolicyError("tx power " + std::to_string(p.tx_power_dbm) +
                      " dBm exceeds the 3 W (34.77 dBm) ceiling; use the override to proceed");

  const Wavelength lambda = wavelength_of(p.frequency);
  LinkBudgetReport r;
  r.los = p.los;

  if (p.los) {
    r.free_space_gain_db = db_from_linear(free_space_path_gain(p.gains, lambda, p.distance)).db;
  } else {
    const double gains_db =
        db_from_linear(p.gains.tx_linear).db + db_from_linear(p.gains.rx_linear).db;
    r.free_space_gain_db =
        gains_db - nlos_path_loss_db(p.distance, Distance::meters(p.nlos_reference_m),
                                     lambda, p.shadow_key);
  }

  const double d_km = p.distance.km();
  r.atmospheric_loss_db = atmospheric_attenuation_db_per_km(p.frequency) * d_km;
  r.rain_loss_db = rain_attenuation_db_per_km(p.weather.rain_mmh) * d_km;
  r.fog_loss_db = fog_attenuation_db_per_km(p.weather.fog_gm3) * d_km;
  r.foliage_loss_db = foliage_loss_db(p.weather.foliage_m);

  r.total_path_gain_db = r.free_space_gain_db - (r.atmospheric_loss_db + r.rain_loss_db +
                                                 r.fog_loss_db + r.foliage_loss_db);
  r.received_power_dbm = p.tx_power_dbm + r.total_path_gain_db;
  r.snr_db = r.received_power_dbm - p.noise_power_dbm;
  return r;
}

}  // namespace eband
