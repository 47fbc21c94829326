#include "eband/propagation.hpp"

#include <cmath>

#include "doctest.h"
#include "eband/rng.hpp"

using namespace eband;

namespace {

/// dB form of the free-space loss with unity gains, written independently
/// of the implementation path.
double fspl_db(double d_m, double lambda_m) {
  return 20.0 * std::log10(4.0 * M_PI * d_m / lambda_m);
}

}  // namespace

TEST_CASE("free-space gain reduces to 1 when the denominator equals lambda^2") {
  const Wavelength lambda = Wavelength::meters(0.004);
  const Distance d = Distance::meters(lambda.m() / (4.0 * M_PI));
  CHECK(free_space_path_gain({1.0, 1.0}, lambda, d) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("free-space 75 GHz is about 29.9 dB below 2.4 GHz at equal distance") {
  const Distance d = Distance::meters(100.0);
  const double g75 = free_space_path_gain({1.0, 1.0}, wavelength_of(Frequency::gigahertz(75)), d);
  const double g24 = free_space_path_gain({1.0, 1.0}, wavelength_of(Frequency::gigahertz(2.4)), d);
  const double gap_db = db_from_linear(g24).db - db_from_linear(g75).db;
  CHECK(gap_db == doctest::Approx(20.0 * std::log10(75.0 / 2.4)).epsilon(1e-12));
  CHECK(gap_db == doctest::Approx(29.9).epsilon(0.004));  // within +-0.1 dB
}

TEST_CASE("free-space gain drops 6.02 dB per distance doubling") {
  const Wavelength lambda = wavelength_of(Frequency::gigahertz(73.5));
  for (double d = 1.0; d < 5000.0; d *= 7.0) {
    const double g1 = free_space_path_gain({2.0, 3.0}, lambda, Distance::meters(d));
    const double g2 = free_space_path_gain({2.0, 3.0}, lambda, Distance::meters(2.0 * d));
    CHECK(db_from_linear(g1).db - db_from_linear(g2).db ==
          doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-12));
  }
}

TEST_CASE("NLoS loss equals the close-in anchor at the reference distance") {
  const Wavelength lambda = wavelength_of(Frequency::gigahertz(73.5));
  const Distance d0 = Distance::meters(5.0);
  CHECK(nlos_path_loss_db(d0, d0, lambda) == doctest::Approx(fspl_db(5.0, lambda.m())).epsilon(1e-12));
}

TEST_CASE("NLoS loss grows 58.8 dB per decade of distance") {
  const Wavelength lambda = wavelength_of(Frequency::gigahertz(73.5));
  const Distance d0 = Distance::meters(5.0);
  const double pl = nlos_path_loss_db(Distance::meters(50.0), d0, lambda);
  CHECK(pl - fspl_db(5.0, lambda.m()) == doctest::Approx(58.8).epsilon(1e-12));
  CHECK_THROWS_AS(nlos_path_loss_db(Distance::meters(4.0), d0, lambda), DomainError);
}

TEST_CASE("keyed shadowing draws have the configured 14.19 dB spread") {
  const Wavelength lambda = wavelength_of(Frequency::gigahertz(73.5));
  const Distance d0 = Distance::meters(5.0);
  const Distance d = Distance::meters(100.0);
  const double base = nlos_path_loss_db(d, d0, lambda);

  const int n = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = nlos_path_loss_db(d, d0, lambda, hash_mix(0xABCDEFull, i)) - base;
    sum += s;
    sum_sq += s * s;
  }
  const double mean = sum / n;
  const double sigma = std::sqrt((sum_sq - n * mean * mean) / (n - 1));
  CHECK(std::abs(mean) < 0.2);
  CHECK(sigma == doctest::Approx(14.19).epsilon(0.3 / 14.19));

  // Identical key, identical draw.
  CHECK(nlos_path_loss_db(d, d0, lambda, 77ull) == nlos_path_loss_db(d, d0, lambda, 77ull));
}

TEST_CASE("atmospheric attenuation is a flat 0.5 dB/km inside the band") {
  CHECK(atmospheric_attenuation_db_per_km(Frequency::gigahertz(73.5)) == 0.5);
  CHECK(atmospheric_attenuation_db_per_km(Frequency::gigahertz(71.0)) == 0.5);
  CHECK(atmospheric_attenuation_db_per_km(Frequency::gigahertz(86.0)) == 0.5);
  CHECK_THROWS_AS(atmospheric_attenuation_db_per_km(Frequency::gigahertz(60.0)), OutOfBandError);
  CHECK_THROWS_AS(atmospheric_attenuation_db_per_km(Frequency::gigahertz(94.0)), OutOfBandError);
}

TEST_CASE("rain power law reproduces its anchors") {
  CHECK(rain_attenuation_db_per_km(25.0) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(rain_attenuation_db_per_km(100.0) == doctest::Approx(30.0).epsilon(1e-12));
  // Power laws interpolate the geometric mean at the geometric midpoint.
  CHECK(rain_attenuation_db_per_km(50.0) == doctest::Approx(std::sqrt(300.0)).epsilon(1e-12));
  CHECK(rain_attenuation_db_per_km(50.0) == doctest::Approx(17.32).epsilon(3e-4));
  CHECK(rain_attenuation_db_per_km(0.0) == 0.0);
  CHECK_THROWS_AS(rain_attenuation_db_per_km(-1.0), DomainError);
}

TEST_CASE("fog attenuation is linear in density") {
  CHECK(fog_attenuation_db_per_km(0.1) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(fog_attenuation_db_per_km(0.0) == 0.0);
  CHECK(fog_attenuation_db_per_km(0.05) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK_THROWS_AS(fog_attenuation_db_per_km(-0.1), DomainError);
}

TEST_CASE("foliage loss is linear in penetration depth") {
  CHECK(foliage_loss_db(8.0) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(foliage_loss_db(0.0) == 0.0);
  CHECK(foliage_loss_db(4.0) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK_THROWS_AS(foliage_loss_db(-1.0), DomainError);
}

TEST_CASE("element count packs a half-wavelength grid") {
  const Wavelength lambda = wavelength_of(Frequency::gigahertz(75.0));
  const double cell = (lambda.m() / 2.0) * (lambda.m() / 2.0);
  CHECK(array_element_count(cell, lambda) == 1);
  CHECK(array_element_count(25.0 * cell, lambda) == 25);
  CHECK_THROWS_AS(array_element_count(0.0, lambda), DomainError);
}

TEST_CASE("element count quadruples per frequency doubling") {
  const Frequency f0 = Frequency::gigahertz(40.0);
  const Frequency f1 = Frequency::gigahertz(80.0);
  const double cell0 = std::pow(wavelength_of(f0).m() / 2.0, 2);
  const double area = 100.0 * cell0;
  const long long n0 = array_element_count(area, wavelength_of(f0));
  const long long n1 = array_element_count(area, wavelength_of(f1));
  CHECK(n0 == 100);
  CHECK(n1 == 400);
}

TEST_CASE("link budget reproduces the 2 dB rain loss at 200 m in heavy rain") {
  LinkBudgetParams p;
  p.tx_power_dbm = 20.0;
  p.gains = AntennaGains::from_dbi(30.0, 20.0);
  p.frequency = Frequency::gigahertz(73.5);
  p.distance = Distance::meters(200.0);
  p.weather.rain_mmh = 25.0;
  const LinkBudgetReport r = link_budget(p);
  CHECK(r.rain_loss_db == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.atmospheric_loss_db == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("clear-sky budget loses only atmospheric absorption") {
  LinkBudgetParams p;
  p.tx_power_dbm = 10.0;
  p.gains = AntennaGains::from_dbi(25.0, 25.0);
  p.distance = Distance::meters(500.0);
  const LinkBudgetReport r = link_budget(p);
  CHECK(r.rain_loss_db == 0.0);
  CHECK(r.fog_loss_db == 0.0);
  CHECK(r.foliage_loss_db == 0.0);
  CHECK(r.total_path_gain_db ==
        doctest::Approx(r.free_space_gain_db - r.atmospheric_loss_db).epsilon(1e-12));
}

TEST_CASE("tx power above the 3 W ceiling is a policy error unless overridden") {
  LinkBudgetParams p;
  p.tx_power_dbm = 40.0;
  p.distance = Distance::meters(100.0);
  CHECK_THROWS_AS(link_budget(p), PolicyError);
  p.allow_power_override = true;
  CHECK_NOTHROW(link_budget(p));
  p.allow_power_override = false;
  p.tx_power_dbm = 34.77;  // just under 10 log10(3000)
  CHECK_NOTHROW(link_budget(p));
}

TEST_CASE("link budget report satisfies its internal identities") {
  KeyedRng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    LinkBudgetParams p;
    p.tx_power_dbm = rng.next_unit() * 30.0;
    p.gains = AntennaGains::from_dbi(rng.next_unit() * 40.0, rng.next_unit() * 40.0);
    p.frequency = Frequency::gigahertz(71.0 + rng.next_unit() * 15.0);
    p.distance = Distance::meters(1.0 + rng.next_unit() * 2000.0);
    p.weather.rain_mmh = rng.next_unit() * 100.0;
    p.weather.fog_gm3 = rng.next_unit() * 0.2;
    p.weather.foliage_m = rng.next_unit() * 10.0;
    p.los = rng.next_unit() < 0.5;
    p.noise_power_dbm = -90.0 + rng.next_unit() * 20.0;

    const LinkBudgetReport r = link_budget(p);
    const double losses =
        r.atmospheric_loss_db + r.rain_loss_db + r.fog_loss_db + r.foliage_loss_db;
    CHECK(r.total_path_gain_db == doctest::Approx(r.free_space_gain_db - losses).epsilon(1e-12));
    CHECK(r.received_power_dbm ==
          doctest::Approx(p.tx_power_dbm + r.total_path_gain_db).epsilon(1e-12));
    CHECK(r.snr_db == doctest::Approx(r.received_power_dbm - p.noise_power_dbm).epsilon(1e-12));
  }
}

TEST_CASE("received power decreases strictly with distance") {
  for (bool los : {true, false}) {
    double prev = 1e9;
    for (double d = 10.0; d <= 10240.0; d *= 2.0) {
      LinkBudgetParams p;
      p.tx_power_dbm = 30.0;
      p.gains = AntennaGains::from_dbi(30.0, 20.0);
      p.distance = Distance::meters(d);
      p.weather.rain_mmh = 5.0;
      p.los = los;
      const double rx = link_budget(p).received_power_dbm;
      CHECK(rx < prev);
      prev = rx;
    }
  }
}

TEST_CASE("link budget rejects zero distance at the type boundary") {
  CHECK_THROWS_AS(Distance::meters(0.0), DomainError);
}
