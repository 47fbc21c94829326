#ifndef EBAND_TESTS_SCENARIO_GEN_HPP
#define EBAND_TESTS_SCENARIO_GEN_HPP

#include "eband/coopsim.hpp"
#include "eband/rng.hpp"

namespace eband_tests {

/// Random dense-urban style scenario: obstacles carve IS pockets, the DS
/// threshold sits between typical LoS and NLoS link margins.
inline eband::Scenario random_scenario(eband::KeyedRng& rng, int n_bs, int n_users,
                                       int n_obstacles) {
  eband::Scenario s;
  s.area_width_m = 400.0;
  s.area_height_m = 400.0;
  s.carrier = eband::Frequency::gigahertz(73.5);
  s.noise_power_dbm = -85.0;
  s.ds_threshold_db = 20.0 + rng.next_unit() * 20.0;
  s.seed = rng.next_u64();

  for (int b = 0; b < n_bs; ++b) {
    eband::BaseStation bs;
    bs.id = b;
    bs.pos = {rng.next_unit() * s.area_width_m, rng.next_unit() * s.area_height_m};
    bs.gain_dbi = 30.0;
    bs.tx_power_dbm = 30.0;
    s.bs_list.push_back(bs);
  }
  for (int u = 0; u < n_users; ++u) {
    eband::SimUser user;
    user.id = u;
    user.pos = {rng.next_unit() * s.area_width_m, rng.next_unit() * s.area_height_m};
    user.gain_dbi = 20.0;
    user.vacant = rng.next_unit() < 0.6;
    user.traffic = !user.vacant && rng.next_unit() < 0.7;
    s.users.push_back(user);
  }
  for (int o = 0; o < n_obstacles; ++o) {
    const double w = 30.0 + rng.next_unit() * 90.0;
    const double h = 30.0 + rng.next_unit() * 90.0;
    const double x = rng.next_unit() * (s.area_width_m - w);
    const double y = rng.next_unit() * (s.area_height_m - h);
    s.obstacles.push_back({x, y, x + w, y + h});
  }
  return s;
}

}  // namespace eband_tests

#endif  // EBAND_TESTS_SCENARIO_GEN_HPP
