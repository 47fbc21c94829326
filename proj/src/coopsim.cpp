#include "eband/coopsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "eband/errors.hpp"
#include "eband/rng.hpp"

namespace eband {

namespace {

constexpr std::uint64_t kShadowStreamTag = 0x5348414457ull;     // link shadowing
constexpr std::uint64_t kPlacementStreamTag = 0x504c414345ull;  // user placement

std::uint64_t node_key(NodeRef n) {
  const std::uint64_t kind = (n.kind == NodeRef::Kind::BaseStation) ? 1 : 2;
  return (kind << 40) | static_cast<std::uint64_t>(static_cast<std::uint32_t>(n.id));
}

// Shadowing key on the unordered node pair, so the draw is symmetric and
// unaffected by adding unrelated nodes to the scenario.
std::uint64_t shadow_key(NodeRef a, NodeRef b, std::uint64_t seed) {
  std::uint64_t ka = node_key(a);
  std::uint64_t kb = node_key(b);
  if (ka > kb) std::swap(ka, kb);
  return hash_mix(hash_mix(seed, kShadowStreamTag), hash_mix(ka, kb));
}

bool inside_area(Point2 p, const Scenario& s) {
  return p.x >= 0.0 && p.x <= s.area_width_m && p.y >= 0.0 && p.y <= s.area_height_m;
}

struct NodeView {
  Point2 pos;
  double gain_dbi = 0.0;
};

NodeView node_view(NodeRef n, const Scenario& s) {
  if (n.kind == NodeRef::Kind::BaseStation) {
    for (const BaseStation& bs : s.bs_list)
      if (bs.id == n.id) return {bs.pos, bs.gain_dbi};
    throw ConfigError("unknown base station id " + std::to_string(n.id));
  }
  for (const SimUser& u : s.users)
    if (u.id == n.id) return {u.pos, u.gain_dbi};
  throw ConfigError("unknown user id " + std::to_string(n.id));
}

double link_tx_power_dbm(NodeRef a, NodeRef b, const Scenario& s) {
  if (a.kind == NodeRef::Kind::BaseStation || b.kind == NodeRef::Kind::BaseStation) {
    const NodeRef bs_ref = (a.kind == NodeRef::Kind::BaseStation) ? a : b;
    for (const BaseStation& bs : s.bs_list)
      if (bs.id == bs_ref.id) return bs.tx_power_dbm;
    throw ConfigError("unknown base station id " + std::to_string(bs_ref.id));
  }
  return s.user_tx_power_dbm;
}

}  // namespace

void Scenario::validate() const {
  if (!(area_width_m > 0.0) || !(area_height_m > 0.0))
    throw ConfigError("area dimensions must be positive");
  if (bs_list.empty()) throw ConfigError("scenario needs at least one base station");
  if (!std::isfinite(ds_threshold_db)) throw ConfigError("ds_threshold_db must be finite");
  if (relay_capacity < 1) throw ConfigError("relay_capacity must be >= 1");

  std::vector<int> ids;
  for (const BaseStation& bs : bs_list) {
    if (!inside_area(bs.pos, *this))
      throw ConfigError("base station " + std::to_string(bs.id) + " lies outside the area");
    if (bs.tx_power_dbm > kTxPowerCeilingDbm)
      throw PolicyError("base station " + std::to_string(bs.id) +
                        " exceeds the 3 W (34.77 dBm) tx ceiling");
    ids.push_back(bs.id);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw ConfigError("duplicate base station id");

  if (user_tx_power_dbm > kTxPowerCeilingDbm)
    throw PolicyError("user tx power exceeds the 3 W (34.77 dBm) ceiling");

  ids.clear();
  for (const SimUser& u : users) {
    if (!inside_area(u.pos, *this))
      throw ConfigError("user " + std::to_string(u.id) + " lies outside the area");
    if (u.vacant && u.traffic)
      throw ConfigError("user " + std::to_string(u.id) +
                        " cannot be both vacant and carrying traffic");
    ids.push_back(u.id);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw ConfigError("duplicate user id");

  for (const RectObstacle& o : obstacles)
    if (!(o.x_max > o.x_min) || !(o.y_max > o.y_min))
      throw ConfigError("obstacle rectangles must have positive extent");

  if (weather.rain_mmh < 0.0 || weather.fog_gm3 < 0.0 || weather.foliage_m < 0.0)
    throw ConfigError("weather fields must be non-negative");
}

std::string service_class_name(ServiceClass c) {
  switch (c) {
    case ServiceClass::DS: return "DS";
    case ServiceClass::IS_served: return "IS_served";
    case ServiceClass::IS_unserved: return "IS_unserved";
  }
  return "unknown";
}

bool los_blocked(Point2 p, Point2 q, std::span<const RectObstacle> obstacles) {
  const double dx = q.x - p.x;
  const double dy = q.y - p.y;

  for (const RectObstacle& r : obstacles) {
    // Liang-Barsky slab clipping of the segment against the closed box.
    double t0 = 0.0, t1 = 1.0;
    bool rejected = false;

    // lo_rel = min - p and hi_rel = max - p along one axis.
    auto clip = [&](double d, double lo_rel, double hi_rel) {
      if (d == 0.0) {
        if (lo_rel > 0.0 || hi_rel < 0.0) rejected = true;  // outside the slab
        return;
      }
      double t_enter = lo_rel / d;
      double t_exit = hi_rel / d;
      if (d < 0.0) std::swap(t_enter, t_exit);
      t0 = std::max(t0, t_enter);
      t1 = std::min(t1, t_exit);
    };

    clip(dx, r.x_min - p.x, r.x_max - p.x);
    if (!rejected) clip(dy, r.y_min - p.y, r.y_max - p.y);
    if (rejected || t1 <= t0) continue;

    // Positive-length overlap with the closed box; blocked only if the
    // path actually enters the open interior (corner grazing and runs
    // along an edge do not block).
    const double tm = 0.5 * (t0 + t1);
    const double mx = p.x + tm * dx;
    const double my = p.y + tm * dy;
    if (mx > r.x_min && mx < r.x_max && my > r.y_min && my < r.y_max) return true;
  }
  return false;
}

double link_snr_db(NodeRef a, NodeRef b, const Scenario& s) {
  if (a.kind == b.kind && a.id == b.id) throw ConfigError("link endpoints must be distinct");
  const NodeView va = node_view(a, s);
  const NodeView vb = node_view(b, s);
  const double dx = vb.pos.x - va.pos.x;
  const double dy = vb.pos.y - va.pos.y;
  const double dist = std::sqrt(dx * dx + dy * dy);
  if (!(dist > 0.0)) throw ConfigError("link endpoints must be at distinct positions");

  LinkBudgetParams p;
  p.tx_power_dbm = link_tx_power_dbm(a, b, s);
  p.gains = AntennaGains::from_dbi(va.gain_dbi, vb.gain_dbi);
  p.frequency = s.carrier;
  p.distance = Distance::meters(dist);
  p.weather = s.weather;
  p.noise_power_dbm = s.noise_power_dbm;
  p.los = !los_blocked(va.pos, vb.pos, s.obstacles);
  if (!p.los && s.nlos_shadowing) p.shadow_key = shadow_key(a, b, s.seed);
  return link_budget(p).snr_db;
}

Classification classify_users(const Scenario& s) {
  Classification cls;
  const std::size_t n = s.users.size();
  cls.direct_snr_db.assign(n, -std::numeric_limits<double>::infinity());
  cls.best_bs.assign(n, std::nullopt);
  cls.is_ds.assign(n, false);

  // BS ids ascending so argmax ties resolve to the lowest id.
  std::vector<const BaseStation*> stations;
  stations.reserve(s.bs_list.size());
  for (const BaseStation& bs : s.bs_list) stations.push_back(&bs);
  std::sort(stations.begin(), stations.end(),
            [](const BaseStation* x, const BaseStation* y) { return x->id < y->id; });

  for (std::size_t i = 0; i < n; ++i) {
    for (const BaseStation* bs : stations) {
      const double snr = link_snr_db(NodeRef::user(s.users[i].id), NodeRef::bs(bs->id), s);
      if (snr > cls.direct_snr_db[i]) {
        cls.direct_snr_db[i] = snr;
        cls.best_bs[i] = bs->id;
      }
    }
    cls.is_ds[i] = cls.direct_snr_db[i] >= s.ds_threshold_db;
  }
  return cls;
}

std::optional<RelayChoice> relay_selection(int is_user_id,
                                           std::span<const int> candidate_user_ids,
                                           std::span<const double> candidate_direct_snr_db,
                                           const Scenario& s) {
  if (candidate_user_ids.size() != candidate_direct_snr_db.size())
    throw ConfigError("relay candidate arrays must be the same length");

  std::optional<RelayChoice> best;
  for (std::size_t k = 0; k < candidate_user_ids.size(); ++k) {
    const double hop =
        link_snr_db(NodeRef::user(is_user_id), NodeRef::user(candidate_user_ids[k]), s);
    const double bottleneck = std::min(hop, candidate_direct_snr_db[k]);
    if (!best || bottleneck > best->bottleneck_snr_db ||
        (bottleneck == best->bottleneck_snr_db && candidate_user_ids[k] < best->relay_user_id))
      best = RelayChoice{candidate_user_ids[k], bottleneck};
  }
  if (best && best->bottleneck_snr_db >= s.ds_threshold_db) return best;
  return std::nullopt;
}

PilotAssignment assign_pilots(const Scenario& s, const Classification& cls) {
  PilotAssignment pilots;
  int next = 0;
  std::vector<int> bs_ids;
  for (const BaseStation& bs : s.bs_list) bs_ids.push_back(bs.id);
  std::sort(bs_ids.begin(), bs_ids.end());
  for (int id : bs_ids) pilots.level1.emplace_back(id, next++);
  for (std::size_t i = 0; i < s.users.size(); ++i)
    if (cls.is_ds[i] && s.users[i].vacant)
      pilots.level2.emplace_back(s.users[i].id, next++);
  return pilots;
}

CoverageResult run_round(const Scenario& s) {
  s.validate();

  // Phase 1: level-1 pilot broadcast and DS/IS classification.
  const Classification cls = classify_users(s);

  const std::size_t n = s.users.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return s.users[a].id < s.users[b].id; });

  RoundRecord round;
  round.outcomes.resize(n);
  round.traffic_channels_per_bs.assign(s.bs_list.size(), 0);

  std::map<int, std::size_t> bs_slot;  // bs id -> index in bs_list
  for (std::size_t b = 0; b < s.bs_list.size(); ++b) bs_slot[s.bs_list[b].id] = b;

  // Phase 2: DS registration. Phase 3: vacant DS users advertise level-2
  // pilots and become relay candidates, each with bounded capacity.
  std::map<int, int> relay_load;            // relay user id -> served IS users
  std::vector<int> candidate_ids;           // vacant DS users, ascending id
  std::vector<double> candidate_direct;     // their registered-link SNR
  std::vector<std::size_t> candidate_slot;  // index back into users
  for (std::size_t idx : order) {
    if (cls.is_ds[idx] && s.users[idx].vacant) {
      candidate_ids.push_back(s.users[idx].id);
      candidate_direct.push_back(cls.direct_snr_db[idx]);
      candidate_slot.push_back(idx);
      relay_load[s.users[idx].id] = 0;
    }
  }

  int ds_count = 0, is_served_count = 0, unserved_count = 0;

  // Phase 4: IS users request relays in ascending user-id order.
  for (std::size_t idx : order) {
    UserOutcome& out = round.outcomes[idx];
    out.user_id = s.users[idx].id;
    out.pos = s.users[idx].pos;
    out.direct_snr_db = cls.direct_snr_db[idx];

    if (cls.is_ds[idx]) {
      out.cls = ServiceClass::DS;
      out.serving_bs = cls.best_bs[idx];
      ++ds_count;
      continue;
    }

    std::vector<int> avail_ids;
    std::vector<double> avail_direct;
    std::vector<std::size_t> avail_slot;
    for (std::size_t k = 0; k < candidate_ids.size(); ++k) {
      if (relay_load[candidate_ids[k]] < s.relay_capacity) {
        avail_ids.push_back(candidate_ids[k]);
        avail_direct.push_back(candidate_direct[k]);
        avail_slot.push_back(candidate_slot[k]);
      }
    }

    const auto choice = relay_selection(out.user_id, avail_ids, avail_direct, s);
    if (choice) {
      out.cls = ServiceClass::IS_served;
      out.relay = choice->relay_user_id;
      out.bottleneck_snr_db = choice->bottleneck_snr_db;
      // Indirect registration lands on the relay's serving BS.
      for (std::size_t k = 0; k < avail_ids.size(); ++k)
        if (avail_ids[k] == choice->relay_user_id) out.serving_bs = cls.best_bs[avail_slot[k]];
      ++relay_load[choice->relay_user_id];
      ++is_served_count;
    } else {
      out.cls = ServiceClass::IS_unserved;
      ++unserved_count;
    }
  }

  // Phase 5: traffic-channel bookkeeping on the registered BSs.
  for (std::size_t idx = 0; idx < n; ++idx) {
    const UserOutcome& out = round.outcomes[idx];
    if (!s.users[idx].traffic || !out.serving_bs) continue;
    ++round.traffic_channels_per_bs[bs_slot.at(*out.serving_bs)];
  }

  const double total = n > 0 ? static_cast<double>(n) : 1.0;
  round.ds_fraction = ds_count / total;
  round.is_served_fraction = is_served_count / total;
  round.unserved_fraction = unserved_count / total;

  CoverageResult result;
  result.seed = s.seed;
  result.drops = 1;
  result.ds_fraction = round.ds_fraction;
  result.is_served_fraction = round.is_served_fraction;
  result.unserved_fraction = round.unserved_fraction;
  result.rounds.push_back(std::move(round));
  return result;
}

Scenario scenario_for_drop(const Scenario& s, int drop) {
  Scenario per_drop = s;
  // Per-drop substream: link shadowing redraws between drops while staying
  // keyed to node pairs within the drop.
  per_drop.seed = hash_mix(s.seed, static_cast<std::uint64_t>(drop));
  for (SimUser& u : per_drop.users) {
    // Placement keyed by (seed, drop, user id): stable under edits to the
    // BS list and to unrelated users.
    KeyedRng rng(hash_mix(hash_mix(s.seed, kPlacementStreamTag),
                          hash_mix(static_cast<std::uint64_t>(drop),
                                   static_cast<std::uint64_t>(static_cast<std::uint32_t>(u.id)))));
    u.pos.x = rng.next_unit() * s.area_width_m;
    u.pos.y = rng.next_unit() * s.area_height_m;
  }
  return per_drop;
}

CoverageResult simulate(const Scenario& s, int drops) {
  if (drops < 1) throw DomainError("drops must be >= 1");
  s.validate();

  CoverageResult result;
  result.seed = s.seed;
  result.drops = drops;

  double sum_ds = 0.0, sum_is = 0.0, sum_un = 0.0;
  double sq_ds = 0.0, sq_is = 0.0, sq_un = 0.0;
  for (int drop = 0; drop < drops; ++drop) {
    CoverageResult one = run_round(scenario_for_drop(s, drop));
    RoundRecord round = std::move(one.rounds.front());
    round.drop = drop;
    sum_ds += round.ds_fraction;
    sum_is += round.is_served_fraction;
    sum_un += round.unserved_fraction;
    sq_ds += round.ds_fraction * round.ds_fraction;
    sq_is += round.is_served_fraction * round.is_served_fraction;
    sq_un += round.unserved_fraction * round.unserved_fraction;
    result.rounds.push_back(std::move(round));
  }

  const double n = drops;
  result.ds_fraction = sum_ds / n;
  result.is_served_fraction = sum_is / n;
  result.unserved_fraction = sum_un / n;
  if (drops > 1) {
    auto stderr_of = [n](double sum, double sq) {
      const double mean = sum / n;
      const double var = std::max(0.0, (sq - n * mean * mean) / (n - 1.0));
      return std::sqrt(var / n);
    };
    result.ds_stderr = stderr_of(sum_ds, sq_ds);
    result.is_served_stderr = stderr_of(sum_is, sq_is);
    result.unserved_stderr = stderr_of(sum_un, sq_un);
  }
  return result;
}

}  // namespace eband
