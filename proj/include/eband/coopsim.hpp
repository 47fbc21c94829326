#ifndef EBAND_COOPSIM_HPP
#define EBAND_COOPSIM_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eband/propagation.hpp"
#include "eband/units.hpp"

namespace eband {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Axis-aligned rectangular obstacle; the interior is open, so a path
/// touching only the boundary does not count as blocked.
struct RectObstacle {
  double x_min = 0.0, y_min = 0.0, x_max = 0.0, y_max = 0.0;
};

struct BaseStation {
  int id = 0;
  Point2 pos;
  double gain_dbi = 30.0;
  double tx_power_dbm = 30.0;
};

struct SimUser {
  int id = 0;
  Point2 pos;
  double gain_dbi = 20.0;
  bool vacant = true;    // no own data; eligible to relay
  bool traffic = false;  // has data to transmit/receive
};

struct Scenario {
  double area_width_m = 0.0;
  double area_height_m = 0.0;
  std::vector<BaseStation> bs_list;
  std::vector<SimUser> users;
  std::vector<RectObstacle> obstacles;
  Frequency carrier = Frequency::gigahertz(73.5);
  double ds_threshold_db = 0.0;
  double noise_power_dbm = -85.0;
  WeatherState weather;
  std::uint64_t seed = 0;
  double user_tx_power_dbm = 24.0;  // used on user-user relay hops
  int relay_capacity = 1;           // IS users one relay may serve per round
  bool nlos_shadowing = true;

  /// Throws ConfigError on the first violated structural invariant.
  void validate() const;
};

enum class ServiceClass { DS, IS_served, IS_unserved };

std::string service_class_name(ServiceClass c);

struct UserOutcome {
  int user_id = 0;
  ServiceClass cls = ServiceClass::IS_unserved;
  std::optional<int> serving_bs;  // direct for DS, via the relay for IS_served
  std::optional<int> relay;
  double direct_snr_db = 0.0;  // best direct BS link
  std::optional<double> bottleneck_snr_db;  // two-hop quality when relayed
  Point2 pos;
};

/// Level-1 pilots are one id per BS, level-2 one id per vacant DS user;
/// all ids are unique across both sets.
struct PilotAssignment {
  std::vector<std::pair<int, int>> level1;  // (bs id, pilot id)
  std::vector<std::pair<int, int>> level2;  // (user id, pilot id)
};

struct RoundRecord {
  int drop = 0;
  double ds_fraction = 0.0;
  double is_served_fraction = 0.0;
  double unserved_fraction = 0.0;
  std::vector<UserOutcome> outcomes;
  std::vector<int> traffic_channels_per_bs;  // aligned with Scenario::bs_list
};

struct CoverageResult {
  double ds_fraction = 0.0;  // aggregate means across drops
  double is_served_fraction = 0.0;
  double unserved_fraction = 0.0;
  double ds_stderr = 0.0;
  double is_served_stderr = 0.0;
  double unserved_stderr = 0.0;
  std::uint64_t seed = 0;
  int drops = 0;
  std::vector<RoundRecord> rounds;
};

/// True iff the open interior of any obstacle intersects segment pq.
bool los_blocked(Point2 p, Point2 q, std::span<const RectObstacle> obstacles);

/// Identifies either endpoint of a link for SNR evaluation.
struct NodeRef {
  enum class Kind { BaseStation, User };
  Kind kind = Kind::User;
  int id = 0;

  static NodeRef bs(int id) { return {Kind::BaseStation, id}; }
  static NodeRef user(int id) { return {Kind::User, id}; }
};

/// Symmetric link SNR: free-space budget when the path is clear, the NLoS
/// power-law model with pair-keyed shadowing when blocked.
double link_snr_db(NodeRef a, NodeRef b, const Scenario& s);

struct Classification {
  // Parallel to Scenario::users: best direct SNR and its BS for each user.
  std::vector<double> direct_snr_db;
  std::vector<std::optional<int>> best_bs;
  std::vector<bool> is_ds;
};

/// DS iff the best direct BS link meets the threshold; binds each DS user
/// to its argmax BS (ties to the lowest BS id).
Classification classify_users(const Scenario& s);

struct RelayChoice {
  int relay_user_id = 0;
  double bottleneck_snr_db = 0.0;
};

/// Best vacant-DS relay for an IS user by bottleneck (min of the two hop
/// SNRs); empty when no candidate reaches the threshold.
std::optional<RelayChoice> relay_selection(int is_user_id,
                                           std::span<const int> candidate_user_ids,
                                           std::span<const double> candidate_direct_snr_db,
                                           const Scenario& s);

PilotAssignment assign_pilots(const Scenario& s, const Classification& cls);

/// One protocol round on the scenario exactly as given (positions are not
/// redrawn). Deterministic in the scenario, including its seed.
CoverageResult run_round(const Scenario& s);

/// Monte-Carlo coverage: per drop, user positions are redrawn uniformly
/// from the seeded stream and one round is run; fractions are aggregated
/// with mean and standard error.
CoverageResult simulate(const Scenario& s, int drops);

/// The per-drop scenario `simulate` evaluates: positions redrawn from the
/// placement stream and the seed advanced to the drop's substream.
Scenario scenario_for_drop(const Scenario& s, int drop);

}  // namespace eband

#endif  // EBAND_COOPSIM_HPP
