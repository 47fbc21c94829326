#include "eband/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <vector>

#include <nlohmann/json.hpp>

#include "eband/errors.hpp"

namespace eband {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

/// Collects field-level problems so a malformed document reports all of
/// them at once.
class FieldErrors {
 public:
  void add(const std::string& field, const std::string& what) {
    messages_.push_back(field + ": " + what);
  }
  bool empty() const { return messages_.empty(); }
  [[noreturn]] void raise() const {
    std::string joined = "scenario schema errors:";
    for (const std::string& m : messages_) joined += "\n  - " + m;
    throw SchemaError(joined);
  }

 private:
  std::vector<std::string> messages_;
};

double require_number(const json& obj, const std::string& field, FieldErrors& errs,
                      double fallback = 0.0) {
  if (!obj.contains(field)) {
    errs.add(field, "missing required field");
    return fallback;
  }
  if (!obj[field].is_number()) {
    errs.add(field, "expected a number");
    return fallback;
  }
  return obj[field].get<double>();
}

double optional_number(const json& obj, const std::string& field, double fallback,
                       FieldErrors& errs) {
  if (!obj.contains(field)) return fallback;
  if (!obj[field].is_number()) {
    errs.add(field, "expected a number");
    return fallback;
  }
  return obj[field].get<double>();
}

bool optional_bool(const json& obj, const std::string& field, bool fallback,
                   FieldErrors& errs) {
  if (!obj.contains(field)) return fallback;
  if (!obj[field].is_boolean()) {
    errs.add(field, "expected a boolean");
    return fallback;
  }
  return obj[field].get<bool>();
}

std::string fmt_db(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

Scenario scenario_from_json(const json& doc) {
  FieldErrors errs;
  Scenario s;

  if (!doc.is_object()) {
    errs.add("$", "scenario document must be a JSON object");
    errs.raise();
  }

  if (doc.contains("schema_version") && doc["schema_version"].is_number_integer() &&
      doc["schema_version"].get<int>() != kSchemaVersion)
    errs.add("schema_version", "unsupported version");

  if (doc.contains("area") && doc["area"].is_object()) {
    s.area_width_m = require_number(doc["area"], "width_m", errs);
    s.area_height_m = require_number(doc["area"], "height_m", errs);
  } else {
    errs.add("area", "missing required object with width_m/height_m");
  }

  if (doc.contains("base_stations") && doc["base_stations"].is_array()) {
    int next_id = 0;
    for (const json& item : doc["base_stations"]) {
      const std::string where = "base_stations[" + std::to_string(next_id) + "]";
      if (!item.is_object()) {
        errs.add(where, "expected an object");
        ++next_id;
        continue;
      }
      BaseStation bs;
      bs.id = static_cast<int>(optional_number(item, "id", next_id, errs));
      bs.pos.x = require_number(item, "x_m", errs);
      bs.pos.y = require_number(item, "y_m", errs);
      bs.gain_dbi = optional_number(item, "gain_dbi", 30.0, errs);
      bs.tx_power_dbm = optional_number(item, "tx_power_dbm", 30.0, errs);
      s.bs_list.push_back(bs);
      ++next_id;
    }
  } else {
    errs.add("base_stations", "missing required array");
  }

  if (doc.contains("users") && doc["users"].is_array()) {
    int next_id = 0;
    for (const json& item : doc["users"]) {
      const std::string where = "users[" + std::to_string(next_id) + "]";
      if (!item.is_object()) {
        errs.add(where, "expected an object");
        ++next_id;
        continue;
      }
      SimUser u;
      u.id = static_cast<int>(optional_number(item, "id", next_id, errs));
      u.pos.x = require_number(item, "x_m", errs);
      u.pos.y = require_number(item, "y_m", errs);
      u.gain_dbi = optional_number(item, "gain_dbi", 20.0, errs);
      u.vacant = optional_bool(item, "vacant", true, errs);
      u.traffic = optional_bool(item, "traffic", false, errs);
      s.users.push_back(u);
      ++next_id;
    }
  } else {
    errs.add("users", "missing required array");
  }

  if (doc.contains("obstacles")) {
    if (!doc["obstacles"].is_array()) {
      errs.add("obstacles", "expected an array");
    } else {
      int i = 0;
      for (const json& item : doc["obstacles"]) {
        const std::string where = "obstacles[" + std::to_string(i++) + "]";
        if (!item.is_object()) {
          errs.add(where, "expected an object");
          continue;
        }
        RectObstacle r;
        r.x_min = require_number(item, "x_min_m", errs);
        r.y_min = require_number(item, "y_min_m", errs);
        r.x_max = require_number(item, "x_max_m", errs);
        r.y_max = require_number(item, "y_max_m", errs);
        s.obstacles.push_back(r);
      }
    }
  }

  const double carrier_ghz = require_number(doc, "carrier_ghz", errs, 73.5);
  if (carrier_ghz > 0.0)
    s.carrier = Frequency::gigahertz(carrier_ghz);
  else
    errs.add("carrier_ghz", "must be > 0");

  s.ds_threshold_db = require_number(doc, "ds_threshold_db", errs);
  s.noise_power_dbm = require_number(doc, "noise_dbm", errs, -85.0);

  if (doc.contains("weather") && doc["weather"].is_object()) {
    s.weather.rain_mmh = optional_number(doc["weather"], "rain_mmh", 0.0, errs);
    s.weather.fog_gm3 = optional_number(doc["weather"], "fog_gm3", 0.0, errs);
    s.weather.foliage_m = optional_number(doc["weather"], "foliage_m", 0.0, errs);
  } else if (doc.contains("weather")) {
    errs.add("weather", "expected an object");
  }

  if (!doc.contains("seed")) {
    errs.add("seed", "missing required field");
  } else if (!doc["seed"].is_number_integer()) {
    errs.add("seed", "expected an integer");
  } else {
    s.seed = doc["seed"].get<std::uint64_t>();
  }

  s.user_tx_power_dbm = optional_number(doc, "user_tx_power_dbm", 24.0, errs);
  s.relay_capacity = static_cast<int>(optional_number(doc, "relay_capacity", 1.0, errs));
  s.nlos_shadowing = optional_bool(doc, "nlos_shadowing", true, errs);

  if (!errs.empty()) errs.raise();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open scenario file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw SchemaError("scenario is not valid JSON: " + std::string(e.what()));
  }
  Scenario s = scenario_from_json(doc);
  s.validate();
  return s;
}

json scenario_to_json(const Scenario& s) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["area"] = {{"width_m", s.area_width_m}, {"height_m", s.area_height_m}};
  doc["base_stations"] = json::array();
  for (const BaseStation& bs : s.bs_list)
    doc["base_stations"].push_back({{"id", bs.id},
                                    {"x_m", bs.pos.x},
                                    {"y_m", bs.pos.y},
                                    {"gain_dbi", bs.gain_dbi},
                                    {"tx_power_dbm", bs.tx_power_dbm}});
  doc["users"] = json::array();
  for (const SimUser& u : s.users)
    doc["users"].push_back({{"id", u.id},
                            {"x_m", u.pos.x},
                            {"y_m", u.pos.y},
                            {"gain_dbi", u.gain_dbi},
                            {"vacant", u.vacant},
                            {"traffic", u.traffic}});
  doc["obstacles"] = json::array();
  for (const RectObstacle& r : s.obstacles)
    doc["obstacles"].push_back({{"x_min_m", r.x_min},
                                {"y_min_m", r.y_min},
                                {"x_max_m", r.x_max},
                                {"y_max_m", r.y_max}});
  doc["carrier_ghz"] = s.carrier.ghz();
  doc["ds_threshold_db"] = s.ds_threshold_db;
  doc["noise_dbm"] = s.noise_power_dbm;
  doc["weather"] = {{"rain_mmh", s.weather.rain_mmh},
                    {"fog_gm3", s.weather.fog_gm3},
                    {"foliage_m", s.weather.foliage_m}};
  doc["seed"] = s.seed;
  doc["user_tx_power_dbm"] = s.user_tx_power_dbm;
  doc["relay_capacity"] = s.relay_capacity;
  doc["nlos_shadowing"] = s.nlos_shadowing;
  return doc;
}

json coverage_to_json(const CoverageResult& result) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["seed"] = result.seed;
  doc["drops"] = result.drops;
  doc["aggregate"] = {{"ds_fraction", result.ds_fraction},
                      {"is_served_fraction", result.is_served_fraction},
                      {"unserved_fraction", result.unserved_fraction},
                      {"ds_stderr", result.ds_stderr},
                      {"is_served_stderr", result.is_served_stderr},
                      {"unserved_stderr", result.unserved_stderr}};
  doc["rounds"] = json::array();
  for (const RoundRecord& round : result.rounds) {
    json jr;
    jr["drop"] = round.drop;
    jr["ds_fraction"] = round.ds_fraction;
    jr["is_served_fraction"] = round.is_served_fraction;
    jr["unserved_fraction"] = round.unserved_fraction;
    jr["traffic_channels_per_bs"] = round.traffic_channels_per_bs;
    jr["users"] = json::array();
    for (const UserOutcome& out : round.outcomes) {
      json ju;
      ju["user_id"] = out.user_id;
      ju["class"] = service_class_name(out.cls);
      ju["serving_bs"] = out.serving_bs ? json(*out.serving_bs) : json(nullptr);
      ju["relay"] = out.relay ? json(*out.relay) : json(nullptr);
      ju["direct_snr_db"] = out.direct_snr_db;
      ju["bottleneck_snr_db"] =
          out.bottleneck_snr_db ? json(*out.bottleneck_snr_db) : json(nullptr);
      ju["x_m"] = out.pos.x;
      ju["y_m"] = out.pos.y;
      jr["users"].push_back(std::move(ju));
    }
    doc["rounds"].push_back(std::move(jr));
  }
  return doc;
}

void write_outcomes_csv(std::ostream& os, const CoverageResult& result) {
  os << "user_id,class,serving_bs,relay,direct_snr_db,bottleneck_snr_db\n";
  for (const RoundRecord& round : result.rounds) {
    for (const UserOutcome& out : round.outcomes) {
      os << out.user_id << ',' << service_class_name(out.cls) << ',';
      if (out.serving_bs) os << *out.serving_bs;
      os << ',';
      if (out.relay) os << *out.relay;
      os << ',' << fmt_db(out.direct_snr_db) << ',';
      if (out.bottleneck_snr_db) os << fmt_db(*out.bottleneck_snr_db);
      os << '\n';
    }
  }
}

}  // namespace eband
