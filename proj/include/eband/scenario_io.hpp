#ifndef EBAND_SCENARIO_IO_HPP
#define EBAND_SCENARIO_IO_HPP

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "eband/coopsim.hpp"

namespace eband {

/// Parses a scenario document, collecting every offending field into one
/// SchemaError message.
Scenario scenario_from_json(const nlohmann::json& doc);

/// Parses and validates a scenario file.
Scenario load_scenario(const std::string& path);

nlohmann::json scenario_to_json(const Scenario& s);

/// Aggregate + per-round coverage as a versioned JSON document.
nlohmann::json coverage_to_json(const CoverageResult& result);

/// Per-user outcomes, rows grouped by drop in drop order.
/// Columns: user_id,class,serving_bs,relay,direct_snr_db,bottleneck_snr_db.
void write_outcomes_csv(std::ostream& os, const CoverageResult& result);

}  // namespace eband

#endif  // EBAND_SCENARIO_IO_HPP
