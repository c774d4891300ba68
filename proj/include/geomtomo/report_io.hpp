#pragma once

// Serialization of check reports, sweep tables, and single values to JSON
// and CSV.  Documents embed the effective configuration and seed so a report
// is self-describing; the timestamp is the only field allowed to differ
// between re-runs of the same configuration.

#include "geomtomo/verifiers.hpp"

#include <string>
#include <vector>

namespace geomtomo {

// current UTC time, RFC 3339; pass "" to the writers to omit the field
std::string iso_timestamp();

// full check-report document ("geomtomo/check-report/v1"): config echo,
// per-check records with provenance, manifest of check ids, verdict summary
std::string report_json(const std::vector<CheckReport>& checks,
                        const std::string& config_json, const std::string& timestamp);

// same numeric payload, one row per check
std::string report_csv(const std::vector<CheckReport>& checks);

// sweep documents ("geomtomo/sweep/v1")
std::string sweep_json(const SweepTable& table, const std::string& config_json,
                       const std::string& timestamp);
std::string sweep_csv(const SweepTable& table);

// single functional value ("geomtomo/value/v1")
std::string value_json(const FunctionalValue& v, const std::string& label,
                       const std::string& config_json, const std::string& timestamp);
std::string value_csv(const FunctionalValue& v, const std::string& label);

// manifest document ("geomtomo/manifest/v1") listing check ids
std::string manifest_json(const std::vector<CheckReport>& checks);

}  // namespace geomtomo
