#include "geomtomo/report_io.hpp"

#include <json.hpp>

#include <chrono>
#include <ctime>
#include <sstream>

namespace geomtomo {

using nlohmann::json;

namespace {

json parse_config(const std::string& config_json) {
    if (config_json.empty()) return json::object();
    return json::parse(config_json);
}

json check_to_json(const CheckReport& r) {
    json j;
    j["check_id"] = r.check_id;
    j["verdict"] = to_string(r.verdict);
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["slack"] = r.slack;
    j["hypothesis_margin"] = r.hypothesis_margin;
    j["noise_tolerance"] = r.noise_tolerance;
    j["grid_size"] = r.grid_size;
    j["seed"] = r.seed;
    j["details"] = r.details;
    json prov = json::array();
    for (const auto& v : r.provenance) {
        prov.push_back({{"label", v.label},
                        {"value", v.value},
                        {"error_estimate", v.error},
                        {"method", v.method}});
    }
    j["provenance"] = std::move(prov);
    return j;
}

// CSV fields are quoted when they contain separators; numbers use the same
// shortest round-trip text as the JSON writer so payloads match exactly
std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string num(double x) { return json(x).dump(); }

}  // namespace

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[40];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string report_json(const std::vector<CheckReport>& checks,
                        const std::string& config_json, const std::string& timestamp) {
    json doc;
    doc["schema"] = "geomtomo/check-report/v1";
    if (!timestamp.empty()) doc["timestamp"] = timestamp;
    doc["config"] = parse_config(config_json);
    json arr = json::array();
    json manifest = json::array();
    int pass = 0, fail = 0, diag = 0;
    for (const auto& r : checks) {
        arr.push_back(check_to_json(r));
        manifest.push_back(r.check_id);
        switch (r.verdict) {
            case Verdict::pass: pass++; break;
            case Verdict::fail: fail++; break;
            case Verdict::diagnostic: diag++; break;
        }
    }
    doc["checks"] = std::move(arr);
    doc["manifest"] = std::move(manifest);
    doc["summary"] = {{"pass", pass}, {"fail", fail}, {"diagnostic", diag}};
    return doc.dump(2) + "\n";
}

std::string report_csv(const std::vector<CheckReport>& checks) {
    std::ostringstream out;
    out << "check_id,verdict,lhs,rhs,slack,hypothesis_margin,noise_tolerance,"
           "grid_size,seed,details\n";
    for (const auto& r : checks) {
        out << csv_quote(r.check_id) << ',' << to_string(r.verdict) << ',' << num(r.lhs)
            << ',' << num(r.rhs) << ',' << num(r.slack) << ',' << num(r.hypothesis_margin)
            << ',' << num(r.noise_tolerance) << ',' << r.grid_size << ',' << r.seed << ','
            << csv_quote(r.details) << '\n';
    }
    return out.str();
}

std::string sweep_json(const SweepTable& table, const std::string& config_json,
                       const std::string& timestamp) {
    json doc;
    doc["schema"] = "geomtomo/sweep/v1";
    if (!timestamp.empty()) doc["timestamp"] = timestamp;
    doc["config"] = parse_config(config_json);
    doc["id"] = table.id;
    doc["columns"] = table.columns;
    json rows = json::array();
    for (const auto& row : table.rows) rows.push_back(row);
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::string sweep_csv(const SweepTable& table) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.columns.size(); i++) {
        if (i) out << ',';
        out << csv_quote(table.columns[i]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); i++) {
            if (i) out << ',';
            out << num(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

std::string value_json(const FunctionalValue& v, const std::string& label,
                       const std::string& config_json, const std::string& timestamp) {
    json doc;
    doc["schema"] = "geomtomo/value/v1";
    if (!timestamp.empty()) doc["timestamp"] = timestamp;
    doc["config"] = parse_config(config_json);
    doc["label"] = label;
    doc["value"] = v.value;
    doc["error_estimate"] = v.error;
    doc["method"] = to_string(v.method);
    return doc.dump(2) + "\n";
}

std::string value_csv(const FunctionalValue& v, const std::string& label) {
    std::ostringstream out;
    out << "label,value,error_estimate,method\n";
    out << csv_quote(label) << ',' << num(v.value) << ',' << num(v.error) << ','
        << to_string(v.method) << '\n';
    return out.str();
}

std::string manifest_json(const std::vector<CheckReport>& checks) {
    json doc;
    doc["schema"] = "geomtomo/manifest/v1";
    json ids = json::array();
    for (const auto& r : checks) ids.push_back(r.check_id);
    doc["checks"] = std::move(ids);
    return doc.dump(2) + "\n";
}

}  // namespace geomtomo
