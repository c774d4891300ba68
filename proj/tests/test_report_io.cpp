#include "geomtomo/report_io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <sstream>
#include <vector>

using namespace geomtomo;
using nlohmann::json;

namespace {
std::vector<CheckReport> sample_checks() {
    VerifyOptions vo;
    vo.compute.level = 2;
    vo.compute.seed = 4242;
    vo.instances = 8;
    return run_battery("theorems", vo);
}
}  // namespace

TEST_CASE("report documents are self-describing and reproducible") {
    auto checks = sample_checks();
    std::string config = R"({"command":"battery","suite":"theorems","seed":4242})";
    std::string a = report_json(checks, config, "");
    std::string b = report_json(sample_checks(), config, "");
    CHECK(a == b);

    json doc = json::parse(a);
    CHECK(doc["schema"] == "geomtomo/check-report/v1");
    CHECK(doc["config"]["seed"] == 4242);
    CHECK(doc.contains("timestamp") == false);
    REQUIRE(doc["checks"].size() == checks.size());
    CHECK(doc["manifest"].size() == checks.size());
    CHECK(doc["summary"]["pass"].get<int>() + doc["summary"]["fail"].get<int>() +
              doc["summary"]["diagnostic"].get<int>() ==
          static_cast<int>(checks.size()));

    // every recorded value carries its method and error estimate
    for (const auto& c : doc["checks"]) {
        CHECK(c.contains("seed"));
        CHECK(c.contains("noise_tolerance"));
        for (const auto& p : c["provenance"]) {
            CHECK(p.contains("method"));
            CHECK(p.contains("error_estimate"));
        }
    }

    std::string stamped = report_json(checks, config, "2026-01-01T00:00:00Z");
    CHECK(json::parse(stamped)["timestamp"] == "2026-01-01T00:00:00Z");
}

TEST_CASE("csv and json reports carry the same numeric payload") {
    auto checks = sample_checks();
    json doc = json::parse(report_json(checks, "{}", ""));
    std::istringstream csv(report_csv(checks));
    std::string header;
    std::getline(csv, header);
    CHECK(header.find("check_id") == 0);
    CHECK(header.find("slack") != std::string::npos);

    std::size_t row = 0;
    std::string line;
    while (std::getline(csv, line)) {
        REQUIRE(row < checks.size());
        const json& jc = doc["checks"][row];
        std::string id = jc["check_id"].get<std::string>();
        CHECK(line.substr(0, id.size()) == id);
        // numeric fields reuse the JSON serialization byte for byte
        CHECK(line.find(json(checks[row].lhs).dump()) != std::string::npos);
        CHECK(line.find(json(checks[row].slack).dump()) != std::string::npos);
        row++;
    }
    CHECK(row == checks.size());
}

TEST_CASE("csv rows quote embedded delimiters") {
    CheckReport r;
    r.check_id = "demo";
    r.verdict = Verdict::diagnostic;
    r.details = "hypothesis fails, see \"notes\"";
    std::string csv = report_csv({r});
    CHECK(csv.find("\"hypothesis fails, see \"\"notes\"\"\"") != std::string::npos);
}

TEST_CASE("sweep documents round numbers identically in both formats") {
    SweepTable t;
    t.id = "remark31";
    t.columns = {"p", "observed", "predicted"};
    t.rows = {{1.0, 1.125, 1.125}, {10.0, 18.0 / 13.0, 18.0 / 13.0}};
    json doc = json::parse(sweep_json(t, R"({"command":"sweep"})", ""));
    CHECK(doc["schema"] == "geomtomo/sweep/v1");
    CHECK(doc["id"] == "remark31");
    CHECK(doc["rows"][1][1].get<double>() == 18.0 / 13.0);

    std::string csv = sweep_csv(t);
    CHECK(csv.find("p,observed,predicted") == 0);
    CHECK(csv.find(json(18.0 / 13.0).dump()) != std::string::npos);
}

TEST_CASE("value documents carry label, method, and error") {
    FunctionalValue v{4.1887902047863905, 1e-12, Method::analytic};
    json doc = json::parse(value_json(v, "volume", R"({"body":"ball"})", ""));
    CHECK(doc["schema"] == "geomtomo/value/v1");
    CHECK(doc["label"] == "volume");
    CHECK(doc["value"].get<double>() == v.value);
    CHECK(doc["method"] == "analytic");
    CHECK(doc["config"]["body"] == "ball");

    std::string csv = value_csv(v, "volume");
    CHECK(csv.find("label,value,error_estimate,method") == 0);
    CHECK(csv.find(json(v.value).dump()) != std::string::npos);
}

TEST_CASE("manifests list every check id in order") {
    auto checks = sample_checks();
    json doc = json::parse(manifest_json(checks));
    CHECK(doc["schema"] == "geomtomo/manifest/v1");
    REQUIRE(doc["checks"].size() == checks.size());
    for (std::size_t i = 0; i < checks.size(); i++)
        CHECK(doc["checks"][i] == checks[i].check_id);
}

TEST_CASE("thread cap does not change report bytes") {
    auto checks = sample_checks();
    std::string base = report_json(checks, "{}", "");
    setenv("GEOMTOMO_THREADS", "4", 1);
    std::string threaded = report_json(sample_checks(), "{}", "");
    setenv("GEOMTOMO_THREADS", "1", 1);
    std::string single = report_json(sample_checks(), "{}", "");
    unsetenv("GEOMTOMO_THREADS");
    CHECK(base == threaded);
    CHECK(base == single);
}

TEST_CASE("timestamps match the RFC 3339 layout") {
    std::string t = iso_timestamp();
    REQUIRE(t.size() == 20);
    CHECK(t[4] == '-');
    CHECK(t[10] == 'T');
    CHECK(t.back() == 'Z');
}
