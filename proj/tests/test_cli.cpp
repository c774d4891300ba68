#include "geomtomo/bodies.hpp"
#include "geomtomo/verifiers.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string scratch_dir() {
    static std::string dir = [] {
        char tmpl[] = "/tmp/geomtomo-cli-XXXXXX";
        char* made = mkdtemp(tmpl);
        REQUIRE(made != nullptr);
        return std::string(made);
    }();
    return dir;
}

std::string read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_all(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

RunResult run_cli(const std::string& args) {
    std::string so = scratch_dir() + "/stdout.txt";
    std::string se = scratch_dir() + "/stderr.txt";
    std::string cmd = std::string(GEOMTOMO_CLI_PATH) + " " + args + " >" + so + " 2>" + se;
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_all(so);
    r.err = read_all(se);
    return r;
}

}  // namespace

TEST_CASE("cli computes the unit ball volume") {
    RunResult r = run_cli("compute volume --body ball --dim 3");
    CHECK(r.code == 0);
    CHECK(r.out == "4.18879\n");
}

TEST_CASE("cli mini-specs cover boxes, cubes, and weights") {
    CHECK(run_cli("compute volume --body cube:1 --dim 3").out == "8\n");
    CHECK(run_cli("compute mass --body ball --measure radial:2 --dim 3").out.substr(0, 4) ==
          "2.51");  // 4*pi/5
    RunResult shadow = run_cli("compute shadow --body box:1,1,1 --theta 0,0,1 --dim 3");
    CHECK(shadow.code == 0);
    CHECK(shadow.out == "4\n");
}

TEST_CASE("cli reports malformed json with position") {
    std::string bad = scratch_dir() + "/bad.json";
    write_all(bad, "{\"kind\": \"ball\", \"dim\": 3, \"radius\"  }");
    RunResult r = run_cli("compute volume --body " + bad + " --dim 3");
    CHECK(r.code == 1);
    CHECK(r.err.find("config error") != std::string::npos);
    CHECK(r.err.find("line 1") != std::string::npos);
    CHECK(r.err.find("column") != std::string::npos);
}

TEST_CASE("cli reports missing fields in well-formed json as config errors") {
    std::string path = scratch_dir() + "/missing.json";
    write_all(path, R"({"kind":"ellipsoid","dim":3,"semi_axes":[1,2,3]})");
    RunResult r = run_cli("compute volume --body " + path + " --dim 3");
    CHECK(r.code == 1);
    CHECK(r.err.find("config error") != std::string::npos);
    CHECK(r.err.find("params") != std::string::npos);
}

TEST_CASE("cli rejects unsupported check and measure combinations by name") {
    RunResult r = run_cli("verify thm14 --body ball --measure gaussian --dim 3 --level 2");
    CHECK(r.code == 1);
    CHECK(r.err.find("config error") != std::string::npos);
    CHECK(r.err.find("gaussian") != std::string::npos);

    RunResult u = run_cli("compute volume --body wedge --dim 3");
    CHECK(u.code == 1);
    CHECK(u.err.find("config error") != std::string::npos);
}

TEST_CASE("cli verify passes a sharp instance and records the seed") {
    RunResult r = run_cli("verify thm12a --body ball --dim 3 --level 2 --seed 9");
    CHECK(r.code == 0);
    CHECK(r.out.find("pass") != std::string::npos);
    CHECK(r.out.find("seed: 9") != std::string::npos);
}

TEST_CASE("cli verify exits with the check-failure code on a refuted claim") {
    // a slab aligned with the single sampled direction satisfies the sampled
    // hypothesis but grossly violates the volume conclusion
    auto dirs = geomtomo::direction_grid(2, 2, 1);
    REQUIRE(dirs.size() == 1);
    geomtomo::Vec theta = dirs[0];
    geomtomo::Vec u = {-theta[1], theta[0]};
    geomtomo::BodySpec slab = geomtomo::BodySpec::h_polytope(
        {u, geomtomo::scaled(u, -1.0), theta, geomtomo::scaled(theta, -1.0)},
        {0.9, 0.9, 20.0, 20.0});
    json job;
    job["check"] = "gk";
    job["K"] = json::parse(slab.to_json());
    job["L"] = json::parse(geomtomo::BodySpec::ball(2, 1.0).to_json());
    job["k"] = 1;
    job["grid"] = 1;
    std::string path = scratch_dir() + "/slab.json";
    write_all(path, job.dump());
    RunResult r = run_cli("verify --check " + path + " --level 2");
    CHECK(r.code == 2);
    CHECK(r.out.find("fail") != std::string::npos);
}

TEST_CASE("cli sweep prints a monotone sharpness table") {
    RunResult r = run_cli("sweep remark31 --n 3 --p 1,10,100 --level 2 --seed 4");
    CHECK(r.code == 0);
    CHECK(r.out.find("p,") == 0);
    CHECK(r.out.find("# seed: 4") != std::string::npos);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    double prev = 0;
    int rows = 0;
    while (std::getline(lines, line) && line[0] != '#') {
        auto c1 = line.find(','), c2 = line.find(',', line.find(',') + 1);
        double observed = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        CHECK(observed > prev);
        prev = observed;
        rows++;
    }
    CHECK(rows == 3);
}

TEST_CASE("cli battery reports are reproducible modulo timestamp") {
    std::string a = scratch_dir() + "/a.json";
    std::string b = scratch_dir() + "/b.json";
    std::string args = "battery --suite theorems --instances 8 --seed 11 --level 2 --output ";
    CHECK(run_cli(args + a).code == 0);
    CHECK(run_cli(args + b).code == 0);
    json ja = json::parse(read_all(a));
    json jb = json::parse(read_all(b));
    CHECK(ja.contains("timestamp"));
    ja.erase("timestamp");
    jb.erase("timestamp");
    CHECK(ja.dump() == jb.dump());
    CHECK(ja["config"]["seed"] == 11);

    // manifest side file lists the same check ids
    json manifest = json::parse(read_all(scratch_dir() + "/a.manifest.json"));
    CHECK(manifest["schema"] == "geomtomo/manifest/v1");
    CHECK(manifest["checks"].size() == ja["checks"].size());
}

TEST_CASE("cli battery csv embeds the configuration") {
    std::string c = scratch_dir() + "/c.csv";
    RunResult r = run_cli(
        "battery --suite lemma_bank --instances 11 --seed 3 --level 2 --format csv --output " + c);
    CHECK(r.code == 0);
    CHECK(r.out.find("11 checks") != std::string::npos);
    std::string text = read_all(c);
    CHECK(text.find("# config: {") == 0);
    CHECK(text.find("check_id,verdict") != std::string::npos);
}

TEST_CASE("cli help exits cleanly") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("verify --help").code == 0);
}
