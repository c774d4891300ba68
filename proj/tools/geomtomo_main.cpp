// Command-line front door: compute single functionals, run verification
// checks and batteries, sweep sharpness parameters, emit reports.
//
// Exit codes: 0 all non-diagnostic checks pass, 2 at least one check failed,
// 1 configuration error (unknown spec, malformed JSON, unsupported
// body/measure combination).

#include "geomtomo/bodies.hpp"
#include "geomtomo/functionals.hpp"
#include "geomtomo/measures.hpp"
#include "geomtomo/report_io.hpp"
#include "geomtomo/verifiers.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace geomtomo;

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) out.push_back(item);
    return out;
}

double parse_double(const std::string& s) {
    if (s == "inf") return HUGE_VAL;
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw ConfigError("not a number: '" + s + "'");
    return v;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    for (const auto& item : split_list(s)) out.push_back(parse_double(item));
    return out;
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    for (double v : parse_doubles(s)) out.push_back(static_cast<int>(v));
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// translate nlohmann's byte offset into a line/column pair for diagnostics
std::string locate(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); i++) {
        if (text[i] == '\n') {
            line++;
            col = 1;
        } else {
            col++;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed JSON in " + origin + " at " + locate(text, e.byte) +
                          ": " + e.what());
    }
}

bool looks_like_json(const std::string& s) {
    auto pos = s.find_first_not_of(" \t\r\n");
    return pos != std::string::npos && (s[pos] == '{' || s[pos] == '[');
}

// body specs are JSON file paths, inline JSON objects, or short forms:
//   ball[:radius]  ellipsoid:a,b,...  box:w1,w2,...  cube[:half_width]
//   lp:p[,scale]   cross[:scale]
BodySpec resolve_body(const std::string& spec, int dim) {
    if (looks_like_json(spec))
        return BodySpec::from_json(parse_json_text(spec, "--body").dump());
    if (std::filesystem::exists(spec)) {
        std::string text = read_file(spec);
        return BodySpec::from_json(parse_json_text(text, "'" + spec + "'").dump());
    }
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) args = parse_doubles(spec.substr(colon + 1));
    if (name == "ball") return BodySpec::ball(dim, args.empty() ? 1.0 : args[0]);
    if (name == "ellipsoid") {
        if (args.empty()) throw ConfigError("ellipsoid needs semi-axes, e.g. ellipsoid:1,2,3");
        return BodySpec::ellipsoid(args);
    }
    if (name == "box") {
        if (args.empty()) throw ConfigError("box needs half-widths, e.g. box:1,0.5,2");
        return BodySpec::box(args);
    }
    if (name == "cube")
        return BodySpec::box(Vec(dim, args.empty() ? 1.0 : args[0]));
    if (name == "lp") {
        if (args.empty()) throw ConfigError("lp needs an exponent, e.g. lp:3 or lp:3,0.5");
        return BodySpec::lp_ball(dim, args[0], args.size() > 1 ? args[1] : 1.0);
    }
    if (name == "cross")
        return BodySpec::cross_polytope(dim, args.empty() ? 1.0 : args[0]);
    throw ConfigError("unknown body spec '" + spec + "'");
}

// measure specs: JSON path, inline JSON, or short forms
//   lebesgue  radial:p  cone:alpha[,axis components]  gaussian:sigma[,truncation]
MeasureSpec resolve_measure(const std::string& spec, int dim) {
    if (looks_like_json(spec))
        return MeasureSpec::from_json(parse_json_text(spec, "--measure").dump());
    if (std::filesystem::exists(spec)) {
        std::string text = read_file(spec);
        return MeasureSpec::from_json(parse_json_text(text, "'" + spec + "'").dump());
    }
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) args = parse_doubles(spec.substr(colon + 1));
    if (name == "lebesgue") return MeasureSpec::lebesgue();
    if (name == "radial") {
        if (args.empty()) throw ConfigError("radial needs an exponent, e.g. radial:2");
        return MeasureSpec::radial_power(args[0]);
    }
    if (name == "cone") {
        if (args.empty()) throw ConfigError("cone needs an exponent, e.g. cone:1");
        Vec axis(dim, 0.0);
        if (args.size() > 1) {
            if ((int)args.size() != dim + 1)
                throw ConfigError("cone axis must have --dim components");
            for (int i = 0; i < dim; i++) axis[i] = args[i + 1];
            double norm = std::sqrt(dot(axis, axis));
            if (norm == 0) throw ConfigError("cone axis must be nonzero");
            for (double& x : axis) x /= norm;
        } else {
            axis[0] = 1.0;
        }
        return MeasureSpec::cone_power(axis, args[0]);
    }
    if (name == "gaussian")
        return MeasureSpec::gaussian(args.empty() ? 1.0 : args[0],
                                     args.size() > 1 ? args[1] : HUGE_VAL);
    throw ConfigError("unknown measure spec '" + spec + "'");
}

Vec resolve_theta(const std::string& spec, int dim) {
    Vec theta(dim, 0.0);
    if (spec.empty()) {
        theta[0] = 1.0;
        return theta;
    }
    std::vector<double> parts = parse_doubles(spec);
    if ((int)parts.size() != dim)
        throw ConfigError("--theta must have --dim components");
    double norm = std::sqrt(dot(parts, parts));
    if (norm == 0) throw ConfigError("--theta must be nonzero");
    for (int i = 0; i < dim; i++) theta[i] = parts[i] / norm;
    return theta;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file '" + path + "'");
    out << text;
}

// common output plumbing shared by the subcommands
struct OutputSpec {
    std::string path;
    std::string format = "json";
};

void require_format(const OutputSpec& o) {
    if (o.format != "json" && o.format != "csv")
        throw ConfigError("--format must be json or csv");
}

std::string csv_with_config(const std::string& config, const std::string& csv) {
    return "# config: " + config + "\n" + csv;
}

void write_checks(const OutputSpec& o, const std::vector<CheckReport>& checks,
                  const std::string& config, bool with_manifest) {
    if (o.path.empty()) return;
    if (o.format == "json")
        write_text(o.path, report_json(checks, config, iso_timestamp()));
    else
        write_text(o.path, csv_with_config(config, report_csv(checks)));
    if (with_manifest) {
        std::filesystem::path p(o.path);
        p.replace_extension();
        write_text(p.string() + ".manifest.json", manifest_json(checks));
    }
}

void print_check(const CheckReport& r) {
    std::printf("%-22s %-10s lhs=%-12.6g rhs=%-12.6g slack=%-12.6g margin=%-12.6g noise=%.3g\n",
                r.check_id.c_str(), to_string(r.verdict).c_str(), r.lhs, r.rhs, r.slack,
                r.hypothesis_margin, r.noise_tolerance);
    if (r.verdict != Verdict::pass && !r.details.empty())
        std::printf("    %s\n", r.details.c_str());
}

int verdict_exit(const std::vector<CheckReport>& checks) {
    for (const auto& r : checks)
        if (r.verdict == Verdict::fail) return 2;
    return 0;
}

// ---- compute ----------------------------------------------------------------

struct ComputeArgs {
    std::string quantity;
    std::string body = "ball";
    std::string measure = "lebesgue";
    std::string theta;
    int dim = 3;
    ComputeOptions opt;
    OutputSpec out;
};

int run_compute(const ComputeArgs& a) {
    require_format(a.out);
    BodySpec body = resolve_body(a.body, a.dim);
    MeasureSpec mu = resolve_measure(a.measure, body.dim);
    FunctionalValue v;
    if (a.quantity == "volume")
        v = body_measure(body, MeasureSpec::lebesgue(), a.opt);
    else if (a.quantity == "mass")
        v = body_measure(body, mu, a.opt);
    else if (a.quantity == "section")
        v = section_measure(body, mu, resolve_theta(a.theta, body.dim), a.opt);
    else if (a.quantity == "shadow")
        v = projection_area(body, resolve_theta(a.theta, body.dim), a.opt);
    else if (a.quantity == "mu_projection")
        v = mu_projection(body, mu, resolve_theta(a.theta, body.dim), a.opt);
    else if (a.quantity == "surface_area")
        v = surface_area(body, a.opt);
    else if (a.quantity == "mean_width")
        v = mean_width(body, a.opt);
    else if (a.quantity == "isotropic")
        v = isotropic_constant(body, a.opt);
    else
        throw ConfigError("unknown quantity '" + a.quantity +
                          "' (expected volume, mass, section, shadow, mu_projection, "
                          "surface_area, mean_width, isotropic)");
    json config = {{"command", "compute"},    {"quantity", a.quantity},
                   {"body", json::parse(body.to_json())},
                   {"measure", json::parse(mu.to_json())},
                   {"level", a.opt.level},    {"seed", a.opt.seed},
                   {"format", a.out.format}};
    if (!a.theta.empty()) config["theta"] = a.theta;
    std::printf("%.6g\n", v.value);
    if (!a.out.path.empty()) {
        if (a.out.format == "json")
            write_text(a.out.path, value_json(v, a.quantity, config.dump(), iso_timestamp()));
        else
            write_text(a.out.path, csv_with_config(config.dump(), value_csv(v, a.quantity)));
    }
    return 0;
}

// ---- verify -----------------------------------------------------------------

struct VerifyArgs {
    std::string check;
    std::vector<std::string> bodies;
    std::string measure;
    int dim = 3;
    int k = 0;                      // 0: default per check
    VerifyOptions vo;
    OutputSpec out;
    bool measure_given = false;
};

// a check JSON file/inline object bundles the job: {"check": "thm12a",
// "K": <body>, "L": <body>, "measure": <measure>, "k": 2, "epsilon": 0.1,
// "r": 1, "grid": 64, "enforce": true}; explicit flags take precedence
void merge_check_json(VerifyArgs& a, const json& j) {
    if (!j.contains("check")) throw ConfigError("check JSON needs a \"check\" field");
    a.check = j.at("check").get<std::string>();
    auto body_text = [](const json& v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
    };
    if (a.bodies.empty() && j.contains("K")) a.bodies.push_back(body_text(j.at("K")));
    if (a.bodies.size() < 2 && j.contains("L")) a.bodies.push_back(body_text(j.at("L")));
    if (!a.measure_given && j.contains("measure")) {
        a.measure = body_text(j.at("measure"));
        a.measure_given = true;
    }
    if (j.contains("k")) a.k = j.at("k").get<int>();
    if (j.contains("epsilon")) a.vo.epsilon = j.at("epsilon").get<double>();
    if (j.contains("r")) a.vo.r = j.at("r").get<double>();
    if (j.contains("grid")) a.vo.grid_target = j.at("grid").get<int>();
    if (j.contains("enforce")) a.vo.enforce = j.at("enforce").get<bool>();
}

int run_verify(VerifyArgs a) {
    require_format(a.out);
    if (looks_like_json(a.check))
        merge_check_json(a, parse_json_text(a.check, "--check"));
    else if (std::filesystem::exists(a.check)) {
        std::string text = read_file(a.check);
        merge_check_json(a, parse_json_text(text, "'" + a.check + "'"));
    }
    if (a.bodies.empty()) a.bodies.push_back("ball");
    BodySpec K = resolve_body(a.bodies[0], a.dim);
    BodySpec L = a.bodies.size() > 1 ? resolve_body(a.bodies[1], a.dim) : K;
    if (K.dim != L.dim) throw ConfigError("the two bodies must share a dimension");
    MeasureSpec mu = resolve_measure(a.measure.empty() ? "lebesgue" : a.measure, K.dim);
    int k = a.k > 0 ? a.k : K.dim - 1;
    if (k < 1 || k >= K.dim) throw ConfigError("--k must lie in 1..dim-1");

    std::vector<CheckReport> checks;
    const std::string& id = a.check;
    if (id == "gk")
        checks.push_back(verify_gk(K, L, k, a.vo));
    else if (id == "thm12a" || id == "thm12b")
        checks.push_back(verify_thm12(K, L, mu, id.back(), a.vo));
    else if (id == "cor13a" || id == "cor13b")
        checks.push_back(verify_cor13(K, L, mu, id.back(), a.vo));
    else if (id == "prop31")
        checks = verify_prop31(K, L, k, a.vo);
    else if (id == "thm14")
        checks.push_back(verify_thm14(K, L, mu, a.vo));
    else if (id == "thm51")
        checks = verify_thm51(K, L, mu, a.vo);
    else if (id == "prop53")
        checks.push_back(verify_prop53(K, k, a.vo));
    else if (id == "thm61")
        checks.push_back(verify_thm61(K, L, mu, a.vo));
    else
        throw ConfigError("unknown check '" + id +
                          "' (expected gk, thm12a, thm12b, cor13a, cor13b, prop31, "
                          "thm14, thm51, prop53, thm61)");

    json config = {{"command", "verify"},  {"check", id},
                   {"K", json::parse(K.to_json())},
                   {"L", json::parse(L.to_json())},
                   {"measure", json::parse(mu.to_json())},
                   {"k", k},               {"r", a.vo.r},
                   {"epsilon", a.vo.epsilon}, {"grid", a.vo.grid_target},
                   {"enforce", a.vo.enforce}, {"level", a.vo.compute.level},
                   {"seed", a.vo.compute.seed}, {"format", a.out.format}};
    for (const auto& r : checks) print_check(r);
    std::printf("seed: %llu\n", (unsigned long long)a.vo.compute.seed);
    write_checks(a.out, checks, config.dump(), false);
    return verdict_exit(checks);
}

// ---- sweep ------------------------------------------------------------------

struct SweepArgs {
    std::string id;
    std::string ns = "";
    std::string ps = "";
    VerifyOptions vo;
    OutputSpec out;
};

int run_sweep(const SweepArgs& a) {
    require_format(a.out);
    SweepTable table;
    std::vector<int> ns = a.ns.empty() ? std::vector<int>{} : parse_ints(a.ns);
    if (a.id == "remark31") {
        int n = ns.empty() ? 3 : ns[0];
        std::vector<double> ps =
            a.ps.empty() ? std::vector<double>{1, 10, 100, 1000} : parse_doubles(a.ps);
        table = sweep_remark31(n, ps, a.vo);
    } else if (a.id == "remark61") {
        table = sweep_remark61(ns.empty() ? std::vector<int>{3, 4, 5} : ns, a.vo);
    } else if (a.id == "remark32") {
        table = sweep_remark32(ns.empty() ? 3 : ns[0], {1, 2, 3, 4}, a.vo);
    } else if (a.id == "remark41") {
        table = sweep_remark41(ns.empty() ? 3 : ns[0], a.vo);
    } else {
        throw ConfigError("unknown sweep '" + a.id +
                          "' (expected remark31, remark61, remark32, remark41)");
    }
    json config = {{"command", "sweep"},       {"sweep", a.id},
                   {"n", a.ns.empty() ? "default" : a.ns},
                   {"p", a.ps.empty() ? "default" : a.ps},
                   {"level", a.vo.compute.level}, {"seed", a.vo.compute.seed},
                   {"format", a.out.format}};
    std::fputs(sweep_csv(table).c_str(), stdout);
    std::printf("# seed: %llu\n", (unsigned long long)a.vo.compute.seed);
    if (!a.out.path.empty()) {
        if (a.out.format == "json")
            write_text(a.out.path, sweep_json(table, config.dump(), iso_timestamp()));
        else
            write_text(a.out.path, csv_with_config(config.dump(), sweep_csv(table)));
    }
    return 0;
}

// ---- battery ----------------------------------------------------------------

struct BatteryArgs {
    std::string suite = "all";
    VerifyOptions vo;
    OutputSpec out;
};

int run_battery_cmd(const BatteryArgs& a) {
    require_format(a.out);
    std::vector<CheckReport> checks = run_battery(a.suite, a.vo);
    int pass = 0, fail = 0, diag = 0;
    for (const auto& r : checks) {
        if (r.verdict == Verdict::pass) pass++;
        else if (r.verdict == Verdict::fail) fail++;
        else diag++;
        if (r.verdict != Verdict::pass) print_check(r);
    }
    std::printf("suite %s: %d checks, %d pass, %d fail, %d diagnostic (seed %llu, level %d)\n",
                a.suite.c_str(), (int)checks.size(), pass, fail, diag,
                (unsigned long long)a.vo.compute.seed, a.vo.compute.level);
    json config = {{"command", "battery"}, {"suite", a.suite},
                   {"instances", a.vo.instances}, {"grid", a.vo.grid_target},
                   {"r", a.vo.r},          {"epsilon", a.vo.epsilon},
                   {"level", a.vo.compute.level}, {"seed", a.vo.compute.seed},
                   {"format", a.out.format}};
    write_checks(a.out, checks, config.dump(), true);
    return verdict_exit(checks);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geometric tomography toolkit: functionals of convex/star bodies "
                 "against radial-friendly measures, with inequality verification"};
    app.require_subcommand(1);

    ComputeArgs ca;
    CLI::App* compute = app.add_subcommand(
        "compute", "evaluate one functional (volume, mass, section, shadow, "
                   "mu_projection, surface_area, mean_width, isotropic)");
    compute->add_option("quantity", ca.quantity, "functional to evaluate")->required();
    compute->add_option("--body", ca.body, "body spec (short form, JSON, or path)");
    compute->add_option("--measure", ca.measure, "measure spec (short form, JSON, or path)");
    compute->add_option("--theta", ca.theta, "direction, comma-separated (default e1)");
    compute->add_option("--dim", ca.dim, "ambient dimension for short-form bodies");
    compute->add_option("--level", ca.opt.level, "quadrature level")->check(CLI::Range(1, 5));
    compute->add_option("--seed", ca.opt.seed, "seed for stochastic paths");
    compute->add_option("--output", ca.out.path, "report file path");
    compute->add_option("--format", ca.out.format, "json or csv");

    VerifyArgs va;
    CLI::App* verify = app.add_subcommand(
        "verify", "run one inequality check (gk, thm12a/b, cor13a/b, prop31, thm14, "
                  "thm51, prop53, thm61)");
    verify->add_option("id", va.check, "check id, JSON spec, or path");
    verify->add_option("--check", va.check, "check id, JSON spec, or path");
    verify->add_option("--body", va.bodies,
                       "body specs; first is K, second (optional) is L")->expected(1, 2);
    auto* meas_opt = verify->add_option("--measure", va.measure, "measure spec");
    verify->add_option("--dim", va.dim, "ambient dimension for short-form bodies");
    verify->add_option("--k", va.k, "subspace dimension (gk, prop31, prop53)");
    verify->add_option("--r", va.vo.r, "reference ball radius (thm51, thm61)");
    verify->add_option("--epsilon", va.vo.epsilon, "separation offset (thm14)");
    verify->add_option("--grid", va.vo.grid_target, "hypothesis grid size");
    verify->add_flag("--enforce", va.vo.enforce, "pre-scale L so the hypothesis binds");
    verify->add_option("--level", va.vo.compute.level, "quadrature level")
        ->check(CLI::Range(1, 5));
    verify->add_option("--seed", va.vo.compute.seed, "grid/battery seed");
    verify->add_option("--output", va.out.path, "report file path");
    verify->add_option("--format", va.out.format, "json or csv");

    SweepArgs sa;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "sharpness sweeps (remark31, remark61, remark32, remark41)");
    sweep->add_option("id", sa.id, "sweep id")->required();
    sweep->add_option("--n", sa.ns, "dimension(s), comma-separated");
    sweep->add_option("--p", sa.ps, "density exponents, comma-separated (remark31)");
    sweep->add_option("--grid", sa.vo.grid_target, "hypothesis grid size");
    sweep->add_option("--level", sa.vo.compute.level, "quadrature level")
        ->check(CLI::Range(1, 5));
    sweep->add_option("--seed", sa.vo.compute.seed, "quadrature seed");
    sweep->add_option("--output", sa.out.path, "report file path");
    sweep->add_option("--format", sa.out.format, "json or csv");

    BatteryArgs ba;
    CLI::App* battery = app.add_subcommand(
        "battery", "randomized check batteries (lemma_bank, theorems, all)");
    battery->add_option("--suite", ba.suite, "suite name");
    battery->add_option("--instances", ba.vo.instances, "number of randomized instances");
    battery->add_option("--grid", ba.vo.grid_target, "hypothesis grid size");
    battery->add_option("--r", ba.vo.r, "reference ball radius");
    battery->add_option("--epsilon", ba.vo.epsilon, "separation offset");
    battery->add_option("--level", ba.vo.compute.level, "quadrature level")
        ->check(CLI::Range(1, 5));
    battery->add_option("--seed", ba.vo.compute.seed, "battery seed");
    battery->add_option("--output", ba.out.path, "report file path");
    battery->add_option("--format", ba.out.format, "json or csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*compute) return run_compute(ca);
        if (*verify) {
            if (va.check.empty())
                throw ConfigError("verify needs a check id (positional or --check)");
            va.measure_given = meas_opt->count() > 0;
            return run_verify(va);
        }
        if (*sweep) return run_sweep(sa);
        if (*battery) return run_battery_cmd(ba);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const nlohmann::json::parse_error& e) {
        std::fprintf(stderr, "config error: malformed JSON: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const nlohmann::json::exception& e) {
        // well-formed JSON with missing or mistyped fields
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
