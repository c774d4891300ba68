// End-to-end acceptance runs: each block exercises one headline guarantee at
// its stated tolerance and prints a PASS/FAIL line.  The exit status is the
// number of failed blocks.

#include "geomtomo/functionals.hpp"
#include "geomtomo/quadrature.hpp"
#include "geomtomo/report_io.hpp"
#include "geomtomo/verifiers.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

using namespace geomtomo;

namespace {

int g_failures = 0;

class Block {
  public:
    explicit Block(std::string label)
        : label_(std::move(label)), start_(std::chrono::steady_clock::now()) {}

    void run(const std::function<std::string()>& body) {
        std::string detail;
        bool ok = true;
        try {
            detail = body();
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        if (!issues_.empty()) {
            ok = false;
            detail = issues_;
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
                          .count();
        std::printf("[%s] %-68s (%5.1fs) %s\n", ok ? "PASS" : "FAIL", label_.c_str(), secs,
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) g_failures++;
    }

    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (!issues_.empty()) issues_ += "; ";
            issues_ += what;
        }
    }

  private:
    std::string label_;
    std::string issues_;
    std::chrono::steady_clock::time_point start_;
};

std::string fmt1(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2e", x);
    return buf;
}

double rel_gap(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

// flat-density mu-projections coincide with shadows
static void block_projection_consistency() {
    Block blk("mu-projection under the flat density reproduces the shadow (50 draws)");
    blk.run([&]() -> std::string {
        ComputeOptions opt;
        opt.level = 3;
        Rng rng(20260814);
        double worst = 0;
        for (int i = 0; i < 50; i++) {
            int n = 2 + (i % 3);
            BodySpec body = random_body(rng, n, true);
            Vec theta = rng.sphere_point(n);
            FunctionalValue p = mu_projection(body, MeasureSpec::lebesgue(), theta, opt);
            FunctionalValue a = projection_area(body, theta, opt);
            double rel = rel_gap(p.value, a.value);
            worst = std::max(worst, rel);
            blk.require(rel <= 5e-3, "pair " + std::to_string(i) + " rel gap " + fmt1(rel));
        }
        return "max rel gap " + fmt1(worst) + " (tol 5e-3)";
    });
}

// spherical average of mu-projections equals the dilation integral of the
// mixed mass against the unit ball
static void block_projection_average_identity() {
    Block blk("spherical mu-projection average equals the dilation mixed-mass integral");
    blk.run([&]() -> std::string {
        ComputeOptions opt;
        opt.level = 2;
        int n = 3;
        std::vector<MeasureSpec> mus = {MeasureSpec::lebesgue(),
                                        MeasureSpec::cone_power({1, 0, 0}, 1.0),
                                        MeasureSpec::gaussian(1.0)};
        std::vector<BodySpec> bodies = {BodySpec::ball(3, 1.0), BodySpec::box({1, 0.8, 1.2}),
                                        BodySpec::ellipsoid({0.8, 1.0, 1.3})};
        QuadratureRule sphere = sphere_rule(n, opt.level);
        std::vector<double> tn, tw;
        radial_rule(3, tn, tw);
        double worst = 0;
        for (const auto& mu : mus) {
            for (const auto& body : bodies) {
                MuProjector proj(body, mu, opt);
                IntegralResult avg =
                    integrate(sphere, [&](const Vec& u) { return proj(u).value; });
                double lhs = avg.value / (n * unit_ball_volume(n - 1));
                double rhs = 0;
                for (std::size_t i = 0; i < tn.size(); i++) {
                    BodySpec slice = dilate(body, tn[i]);
                    rhs += tw[i] *
                           mixed_measure(slice, Addend::ball(1.0), mu, opt).value;
                }
                double rel = rel_gap(lhs, rhs);
                worst = std::max(worst, rel);
                blk.require(rel <= 1e-2, body.to_json().substr(0, 16) + " rel " + fmt1(rel));
            }
        }
        return "max rel gap " + fmt1(worst) + " over 9 measure/body pairs (tol 1e-2)";
    });
}

// weighted ball-pair ratio follows the closed form and approaches 3/2
static void block_sharpness_ratio() {
    Block blk("weighted section/projection ratio matches its closed form and tends to 3/2");
    blk.run([&]() -> std::string {
        VerifyOptions vo;
        vo.compute.level = 3;
        SweepTable t = sweep_remark31(3, {1, 10, 100, 1000}, vo);
        double prev = 0, worst = 0;
        for (const auto& row : t.rows) {
            double rel = rel_gap(row[1], row[2]);
            worst = std::max(worst, rel);
            blk.require(rel <= 1e-3, "p=" + std::to_string(row[0]) + " rel " + fmt1(rel));
            blk.require(row[1] > prev, "ratio not increasing at p=" + std::to_string(row[0]));
            prev = row[1];
        }
        blk.require(std::abs(t.rows.back()[1] - 1.5) < 2e-3, "limit not reached");
        return "max rel gap " + fmt1(worst) + ", final ratio " + std::to_string(prev);
    });
}

// enforced random pairs never violate the volume comparisons
static void block_enforced_volume_comparisons() {
    Block blk("volume comparisons hold on 30 enforced random symmetric pairs");
    blk.run([&]() -> std::string {
        VerifyOptions vo;
        vo.compute.level = 3;
        vo.grid_target = 48;
        vo.enforce = true;
        Rng rng(7177);
        int violations = 0;
        for (int i = 0; i < 30; i++) {
            int n = 2 + (i % 3);
            vo.compute.seed = rng.child_seed(i);
            BodySpec K = random_body(rng, n, true);
            BodySpec L = random_body(rng, n, true);
            CheckReport a = verify_thm12(K, L, MeasureSpec::lebesgue(), 'a', vo);
            CheckReport b = verify_cor13(K, L, MeasureSpec::lebesgue(), 'a', vo);
            for (const CheckReport* r : {&a, &b}) {
                if (r->slack < -r->noise_tolerance) {
                    violations++;
                    blk.require(false, r->check_id + " pair " + std::to_string(i) + " slack " +
                                           fmt1(r->slack));
                }
            }
        }
        return violations == 0 ? "0 violations in 60 checks" : "violations found";
    });
}

// separation slack is affine in the offset with the predicted coefficient
static void block_separation_slope() {
    Block blk("separation slack is affine in the offset with the predicted coefficient");
    blk.run([&]() -> std::string {
        double worst = 0;
        for (int n : {2, 3}) {
            Vec axis(n, 0.0);
            axis[n - 1] = 1.0;
            std::vector<MeasureSpec> mus = {MeasureSpec::lebesgue(),
                                            MeasureSpec::cone_power(axis, 1.0)};
            for (const auto& mu : mus) {
                double q = 1.0 / (n + mu.density_degree());
                double coeff = unit_ball_volume(n) / (std::pow(mu.ball_mass(n, 1.0), q) *
                                                      unit_ball_volume(n - 1));
                std::vector<double> eps = {0.0, 0.2, 0.4, 0.6};
                std::vector<double> slack;
                for (double e : eps) {
                    VerifyOptions vo;
                    vo.compute.level = 3;
                    vo.epsilon = e;
                    slack.push_back(
                        verify_thm14(BodySpec::ball(n, 1.0), BodySpec::ball(n, 1.0), mu, vo)
                            .slack);
                }
                for (std::size_t i = 1; i < eps.size(); i++) {
                    double slope = (slack[i] - slack[0]) / (eps[i] - eps[0]);
                    double rel = rel_gap(slope, coeff);
                    worst = std::max(worst, rel);
                    blk.require(rel <= 1e-3, "n=" + std::to_string(n) + " slope rel " + fmt1(rel));
                }
            }
        }
        return "max slope rel gap " + fmt1(worst) + " (tol 1e-3)";
    });
}

// slice-moment saturation on balls plus bounded-density bounds on random pairs
static void block_bounded_density() {
    Block blk("slice-moment bound saturates on balls; bounded-density bounds hold (20 pairs)");
    blk.run([&]() -> std::string {
        VerifyOptions vo;
        vo.compute.level = 3;
        for (int k : {1, 2}) {
            CheckReport sat = verify_prop53(BodySpec::ball(3, 1.0), k, vo);
            blk.require(std::abs(sat.slack) <= sat.noise_tolerance,
                        "saturation k=" + std::to_string(k) + " slack " + fmt1(sat.slack));
            blk.require(sat.verdict == Verdict::pass, "saturation verdict k=" + std::to_string(k));
        }

        VerifyOptions ev;
        ev.compute.level = 3;
        ev.grid_target = 32;
        ev.enforce = true;
        Rng rng(5150);
        int checks = 0;
        for (int i = 0; i < 20; i++) {
            ev.compute.seed = rng.child_seed(i);
            MeasureSpec mu = (i % 2 == 0) ? MeasureSpec::lebesgue() : MeasureSpec::gaussian(1.0, 8.0);
            double shrink = (i % 4 < 2) ? 0.5 : 0.12;
            BodySpec K = dilate(john_normalize(random_body(rng, 3, true)), shrink);
            BodySpec L = john_normalize(random_body(rng, 3, true));
            auto reps = verify_thm51(K, L, mu, ev);
            for (const auto& r : reps) {
                checks++;
                blk.require(r.verdict == Verdict::pass,
                            r.check_id + " pair " + std::to_string(i) + " not pass");
            }
        }
        return std::to_string(checks) + " bound checks passed";
    });
}

// log-regime boundary ratios and the ray-decreasing comparison
static void block_ray_decreasing() {
    Block blk("log-regime boundary ratios exact; gaussian ray-decreasing bound holds (10 pairs)");
    blk.run([&]() -> std::string {
        VerifyOptions vo;
        vo.compute.level = 3;
        SweepTable t = sweep_remark61({3, 4, 5}, vo);
        for (const auto& row : t.rows) {
            double n = row[0];
            blk.require(rel_gap(row[1], std::exp(-1.0 / n)) <= 1e-6,
                        "shrink ratio n=" + std::to_string(int(n)));
            blk.require(rel_gap(row[3], std::exp(1.0 / (n - 1.0))) <= 1e-6,
                        "growth ratio n=" + std::to_string(int(n)));
        }

        VerifyOptions ev;
        ev.compute.level = 3;
        ev.grid_target = 32;
        ev.enforce = true;
        Rng rng(6161);
        for (int i = 0; i < 10; i++) {
            ev.compute.seed = rng.child_seed(i);
            BodySpec K = dilate(john_normalize(random_body(rng, 3, true)), 0.45);
            BodySpec L = john_normalize(random_body(rng, 3, true));
            CheckReport rep = verify_thm61(K, L, MeasureSpec::gaussian(1.0), ev);
            blk.require(rep.verdict == Verdict::pass, "pair " + std::to_string(i) + " not pass");
        }
        return "boundary ratios within 1e-6; 10 weighted comparisons passed";
    });
}

// the full lemma battery stays clean across 200 seeded instances
static void block_lemma_battery() {
    Block blk("lemma battery: zero violations across 200 seeded instances");
    blk.run([&]() -> std::string {
        VerifyOptions vo;
        vo.compute.level = 3;
        vo.compute.seed = 42;
        vo.instances = 200;
        auto reps = lemma_bank(vo);
        int fails = 0, diags = 0;
        for (const auto& r : reps) {
            if (r.verdict == Verdict::fail) {
                fails++;
                blk.require(false, r.check_id + " failed (seed " + std::to_string(r.seed) + ")");
            }
            if (r.verdict == Verdict::diagnostic) diags++;
        }
        std::ostringstream os;
        os << reps.size() << " instances, " << fails << " failures, " << diags << " diagnostic";
        return os.str();
    });
}

// the two mixed-mass evaluation paths agree; facet shadows match Monte Carlo
static void block_mixed_paths() {
    Block blk("mixed-mass paths agree (30 draws); facet shadows match Monte Carlo (10 boxes)");
    blk.run([&]() -> std::string {
        ComputeOptions opt;
        opt.level = 3;
        Rng rng(9090);
        double worst = 0;
        for (int i = 0; i < 30; i++) {
            BodySpec body = random_body(rng, 3, true);
            MeasureSpec mu = random_measure(rng, 3);
            Addend addend = Addend::homothet(0.3);
            int pick = i % 3;
            if (pick == 1) {
                addend = Addend::segment(rng.sphere_point(3), 0.4);
            } else if (pick == 0 && body.kind != BodyKind::lp_ball) {
                addend = Addend::ball(0.5 + 0.3 * rng.uniform());
            }
            FunctionalValue b = mixed_measure(body, addend, mu, opt, MixedMethod::boundary);
            FunctionalValue f =
                mixed_measure(body, addend, mu, opt, MixedMethod::finite_difference);
            double rel = rel_gap(f.value, b.value);
            worst = std::max(worst, rel);
            blk.require(rel <= 1e-2, "draw " + std::to_string(i) + " rel " + fmt1(rel));
        }

        double worst_shadow = 0;
        for (int i = 0; i < 10; i++) {
            Vec hw = {rng.uniform(0.5, 1.4), rng.uniform(0.5, 1.4), rng.uniform(0.5, 1.4)};
            BodySpec box = BodySpec::box(hw);
            Vec theta = rng.sphere_point(3);
            FunctionalValue facet = projection_area(box, theta, opt);
            oracles::McValue mc = oracles::mc_shadow(box, theta, 800000, rng.child_seed(1000 + i));
            double rel = rel_gap(facet.value, mc.value);
            worst_shadow = std::max(worst_shadow, rel);
            blk.require(std::abs(facet.value - mc.value) <= 1e-2 * mc.value + 3.0 * mc.se,
                        "box " + std::to_string(i) + " rel " + fmt1(rel));
        }
        return "max path rel gap " + fmt1(worst) + ", max shadow rel gap " + fmt1(worst_shadow);
    });
}

// reports are reproducible byte for byte and verdicts survive refinement
static void block_reproducibility() {
    Block blk("batteries reproduce byte-identically; verdicts stable under refinement");
    blk.run([&]() -> std::string {
        VerifyOptions vo;
        vo.compute.level = 3;
        vo.compute.seed = 1234;
        vo.instances = 12;
        auto a = run_battery("theorems", vo);
        auto b = run_battery("theorems", vo);
        blk.require(report_json(a, "{}", "") == report_json(b, "{}", ""),
                    "same-seed reports differ");

        vo.compute.level = 4;
        auto c = run_battery("theorems", vo);
        blk.require(a.size() == c.size(), "instance count changed with level");
        int stable = 0;
        for (std::size_t i = 0; i < a.size() && i < c.size(); i++) {
            if (a[i].verdict == c[i].verdict) {
                stable++;
            } else {
                blk.require(false, a[i].check_id + " verdict changed at level 4");
            }
        }
        return std::to_string(stable) + " of " + std::to_string(a.size()) +
               " verdicts unchanged from level 3 to 4";
    });
}

int main() {
    std::printf("acceptance run (levels and tolerances as stated per block)\n");
    block_projection_consistency();
    block_projection_average_identity();
    block_sharpness_ratio();
    block_enforced_volume_comparisons();
    block_separation_slope();
    block_bounded_density();
    block_ray_decreasing();
    block_lemma_battery();
    block_mixed_paths();
    block_reproducibility();
    std::printf("acceptance: %d of 10 blocks passed\n", 10 - g_failures);
    return g_failures;
}
