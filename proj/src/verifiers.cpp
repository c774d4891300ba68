#include "geomtomo/verifiers.hpp"

#include "geomtomo/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace geomtomo {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::diagnostic: return "diagnostic";
    }
    return "?";
}

namespace {

// quadrature error estimates can understate near creases; margins are judged
// against a padded budget
constexpr double kSafety = 3.0;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

const char* kind_name(BodyKind k) {
    switch (k) {
        case BodyKind::ball: return "ball";
        case BodyKind::ellipsoid: return "ellipsoid";
        case BodyKind::lp_ball: return "lp_ball";
        case BodyKind::box: return "box";
        case BodyKind::cross_polytope: return "cross_polytope";
        case BodyKind::h_polytope: return "h_polytope";
    }
    return "?";
}

std::string body_label(const BodySpec& b) {
    std::string s = kind_name(b.kind);
    s += std::to_string(b.dim);
    if (b.kind == BodyKind::lp_ball) s += "(p=" + fmt(b.p) + ")";
    return s;
}

std::string measure_label(const MeasureSpec& m) {
    switch (m.kind) {
        case MeasureKind::lebesgue: return "lebesgue";
        case MeasureKind::radial_power: return "radial_power(" + fmt(m.exponent) + ")";
        case MeasureKind::cone_power: return "cone_power(" + fmt(m.exponent) + ")";
        case MeasureKind::gaussian:
            if (std::isfinite(m.truncation))
                return "gaussian(" + fmt(m.sigma) + ",trunc=" + fmt(m.truncation) + ")";
            return "gaussian(" + fmt(m.sigma) + ")";
    }
    return "?";
}

void note(CheckReport& rep, const std::string& label, const FunctionalValue& v) {
    rep.provenance.push_back(ValueDigest{label, v.value, v.error, to_string(v.method)});
}

void add_detail(CheckReport& rep, const std::string& text) {
    if (!rep.details.empty()) rep.details += "; ";
    rep.details += text;
}

void settle(CheckReport& rep, bool force_diagnostic = false) {
    if (force_diagnostic) {
        rep.verdict = Verdict::diagnostic;
        return;
    }
    if (rep.hypothesis_margin < -rep.noise_tolerance) {
        rep.verdict = Verdict::diagnostic;
        add_detail(rep, "hypothesis violated beyond noise; conclusion not claimed");
        return;
    }
    rep.verdict = rep.slack >= -rep.noise_tolerance ? Verdict::pass : Verdict::fail;
}

// non-homogeneous measures saturate under dilation, so a scale meeting the
// hypothesis may not exist; such instances drop to diagnostic
bool enforce_or_flag(CheckReport& rep, double& scale, const std::vector<double>& lhs,
                     const std::function<std::vector<double>(double)>& rhs_at_scale) {
    try {
        scale = enforce_hypothesis(lhs, rhs_at_scale, std::nullopt);
        return true;
    } catch (const std::runtime_error&) {
        add_detail(rep, "no dilation of L meets the hypothesis (the dominating side saturates)");
        return false;
    }
}

// x^e with first-order error transport
FunctionalValue power_of(const FunctionalValue& x, double e) {
    FunctionalValue out;
    out.value = std::pow(x.value, e);
    out.error = x.value > 0 ? std::abs(e) * std::pow(x.value, e - 1.0) * x.error : x.error;
    out.method = x.method;
    return out;
}

double tiny_floor(double a, double b) { return 1e-12 * (std::abs(a) + std::abs(b)) + 1e-300; }

using DirFn = std::function<FunctionalValue(const Vec&)>;

struct HypScan {
    std::vector<FunctionalValue> lhs, rhs;
    double margin = 0;
    double noise = 0;
};

void finalize_scan(HypScan& s) {
    s.margin = HUGE_VAL;
    s.noise = 0;
    for (std::size_t i = 0; i < s.lhs.size(); ++i) {
        double m = s.rhs[i].value - s.lhs[i].value;
        if (m < s.margin) {
            s.margin = m;
            s.noise = kSafety * (s.rhs[i].error + s.lhs[i].error) +
                      tiny_floor(s.rhs[i].value, s.lhs[i].value);
        }
    }
    if (s.lhs.empty()) {
        s.margin = 0;
        s.noise = 0;
    }
}

HypScan scan_dirs(const std::vector<Vec>& dirs, const DirFn& lhs_fn, const DirFn& rhs_fn) {
    HypScan s;
    s.lhs.reserve(dirs.size());
    s.rhs.reserve(dirs.size());
    for (const Vec& d : dirs) {
        s.lhs.push_back(lhs_fn(d));
        s.rhs.push_back(rhs_fn(d));
    }
    finalize_scan(s);
    return s;
}

std::vector<double> values_of(const std::vector<FunctionalValue>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.value);
    return out;
}

// right side of a scan obeys rhs(sL) = s^e rhs(L); rescale in place
void rescale_rhs(HypScan& s, double scale, double e) {
    double f = std::pow(scale, e);
    for (auto& v : s.rhs) {
        v.value *= f;
        v.error *= f;
    }
    finalize_scan(s);
}

// integrate a value-with-error field over a deterministic sphere rule
FunctionalValue rule_integral(const QuadratureRule& rule, const DirFn& f) {
    std::vector<double> fine, errs, coarse;
    fine.reserve(rule.nodes.size());
    errs.reserve(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        FunctionalValue v = f(rule.nodes[i]);
        fine.push_back(rule.weights[i] * v.value);
        errs.push_back(rule.weights[i] * v.error);
    }
    coarse.reserve(rule.coarse_nodes.size());
    for (std::size_t i = 0; i < rule.coarse_nodes.size(); ++i)
        coarse.push_back(rule.coarse_weights[i] * f(rule.coarse_nodes[i]).value);
    FunctionalValue out;
    out.value = pairwise_sum(fine);
    out.error = std::abs(out.value - pairwise_sum(coarse)) + pairwise_sum(errs) +
                1e-14 * std::abs(out.value);
    out.method = Method::boundary_quadrature;
    return out;
}

// q-concavity exponent under Minkowski combinations; nullopt means only the
// log-concave form (or nothing) is available
std::optional<double> minkowski_q(const MeasureSpec& m, int n) {
    switch (m.kind) {
        case MeasureKind::lebesgue: return 1.0 / n;
        case MeasureKind::cone_power: return 1.0 / (n + m.exponent);
        case MeasureKind::radial_power: return std::nullopt;  // |x|^p is not power-concave
        case MeasureKind::gaussian: return m.q_exponent(n);   // truncated only
    }
    return std::nullopt;
}

unsigned thread_budget(std::size_t jobs) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("GEOMTOMO_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0 && v < 1024) hw = static_cast<unsigned>(v);
    }
    return static_cast<unsigned>(std::min<std::size_t>(hw, jobs));
}

std::vector<CheckReport> run_jobs(const std::vector<std::function<CheckReport()>>& jobs) {
    std::vector<CheckReport> out(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            try {
                out[i] = jobs[i]();
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    unsigned workers = thread_budget(jobs.size());
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    return x;
}

}  // namespace

// ---- grids and hypothesis scaling ------------------------------------------------

std::vector<Vec> direction_grid(int dim, int level, int target) {
    if (target < 1) throw std::invalid_argument("direction_grid: target must be positive");
    QuadratureRule rule = sphere_rule(dim, level, 7);
    std::size_t total = rule.nodes.size();
    std::size_t stride = std::max<std::size_t>(1, total / static_cast<std::size_t>(target));
    std::vector<Vec> dirs;
    for (std::size_t i = stride / 2; i < total; i += stride) dirs.push_back(rule.nodes[i]);
    return dirs;
}

std::vector<Frame> frame_grid(int dim, int k, int count, std::uint64_t seed) {
    if (k < 1 || k >= dim) throw std::invalid_argument("frame_grid: need 1 <= k < dim");
    Rng rng(seed);
    std::vector<Frame> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(Frame::subspace(dim, grassmann_frame(rng, dim, k)));
    return out;
}

double enforce_hypothesis(const std::vector<double>& lhs,
                          const std::function<std::vector<double>(double)>& rhs_at_scale,
                          std::optional<double> scaling_exponent) {
    if (lhs.empty()) throw std::invalid_argument("enforce_hypothesis: empty grid");
    if (scaling_exponent) {
        double e = *scaling_exponent;
        if (e <= 0) throw std::invalid_argument("enforce_hypothesis: exponent must be positive");
        std::vector<double> r1 = rhs_at_scale(1.0);
        if (r1.size() != lhs.size())
            throw std::invalid_argument("enforce_hypothesis: side size mismatch");
        double best = 0;
        for (std::size_t i = 0; i < lhs.size(); ++i) {
            if (lhs[i] <= 0) continue;
            if (r1[i] <= 0)
                throw std::domain_error(
                    "enforce_hypothesis: right side vanishes where the left side is positive");
            best = std::max(best, std::pow(lhs[i] / r1[i], 1.0 / e));
        }
        return best == 0 ? 1.0 : best;
    }
    auto margin = [&](double s) {
        std::vector<double> r = rhs_at_scale(s);
        if (r.size() != lhs.size())
            throw std::invalid_argument("enforce_hypothesis: side size mismatch");
        double m = HUGE_VAL;
        for (std::size_t i = 0; i < lhs.size(); ++i) m = std::min(m, r[i] - lhs[i]);
        return m;
    };
    double lo = 1.0, hi = 1.0;
    if (margin(1.0) >= 0) {
        lo = 0.5;
        int guard = 0;
        while (margin(lo) >= 0) {
            hi = lo;
            lo *= 0.5;
            if (++guard > 120) return hi;  // satisfied at every probed scale
        }
    } else {
        hi = 2.0;
        int guard = 0;
        while (margin(hi) < 0) {
            lo = hi;
            hi *= 2.0;
            if (++guard > 120)
                throw std::runtime_error(
                    "enforce_hypothesis: no scale satisfies the grid hypothesis");
        }
    }
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        (margin(mid) >= 0 ? hi : lo) = mid;
    }
    return hi;
}

// ---- individual checks ------------------------------------------------------------

CheckReport verify_gk(const BodySpec& K, const BodySpec& L, int k, const VerifyOptions& vo) {
    int n = K.dim;
    if (L.dim != n) throw std::invalid_argument("verify_gk: dimension mismatch");
    if (k < 1 || k > n - 1) throw std::invalid_argument("verify_gk: need 1 <= k <= n-1");
    const MeasureSpec leb = MeasureSpec::lebesgue();
    const ComputeOptions& co = vo.compute;

    CheckReport rep;
    rep.check_id = "gk_k" + std::to_string(k);
    rep.seed = co.seed;
    rep.details = "K=" + body_label(K) + " L=" + body_label(L) + " n=" + std::to_string(n);

    HypScan scan;
    if (k == n - 1) {
        auto dirs = direction_grid(n, co.level, vo.grid_target);
        scan = scan_dirs(
            dirs, [&](const Vec& d) { return projection_area(K, d, co); },
            [&](const Vec& d) { return section_measure(L, leb, d, co); });
        rep.grid_size = static_cast<int>(dirs.size());
    } else {
        auto frames = frame_grid(n, k, vo.grid_target, co.seed);
        scan.lhs.reserve(frames.size());
        scan.rhs.reserve(frames.size());
        for (const Frame& f : frames) {
            scan.lhs.push_back(subspace_projection_volume(K, f, co));
            scan.rhs.push_back(subspace_measure(L, leb, f, co));
        }
        finalize_scan(scan);
        rep.grid_size = static_cast<int>(frames.size());
    }

    double scale = 1.0;
    if (vo.enforce) {
        scale = enforce_hypothesis(values_of(scan.lhs),
                                   [&](double) { return values_of(scan.rhs); }, double(k));
        rescale_rhs(scan, scale, double(k));
        add_detail(rep, "L scaled by " + fmt(scale));
    }
    rep.hypothesis_margin = scan.margin;

    BodySpec L2 = scale == 1.0 ? L : dilate(L, scale);
    FunctionalValue volK = body_measure(K, leb, co);
    FunctionalValue volL = body_measure(L2, leb, co);
    rep.lhs = volK.value;
    rep.rhs = volL.value;
    rep.slack = rep.rhs - rep.lhs;
    rep.noise_tolerance =
        scan.noise + kSafety * (volK.error + volL.error) + tiny_floor(rep.lhs, rep.rhs);
    note(rep, "vol_K", volK);
    note(rep, "vol_L", volL);
    settle(rep);
    return rep;
}

CheckReport verify_thm12(const BodySpec& K, const BodySpec& L, const MeasureSpec& mu,
                         char variant, const VerifyOptions& vo) {
    int n = K.dim;
    if (L.dim != n) throw std::invalid_argument("verify_thm12: dimension mismatch");
    if (variant != 'a' && variant != 'b')
        throw std::invalid_argument("verify_thm12: variant must be 'a' or 'b'");
    const ComputeOptions& co = vo.compute;
    const MeasureSpec leb = MeasureSpec::lebesgue();

    CheckReport rep;
    rep.check_id = variant == 'a' ? "thm12a" : "thm12b";
    rep.seed = co.seed;
    rep.details = "K=" + body_label(K) + " L=" + body_label(L) + " mu=" + measure_label(mu);

    if (variant == 'a' && mu.kind != MeasureKind::lebesgue)
        throw std::invalid_argument("verify_thm12: variant a is a volume comparison (lebesgue only)");
    if (variant == 'b' && !L.symmetric())
        throw std::invalid_argument("verify_thm12: variant b requires an origin-symmetric L");

    auto dirs = direction_grid(n, co.level, vo.grid_target);
    rep.grid_size = static_cast<int>(dirs.size());

    HypScan scan;
    double scale = 1.0;
    bool enforce_failed = false;
    BodySpec L2 = L;
    if (variant == 'a') {
        scan = scan_dirs(
            dirs, [&](const Vec& d) { return section_measure(K, leb, d, co); },
            [&](const Vec& d) { return projection_area(L, d, co); });
        if (vo.enforce) {
            scale = enforce_hypothesis(values_of(scan.lhs),
                                       [&](double) { return values_of(scan.rhs); }, double(n - 1));
            rescale_rhs(scan, scale, double(n - 1));
        }
    } else {
        MuProjector proj(L, mu, co);
        scan = scan_dirs(
            dirs, [&](const Vec& d) { return section_measure(K, mu, d, co); },
            [&](const Vec& d) { return proj(d); });
        if (vo.enforce) {
            if (mu.homogeneous()) {
                double e = n - 1.0 + mu.density_degree();
                scale = enforce_hypothesis(values_of(scan.lhs),
                                           [&](double) { return values_of(scan.rhs); }, e);
                rescale_rhs(scan, scale, e);
            } else if (enforce_or_flag(rep, scale, values_of(scan.lhs), [&](double s) {
                           MuProjector p(dilate(L, s), mu, co);
                           std::vector<double> out;
                           out.reserve(dirs.size());
                           for (const Vec& d : dirs) out.push_back(p(d).value);
                           return out;
                       })) {
                MuProjector p2(dilate(L, scale), mu, co);
                scan.rhs.clear();
                for (const Vec& d : dirs) scan.rhs.push_back(p2(d));
                finalize_scan(scan);
            } else {
                enforce_failed = true;
            }
        }
    }
    if (scale != 1.0) {
        L2 = dilate(L, scale);
        add_detail(rep, "L scaled by " + fmt(scale));
    }
    rep.hypothesis_margin = scan.margin;

    double R = radii(K).circumradius;
    double r = radii(L2).inradius;
    add_detail(rep, "R=" + fmt(R) + " r=" + fmt(r));

    if (variant == 'a') {
        FunctionalValue volK = body_measure(K, leb, co);
        FunctionalValue volL = body_measure(L2, leb, co);
        rep.lhs = volK.value;
        rep.rhs = (R / r) * volL.value;
        rep.slack = rep.rhs - rep.lhs;
        rep.noise_tolerance = scan.noise + kSafety * (volK.error + (R / r) * volL.error) +
                              tiny_floor(rep.lhs, rep.rhs);
        note(rep, "vol_K", volK);
        note(rep, "vol_L", volL);
        // refined bound with an unspecified absolute constant: report the
        // realized coefficient only
        try {
            ComputeOptions iso = co;
            iso.level = std::min(co.level, 2);
            FunctionalValue lk = isotropic_constant(K, iso);
            double denom = std::sqrt(lk.value) * std::pow(double(n), 0.75) *
                           std::pow(R / r, n / (2.0 * n - 1.0)) * volL.value;
            add_detail(rep, "refined-bound realized coefficient " + fmt(volK.value / denom) +
                                " (constant unspecified, informational)");
            note(rep, "L_K", lk);
        } catch (const std::exception& e) {
            add_detail(rep, std::string("isotropic constant unavailable: ") + e.what());
        }
    } else {
        FunctionalValue mK = body_measure(K, mu, co);
        FunctionalValue mL = body_measure(L2, mu, co);
        double c = R / (r * (1.0 - 1.0 / n));
        rep.lhs = mK.value;
        rep.rhs = c * mL.value;
        rep.slack = rep.rhs - rep.lhs;
        rep.noise_tolerance =
            scan.noise + kSafety * (mK.error + c * mL.error) + tiny_floor(rep.lhs, rep.rhs);
        note(rep, "mass_K", mK);
        note(rep, "mass_L", mL);
    }
    settle(rep, enforce_failed);
    return rep;
}

CheckReport verify_cor13(const BodySpec& K, const BodySpec& L, const MeasureSpec& mu,
                         char variant, const VerifyOptions& vo) {
    int n = K.dim;
    if (L.dim != n) throw std::invalid_argument("verify_cor13: dimension mismatch");
    if (variant != 'a' && variant != 'b')
        throw std::invalid_argument("verify_cor13: variant must be 'a' or 'b'");
    if (variant == 'a' && mu.kind != MeasureKind::lebesgue)
        throw std::invalid_argument("verify_cor13: variant a is a volume comparison (lebesgue only)");
    const ComputeOptions& co = vo.compute;
    const MeasureSpec leb = MeasureSpec::lebesgue();

    BodySpec K1 = john_normalize(K);
    BodySpec L1 = john_normalize(L);

    CheckReport rep;
    rep.check_id = variant == 'a' ? "cor13a" : "cor13b";
    rep.seed = co.seed;
    rep.details = "K=" + body_label(K) + " L=" + body_label(L) + " mu=" + measure_label(mu) +
                  " (both normalized to make the inscribed ball the unit one)";

    auto dirs = direction_grid(n, co.level, vo.grid_target);
    rep.grid_size = static_cast<int>(dirs.size());

    HypScan scan;
    double scale = 1.0;
    bool enforce_failed = false;
    if (variant == 'a') {
        scan = scan_dirs(
            dirs, [&](const Vec& d) { return section_measure(K1, leb, d, co); },
            [&](const Vec& d) { return projection_area(L1, d, co); });
        if (vo.enforce) {
            scale = enforce_hypothesis(values_of(scan.lhs),
                                       [&](double) { return values_of(scan.rhs); }, double(n - 1));
            // only upward scaling keeps the unit inscribed ball, and with it
            // the sqrt(n) constant, valid
            scale = std::max(1.0, scale);
            rescale_rhs(scan, scale, double(n - 1));
        }
    } else {
        MuProjector proj(L1, mu, co);
        scan = scan_dirs(
            dirs, [&](const Vec& d) { return section_measure(K1, mu, d, co); },
            [&](const Vec& d) { return proj(d); });
        if (vo.enforce) {
            if (mu.homogeneous()) {
                double e = n - 1.0 + mu.density_degree();
                scale = std::max(1.0, enforce_hypothesis(values_of(scan.lhs),
                                                         [&](double) { return values_of(scan.rhs); },
                                                         e));
                rescale_rhs(scan, scale, e);
            } else if (enforce_or_flag(rep, scale, values_of(scan.lhs), [&](double s) {
                           MuProjector p(dilate(L1, s), mu, co);
                           std::vector<double> out;
                           out.reserve(dirs.size());
                           for (const Vec& d : dirs) out.push_back(p(d).value);
                           return out;
                       })) {
                scale = std::max(1.0, scale);
                MuProjector p2(dilate(L1, scale), mu, co);
                scan.rhs.clear();
                for (const Vec& d : dirs) scan.rhs.push_back(p2(d));
                finalize_scan(scan);
            } else {
                enforce_failed = true;
            }
        }
    }
    BodySpec L2 = scale == 1.0 ? L1 : dilate(L1, scale);
    if (scale != 1.0) add_detail(rep, "L scaled up by " + fmt(scale));
    rep.hypothesis_margin = scan.margin;

    double root_n = std::sqrt(double(n));
    if (variant == 'a') {
        FunctionalValue volK = body_measure(K1, leb, co);
        FunctionalValue volL = body_measure(L2, leb, co);
        rep.lhs = volK.value;
        rep.rhs = root_n * volL.value;
        rep.slack = rep.rhs - rep.lhs;
        rep.noise_tolerance = scan.noise + kSafety * (volK.error + root_n * volL.error) +
                              tiny_floor(rep.lhs, rep.rhs);
        note(rep, "vol_K", volK);
        note(rep, "vol_L", volL);
    } else {
        FunctionalValue mK = body_measure(K1, mu, co);
        FunctionalValue mL = body_measure(L2, mu, co);
        double c = root_n / (1.0 - 1.0 / n);
        rep.lhs = mK.value;
        rep.rhs = c * mL.value;
        rep.slack = rep.rhs - rep.lhs;
        rep.noise_tolerance =
            scan.noise + kSafety * (mK.error + c * mL.error) + tiny_floor(rep.lhs, rep.rhs);
        note(rep, "mass_K", mK);
        note(rep, "mass_L", mL);
    }
    settle(rep, enforce_failed);
    return rep;
}

std::vector<CheckReport> verify_prop31(const BodySpec& K, const BodySpec& L, int k,
                                       const VerifyOptions& vo) {
    int n = K.dim;
    if (L.dim != n) throw std::invalid_argument("verify_prop31: dimension mismatch");
    if (k < 1 || k > n - 1) throw std::invalid_argument("verify_prop31: need 1 <= k <= n-1");
    const ComputeOptions& co = vo.compute;
    const MeasureSpec leb = MeasureSpec::lebesgue();

    CheckReport rep;
    rep.check_id = "prop31_k" + std::to_string(k);
    rep.seed = co.seed;
    rep.details = "K=" + body_label(K) + " L=" + body_label(L);

    auto frames = frame_grid(n, k, vo.grid_target, co.seed);
    rep.grid_size = static_cast<int>(frames.size());
    HypScan scan;
    std::vector<FunctionalValue> shadowsK;
    for (const Frame& f : frames) {
        scan.lhs.push_back(subspace_measure(K, leb, f, co));
        scan.rhs.push_back(subspace_projection_volume(L, f, co));
        shadowsK.push_back(subspace_projection_volume(K, f, co));
    }
    finalize_scan(scan);

    double scale = 1.0;
    if (vo.enforce) {
        scale = enforce_hypothesis(values_of(scan.lhs),
                                   [&](double) { return values_of(scan.rhs); }, double(k));
        rescale_rhs(scan, scale, double(k));
        add_detail(rep, "L scaled by " + fmt(scale));
    }
    rep.hypothesis_margin = scan.margin;

    BodySpec L2 = scale == 1.0 ? L : dilate(L, scale);
    FunctionalValue volK = body_measure(K, leb, co);
    FunctionalValue width = mean_width(L2, co);
    double R = radii(K).circumradius;
    double wn = unit_ball_volume(n);
    rep.lhs = volK.value;
    rep.rhs = wn * std::pow(R, n - k) * std::pow(width.value, k);
    rep.slack = rep.rhs - rep.lhs;
    double width_sens = wn * std::pow(R, n - k) * k * std::pow(width.value, k - 1.0);
    rep.noise_tolerance = scan.noise + kSafety * (volK.error + width_sens * width.error) +
                          tiny_floor(rep.lhs, rep.rhs);
    add_detail(rep, "R=" + fmt(R) + " width=" + fmt(width.value));
    note(rep, "vol_K", volK);
    note(rep, "mean_width_L", width);
    settle(rep);

    // averaged-shadow mean width bound, a standalone sub-report on K
    CheckReport alek;
    alek.check_id = "prop31_aleksandrov_k" + std::to_string(k);
    alek.seed = co.seed;
    alek.grid_size = static_cast<int>(frames.size());
    alek.details = "K=" + body_label(K);
    std::vector<double> xs;
    double quad_err = 0;
    for (const auto& s : shadowsK) {
        xs.push_back(s.value);
        quad_err += s.error;
    }
    double mean = pairwise_sum(xs) / xs.size();
    double var = 0;
    for (double x : xs) var += (x - mean) * (x - mean);
    double se = xs.size() > 1 ? std::sqrt(var / (xs.size() * (xs.size() - 1.0))) : 0.0;
    FunctionalValue widthK = mean_width(K, co);
    double wk = unit_ball_volume(k);
    alek.lhs = std::pow(mean / wk, 1.0 / k);
    alek.rhs = widthK.value;
    alek.slack = alek.rhs - alek.lhs;
    double sens = alek.lhs / (k * mean);  // d(mean^{1/k})/dmean
    alek.noise_tolerance = kSafety * (sens * (quad_err / xs.size()) + widthK.error) +
                           3.0 * sens * se + tiny_floor(alek.lhs, alek.rhs);
    add_detail(alek, "Grassmann sample mean of shadows, 3-SE included in noise");
    note(alek, "mean_width_K", widthK);
    settle(alek);

    return {rep, alek};
}

CheckReport verify_thm14(const BodySpec& K, const BodySpec& L, const MeasureSpec& mu,
                         const VerifyOptions& vo) {
    int n = K.dim;
    if (L.dim != n) throw std::invalid_argument("verify_thm14: dimension mismatch");
    if (mu.kind != MeasureKind::lebesgue && mu.kind != MeasureKind::cone_power)
        throw std::invalid_argument(
            "verify_thm14: requires a concave homogeneous density (lebesgue or cone_power); "
            "radial_power and gaussian densities do not qualify");
    if (!K.symmetric())
        throw std::invalid_argument("verify_thm14: K must be origin-symmetric");
    const ComputeOptions& co = vo.compute;
    double deg = mu.density_degree();
    double q = 1.0 / (n + deg);

    CheckReport rep;
    rep.check_id = "thm14";
    rep.seed = co.seed;
    rep.details = "K=" + body_label(K) + " L=" + body_label(L) + " mu=" + measure_label(mu) +
                  " q=" + fmt(q) + " epsilon=" + fmt(vo.epsilon);

    auto dirs = direction_grid(n, co.level, vo.grid_target);
    rep.grid_size = static_cast<int>(dirs.size());
    MuProjector proj(K, mu, co);
    HypScan scan;
    for (const Vec& d : dirs) {
        scan.lhs.push_back(proj(d));
        FunctionalValue sec = section_measure(L, mu, d, co);
        sec.value += vo.epsilon;
        scan.rhs.push_back(sec);
    }
    finalize_scan(scan);

    double scale = 1.0;
    BodySpec L2 = L;
    if (vo.enforce) {
        double e = n - 1.0 + deg;
        double best = 0;
        for (std::size_t i = 0; i < scan.lhs.size(); ++i) {
            double l = scan.lhs[i].value - vo.epsilon;
            if (l <= 0) continue;
            double r = scan.rhs[i].value - vo.epsilon;
            if (r <= 0)
                throw std::domain_error(
                    "verify_thm14: sections vanish where the projection side exceeds epsilon");
            best = std::max(best, std::pow(l / r, 1.0 / e));
        }
        if (best > 0) {
            scale = best;
            double f = std::pow(scale, e);
            for (auto& v : scan.rhs) {
                v.value = (v.value - vo.epsilon) * f + vo.epsilon;
                v.error *= f;
            }
            finalize_scan(scan);
            L2 = dilate(L, scale);
            add_detail(rep, "L scaled by " + fmt(scale));
        }
    }
    rep.hypothesis_margin = scan.margin;

    FunctionalValue mK = body_measure(K, mu, co);
    FunctionalValue mL = body_measure(L2, mu, co);
    double coeff = (1.0 - 1.0 / n) / (1.0 - q);
    double eps_coeff =
        unit_ball_volume(n) / (std::pow(mu.ball_mass(n, 1.0), q) * unit_ball_volume(n - 1));
    FunctionalValue lhs_pow = power_of(mK, 1.0 - q);
    FunctionalValue rhs_pow = power_of(mL, 1.0 - q);
    rep.lhs = lhs_pow.value;
    rep.rhs = coeff * rhs_pow.value + eps_coeff * vo.epsilon;
    rep.slack = rep.rhs - rep.lhs;
    rep.noise_tolerance = scan.noise + kSafety * (lhs_pow.error + coeff * rhs_pow.error) +
                          tiny_floor(rep.lhs, rep.rhs);
    add_detail(rep, "epsilon coefficient " + fmt(eps_coeff));
    note(rep, "mass_K", mK);
    note(rep, "mass_L", mL);
    settle(rep);
    return rep;
}

std::vector<CheckReport> verify_thm51(const BodySpec& K, const BodySpec& L,
                                      const MeasureSpec& mu, const VerifyOptions& vo) {
    int n = K.dim;
    if (L.dim != n) throw std::invalid_argument("verify_thm51: dimension mismatch");
    bool bounded = mu.kind == MeasureKind::lebesgue ||
                   (mu.kind == MeasureKind::gaussian && std::isfinite(mu.truncation));
    auto q_opt = minkowski_q(mu, n);
    if (!bounded || !q_opt)
        throw std::invalid_argument(
            "verify_thm51: requires a q-concave bounded density (lebesgue or truncated gaussian)");
    if (!K.symmetric())
        throw std::invalid_argument("verify_thm51: K must be origin-symmetric");
    const ComputeOptions& co = vo.compute;
    double q = *q_opt;
    double gnorm = mu.sup_density(BodySpec::ball(n, 1.0));
    double r = vo.r;
    double wn = unit_ball_volume(n);

    CheckReport rep;
    rep.check_id = "thm51";
    rep.seed = co.seed;
    rep.details = "K=" + body_label(K) + " L=" + body_label(L) + " mu=" + measure_label(mu) +
                  " q=" + fmt(q) + " r=" + fmt(r);

    auto dirs = direction_grid(n, co.level, vo.grid_target);
    rep.grid_size = static_cast<int>(dirs.size());
    MuProjector proj(K, mu, co);
    HypScan scan = scan_dirs(
        dirs, [&](const Vec& d) { return proj(d); },
        [&](const Vec& d) { return section_measure(L, mu, d, co); });

    double scale = 1.0;
    bool enforce_failed = false;
    BodySpec L2 = L;
    if (vo.enforce) {
        if (mu.homogeneous()) {
            scale = enforce_hypothesis(values_of(scan.lhs),
                                       [&](double) { return values_of(scan.rhs); }, double(n - 1));
            rescale_rhs(scan, scale, double(n - 1));
        } else if (enforce_or_flag(rep, scale, values_of(scan.lhs), [&](double s) {
                       BodySpec Ls = dilate(L, s);
                       std::vector<double> out;
                       out.reserve(dirs.size());
                       for (const Vec& d : dirs)
                           out.push_back(section_measure(Ls, mu, d, co).value);
                       return out;
                   })) {
            L2 = dilate(L, scale);
            scan.rhs.clear();
            for (const Vec& d : dirs) scan.rhs.push_back(section_measure(L2, mu, d, co));
            finalize_scan(scan);
        } else {
            enforce_failed = true;
        }
        if (scale != 1.0 && !enforce_failed) {
            if (mu.homogeneous()) L2 = dilate(L, scale);
            add_detail(rep, "L scaled by " + fmt(scale));
        }
    }
    rep.hypothesis_margin = scan.margin;

    FunctionalValue mK = body_measure(K, mu, co);
    FunctionalValue mL = body_measure(L2, mu, co);
    double mrB = mu.ball_mass(n, r);
    FunctionalValue mL_pow = power_of(mL, (n - 1.0) / n);
    double front = r * std::pow(wn, 1.0 / n) * std::pow(gnorm, 1.0 / n);

    FunctionalValue lhsK = power_of(mK, 1.0 - q);
    rep.lhs = lhsK.value * std::pow(mrB, q);
    rep.rhs = front * mL_pow.value + mK.value / q;
    rep.slack = rep.rhs - rep.lhs;
    rep.noise_tolerance = scan.noise +
                          kSafety * (lhsK.error * std::pow(mrB, q) + front * mL_pow.error +
                                     mK.error / q) +
                          tiny_floor(rep.lhs, rep.rhs);
    note(rep, "mass_K", mK);
    note(rep, "mass_L", mL);
    settle(rep, enforce_failed);

    std::vector<CheckReport> out;
    out.push_back(rep);

    // simplified bound behind the small-mass gate
    double gate_rhs = std::pow(q / (q + 1.0), 1.0 / q) * mrB;
    double gate_margin = gate_rhs - mK.value;
    double gate_noise = kSafety * mK.error + tiny_floor(mK.value, gate_rhs);
    if (enforce_failed) {
        add_detail(out[0], "simplified bound skipped");
    } else if (gate_margin >= -gate_noise) {
        CheckReport cor;
        cor.check_id = "cor54";
        cor.seed = co.seed;
        cor.grid_size = rep.grid_size;
        cor.details = rep.details + "; gate mass_K <= (q/(q+1))^{1/q} mass_rB holds (margin " +
                      fmt(gate_margin) + ")";
        cor.hypothesis_margin = std::min(scan.margin, gate_margin);
        cor.lhs = mK.value;
        cor.rhs = front * mL_pow.value;
        cor.slack = cor.rhs - cor.lhs;
        cor.noise_tolerance = std::max(scan.noise, gate_noise) +
                              kSafety * (mK.error + front * mL_pow.error) +
                              tiny_floor(cor.lhs, cor.rhs);
        note(cor, "mass_K", mK);
        note(cor, "mass_L", mL);
        settle(cor);
        out.push_back(cor);
    } else {
        add_detail(out[0], "gate for the simplified bound closed (margin " + fmt(gate_margin) + ")");
    }
    return out;
}

CheckReport verify_prop53(const BodySpec& body, int k, const VerifyOptions& vo) {
    int n = body.dim;
    if (k < 1 || k > n - 1) throw std::invalid_argument("verify_prop53: need 1 <= k <= n-1");
    const ComputeOptions& co = vo.compute;
    const MeasureSpec leb = MeasureSpec::lebesgue();

    CheckReport rep;
    rep.check_id = "prop53_k" + std::to_string(k);
    rep.seed = co.seed;
    rep.details = "body=" + body_label(body) + " (indicator profile)";

    auto frames = frame_grid(n, k, vo.grid_target, mix_seed(co.seed, 53));
    rep.grid_size = static_cast<int>(frames.size());
    std::vector<double> xs;
    double quad_err = 0;
    for (const Frame& f : frames) {
        FunctionalValue v = subspace_measure(body, leb, f, co);
        xs.push_back(std::pow(v.value, n));
        quad_err += n * std::pow(v.value, n - 1.0) * v.error;
    }
    double mean = pairwise_sum(xs) / xs.size();
    double var = 0;
    for (double x : xs) var += (x - mean) * (x - mean);
    double se = xs.size() > 1 ? std::sqrt(var / (xs.size() * (xs.size() - 1.0))) : 0.0;

    FunctionalValue vol = body_measure(body, leb, co);
    double coeff = std::pow(unit_ball_volume(k), n) / std::pow(unit_ball_volume(n), k);
    rep.lhs = mean;
    rep.rhs = coeff * std::pow(vol.value, k);
    rep.slack = rep.rhs - rep.lhs;
    rep.noise_tolerance = kSafety * (quad_err / xs.size() +
                                     coeff * k * std::pow(vol.value, k - 1.0) * vol.error) +
                          3.0 * se + tiny_floor(rep.lhs, rep.rhs);
    add_detail(rep, "Grassmann moment of slice masses, 3-SE included in noise");
    note(rep, "vol", vol);
    settle(rep);
    return rep;
}

CheckReport verify_thm61(const BodySpec& K, const BodySpec& L, const MeasureSpec& mu,
                         const VerifyOptions& vo) {
    int n = K.dim;
    if (L.dim != n) throw std::invalid_argument("verify_thm61: dimension mismatch");
    if (!mu.ray_decreasing())
        throw std::invalid_argument(
            "verify_thm61: requires a log-concave ray-decreasing density (lebesgue or gaussian)");
    if (!K.symmetric())
        throw std::invalid_argument("verify_thm61: K must be origin-symmetric");
    const ComputeOptions& co = vo.compute;
    double gnorm = mu.sup_density(BodySpec::ball(n, 1.0));
    double r = vo.r;
    double wn = unit_ball_volume(n);

    CheckReport rep;
    rep.check_id = "thm61";
    rep.seed = co.seed;
    rep.details = "K=" + body_label(K) + " L=" + body_label(L) + " mu=" + measure_label(mu) +
                  " r=" + fmt(r);

    auto dirs = direction_grid(n, co.level, vo.grid_target);
    rep.grid_size = static_cast<int>(dirs.size());
    MuProjector proj(K, mu, co);
    HypScan scan = scan_dirs(
        dirs, [&](const Vec& d) { return proj(d); },
        [&](const Vec& d) { return section_measure(L, mu, d, co); });

    double scale = 1.0;
    bool enforce_failed = false;
    BodySpec L2 = L;
    if (vo.enforce) {
        if (mu.homogeneous()) {
            scale = enforce_hypothesis(values_of(scan.lhs),
                                       [&](double) { return values_of(scan.rhs); }, double(n - 1));
            rescale_rhs(scan, scale, double(n - 1));
            L2 = dilate(L, scale);
        } else if (enforce_or_flag(rep, scale, values_of(scan.lhs), [&](double s) {
                       BodySpec Ls = dilate(L, s);
                       std::vector<double> out;
                       out.reserve(dirs.size());
                       for (const Vec& d : dirs)
                           out.push_back(section_measure(Ls, mu, d, co).value);
                       return out;
                   })) {
            L2 = dilate(L, scale);
            scan.rhs.clear();
            for (const Vec& d : dirs) scan.rhs.push_back(section_measure(L2, mu, d, co));
            finalize_scan(scan);
        } else {
            enforce_failed = true;
        }
        if (scale != 1.0 && !enforce_failed) add_detail(rep, "L scaled by " + fmt(scale));
    }
    rep.hypothesis_margin = scan.margin;

    FunctionalValue mK = body_measure(K, mu, co);
    FunctionalValue mL = body_measure(L2, mu, co);
    double mrB = mu.ball_mass(n, r);
    note(rep, "mass_K", mK);
    note(rep, "mass_L", mL);

    if (enforce_failed) {
        rep.lhs = mK.value;
        rep.rhs = mrB;
        rep.slack = rep.rhs - rep.lhs;
        rep.noise_tolerance = kSafety * mK.error + tiny_floor(rep.lhs, rep.rhs);
        settle(rep, true);
    } else if (mK.value >= mrB / M_E && mK.value < mrB) {
        FunctionalValue mL_pow = power_of(mL, (n - 1.0) / n);
        double front = r * std::pow(wn, 1.0 / n) * std::pow(gnorm, 1.0 / n);
        rep.lhs = mK.value * std::log(mrB / mK.value);
        rep.rhs = front * mL_pow.value;
        rep.slack = rep.rhs - rep.lhs;
        double lhs_sens = std::abs(std::log(mrB / mK.value) - 1.0);
        rep.noise_tolerance = scan.noise +
                              kSafety * (lhs_sens * mK.error + front * mL_pow.error) +
                              tiny_floor(rep.lhs, rep.rhs);
        add_detail(rep, "case=a (mass within [mass_rB/e, mass_rB))");
        settle(rep);
    } else if (mK.value <= mrB / M_E) {
        double front = std::pow(M_E * std::pow(r, n) * wn * gnorm / mrB, 1.0 / (n - 1.0));
        rep.lhs = mK.value;
        rep.rhs = front * mL.value;
        rep.slack = rep.rhs - rep.lhs;
        rep.noise_tolerance = scan.noise + kSafety * (mK.error + front * mL.error) +
                              tiny_floor(rep.lhs, rep.rhs);
        add_detail(rep, "case=b (mass below mass_rB/e)");
        settle(rep);
    } else {
        rep.lhs = mK.value;
        rep.rhs = mrB;
        rep.slack = rep.rhs - rep.lhs;
        rep.noise_tolerance = kSafety * mK.error + tiny_floor(rep.lhs, rep.rhs);
        add_detail(rep, "mass_K >= mass_rB: neither case applies for this r");
        settle(rep, true);
    }
    return rep;
}

// ---- randomized instances ----------------------------------------------------------

BodySpec random_body(Rng& rng, int dim, bool convex_only) {
    int kinds = convex_only ? 5 : 6;
    int pick = std::min(kinds - 1, static_cast<int>(rng.uniform(0.0, double(kinds))));
    switch (pick) {
        case 0: return BodySpec::ball(dim, rng.uniform(0.6, 1.6));
        case 1: {
            Vec axes(dim);
            for (double& a : axes) a = rng.uniform(0.6, 1.6);
            return BodySpec::ellipsoid(axes);
        }
        case 2: {
            Vec hw(dim);
            for (double& w : hw) w = rng.uniform(0.5, 1.4);
            return BodySpec::box(hw);
        }
        case 3: return BodySpec::cross_polytope(dim, rng.uniform(0.8, 1.8));
        case 4: {
            const double ps[3] = {1.5, 3.0, 4.0};
            return BodySpec::lp_ball(dim, ps[static_cast<int>(rng.uniform(0.0, 3.0)) % 3],
                                     rng.uniform(0.7, 1.4));
        }
        default:
            // widened pool: creased gauge endpoints (p = 1 is the cross
            // polytope, large p approaches the cube)
            return BodySpec::lp_ball(dim, rng.uniform() < 0.5 ? 1.0 : 8.0,
                                     rng.uniform(0.7, 1.2));
    }
}

MeasureSpec random_measure(Rng& rng, int dim) {
    int pick = static_cast<int>(rng.uniform(0.0, 5.0)) % 5;
    switch (pick) {
        case 0: return MeasureSpec::lebesgue();
        case 1: return MeasureSpec::radial_power(rng.uniform(0.5, 2.5));
        case 2: {
            const double alphas[3] = {0.5, 1.0, 2.0};
            return MeasureSpec::cone_power(rng.sphere_point(dim),
                                           alphas[static_cast<int>(rng.uniform(0.0, 3.0)) % 3]);
        }
        case 3: return MeasureSpec::gaussian(rng.uniform(0.8, 1.4));
        default:
            return MeasureSpec::gaussian(rng.uniform(0.8, 1.2), rng.uniform(2.4, 3.2));
    }
}

namespace {

// measure draw restricted to a named admissible class
enum class MeasureClass { homogeneous_concave, q_concave, log_concave_ray_dec, ray_dec, any_homogeneous };

MeasureSpec draw_measure(Rng& rng, int dim, MeasureClass cls) {
    switch (cls) {
        case MeasureClass::homogeneous_concave: {
            if (rng.uniform() < 0.5) return MeasureSpec::lebesgue();
            const double alphas[3] = {0.5, 1.0, 2.0};
            return MeasureSpec::cone_power(rng.sphere_point(dim),
                                           alphas[static_cast<int>(rng.uniform(0.0, 3.0)) % 3]);
        }
        case MeasureClass::q_concave: {
            double u = rng.uniform();
            if (u < 0.4) return MeasureSpec::lebesgue();
            if (u < 0.7)
                return MeasureSpec::cone_power(rng.sphere_point(dim),
                                               rng.uniform() < 0.5 ? 1.0 : 2.0);
            return MeasureSpec::gaussian(rng.uniform(0.8, 1.2), rng.uniform(2.4, 3.2));
        }
        case MeasureClass::log_concave_ray_dec:
        case MeasureClass::ray_dec: {
            double u = rng.uniform();
            if (u < 0.34) return MeasureSpec::lebesgue();
            if (u < 0.67) return MeasureSpec::gaussian(rng.uniform(0.8, 1.4));
            return MeasureSpec::gaussian(rng.uniform(0.8, 1.2), rng.uniform(2.4, 3.2));
        }
        case MeasureClass::any_homogeneous: {
            double u = rng.uniform();
            if (u < 0.34) return MeasureSpec::lebesgue();
            if (u < 0.67) return MeasureSpec::radial_power(rng.uniform(0.5, 2.5));
            return MeasureSpec::cone_power(rng.sphere_point(dim), rng.uniform() < 0.5 ? 1.0 : 2.0);
        }
    }
    return MeasureSpec::lebesgue();
}

// bodies paired with truncated densities stay well inside the support ball
BodySpec shrink_into(const BodySpec& b, const MeasureSpec& mu) {
    if (mu.kind != MeasureKind::gaussian || !std::isfinite(mu.truncation)) return b;
    double rc = radii(b).circumradius;
    double cap = 0.45 * mu.truncation;
    return rc > cap ? dilate(b, cap / rc) : b;
}

struct AddendDraw {
    Addend addend;
    FunctionalValue mass;  // measure of the addend body itself
    std::string label;
};

AddendDraw draw_addend(Rng& rng, const BodySpec& E, const MeasureSpec& mu,
                       const ComputeOptions& co, bool allow_segment) {
    double u = rng.uniform();
    if (u < 0.4) {
        double c = rng.uniform(0.5, 1.8);
        AddendDraw d{Addend::homothet(c), body_measure(dilate(E, c), mu, co),
                     "homothet(" + fmt(c) + ")"};
        return d;
    }
    if (u < 0.8 || !allow_segment) {
        double r = rng.uniform(0.4, 1.1);
        AddendDraw d{Addend::ball(r), body_measure(BodySpec::ball(E.dim, r), mu, co),
                     "ball(" + fmt(r) + ")"};
        return d;
    }
    double hl = rng.uniform(0.3, 0.9);
    FunctionalValue zero;
    zero.value = 0;
    zero.error = 0;
    zero.method = Method::analytic;
    AddendDraw d{Addend::segment(rng.sphere_point(E.dim), hl), zero, "segment(" + fmt(hl) + ")"};
    return d;
}

// ---- lemma-bank families ------------------------------------------------------------

CheckReport lemma_borell(Rng& rng, const VerifyOptions& vo) {
    const ComputeOptions& co = vo.compute;
    int n = 2 + static_cast<int>(rng.uniform(0.0, 3.0)) % 3;
    MeasureSpec mu = draw_measure(rng, n, rng.uniform() < 0.7 ? MeasureClass::q_concave
                                                              : MeasureClass::log_concave_ray_dec);
    double lambda = 0.3 + 0.2 * (static_cast<int>(rng.uniform(0.0, 3.0)) % 3);

    CheckReport rep;
    rep.check_id = "borell_2_5";
    rep.seed = co.seed;

    int pair_type = static_cast<int>(rng.uniform(0.0, 6.0)) % 6;
    BodySpec E = BodySpec::ball(n, 1.0);
    FunctionalValue mE, mF, mM;
    std::string pair_label;
    switch (pair_type) {
        case 0: {  // body and its homothet: the combination stays in the family
            E = shrink_into(random_body(rng, n, true), mu);
            double c = rng.uniform(0.5, 1.6);
            mE = body_measure(E, mu, co);
            mF = body_measure(dilate(E, c), mu, co);
            mM = body_measure(dilate(E, lambda + (1.0 - lambda) * c), mu, co);
            pair_label = "homothets(c=" + fmt(c) + ")";
            break;
        }
        case 1: {  // axis boxes combine exactly
            Vec w1(n), w2(n);
            for (int i = 0; i < n; ++i) {
                w1[i] = rng.uniform(0.4, 1.2);
                w2[i] = rng.uniform(0.4, 1.2);
            }
            BodySpec A = shrink_into(BodySpec::box(w1), mu);
            BodySpec B = shrink_into(BodySpec::box(w2), mu);
            Vec wm(n);
            for (int i = 0; i < n; ++i)
                wm[i] = lambda * A.half_widths[i] + (1.0 - lambda) * B.half_widths[i];
            E = A;
            mE = body_measure(A, mu, co);
            mF = body_measure(B, mu, co);
            mM = body_measure(BodySpec::box(wm), mu, co);
            pair_label = "boxes";
            break;
        }
        case 2: {  // cross polytopes combine exactly
            double s1 = rng.uniform(0.6, 1.4), s2 = rng.uniform(0.6, 1.4);
            BodySpec A = shrink_into(BodySpec::cross_polytope(n, s1), mu);
            BodySpec B = shrink_into(BodySpec::cross_polytope(n, s2), mu);
            E = A;
            mE = body_measure(A, mu, co);
            mF = body_measure(B, mu, co);
            mM = body_measure(
                BodySpec::cross_polytope(n, lambda * A.scale + (1.0 - lambda) * B.scale), mu, co);
            pair_label = "crosses";
            break;
        }
        case 3: {  // balls combine exactly
            double r1 = rng.uniform(0.5, 1.3), r2 = rng.uniform(0.5, 1.3);
            BodySpec A = shrink_into(BodySpec::ball(n, r1), mu);
            BodySpec B = shrink_into(BodySpec::ball(n, r2), mu);
            E = A;
            mE = body_measure(A, mu, co);
            mF = body_measure(B, mu, co);
            mM = body_measure(
                BodySpec::ball(n, lambda * A.radius + (1.0 - lambda) * B.radius), mu, co);
            pair_label = "balls";
            break;
        }
        case 4: {  // smooth-or-facet base plus a ball, membership path
            int basek = static_cast<int>(rng.uniform(0.0, 3.0)) % 3;
            if (basek == 0) {
                Vec hw(n);
                for (double& w : hw) w = rng.uniform(0.5, 1.1);
                E = BodySpec::box(hw);
            } else if (basek == 1) {
                Vec axes(n);
                for (double& a : axes) a = rng.uniform(0.6, 1.3);
                E = BodySpec::ellipsoid(axes);
            } else {
                E = BodySpec::cross_polytope(n, rng.uniform(0.8, 1.5));
            }
            E = shrink_into(E, mu);
            double r = rng.uniform(0.4, 1.0) * (std::isfinite(mu.truncation) ? 0.5 : 1.0);
            BodySpec F = BodySpec::ball(n, r);
            mE = body_measure(E, mu, co);
            mF = body_measure(F, mu, co);
            mM = sum_body_measure(dilate(E, lambda), Addend::ball((1.0 - lambda) * r), mu, co);
            pair_label = "base+ball";
            break;
        }
        default: {  // base plus a segment (the segment has measure zero)
            E = shrink_into(random_body(rng, n, true), mu);
            double hl = rng.uniform(0.3, 0.8);
            Vec d = rng.sphere_point(n);
            mE = body_measure(E, mu, co);
            mF.value = 0;
            mF.error = 0;
            mF.method = Method::analytic;
            mM = sum_body_measure(dilate(E, lambda), Addend::segment(d, (1.0 - lambda) * hl), mu,
                                  co);
            pair_label = "base+segment";
            break;
        }
    }

    rep.details = "n=" + std::to_string(n) + " mu=" + measure_label(mu) + " pair=" + pair_label +
                  " lambda=" + fmt(lambda) + " E=" + body_label(E);
    auto q_opt = minkowski_q(mu, n);
    if (q_opt) {
        double q = *q_opt;
        FunctionalValue mMq = power_of(mM, q), mEq = power_of(mE, q), mFq = power_of(mF, q);
        rep.lhs = lambda * mEq.value + (1.0 - lambda) * mFq.value;
        rep.rhs = mMq.value;
        rep.noise_tolerance = kSafety * (mMq.error + lambda * mEq.error +
                                         (1.0 - lambda) * mFq.error) +
                              tiny_floor(rep.lhs, rep.rhs);
        add_detail(rep, "power form, q=" + fmt(q));
    } else {
        rep.lhs = std::pow(mE.value, lambda) * std::pow(mF.value, 1.0 - lambda);
        rep.rhs = mM.value;
        double sens = mF.value > 0 ? rep.lhs * (lambda * mE.error / mE.value +
                                                (1.0 - lambda) * mF.error / mF.value)
                                   : 0.0;
        rep.noise_tolerance = kSafety * (mM.error + sens) + tiny_floor(rep.lhs, rep.rhs);
        add_detail(rep, "log form (density lacks a power-concavity exponent)");
    }
    rep.slack = rep.rhs - rep.lhs;
    note(rep, "mass_E", mE);
    note(rep, "mass_F", mF);
    note(rep, "mass_mix", mM);
    settle(rep);
    return rep;
}

CheckReport lemma_mixed_lower(Rng& rng, const VerifyOptions& vo) {
    const ComputeOptions& co = vo.compute;
    int n = 2 + static_cast<int>(rng.uniform(0.0, 3.0)) % 3;
    MeasureSpec mu = draw_measure(rng, n, MeasureClass::homogeneous_concave);
    BodySpec E = random_body(rng, n, true);
    double q = 1.0 / (n + mu.density_degree());

    CheckReport rep;
    rep.check_id = "mixed_lower_2_6";
    rep.seed = co.seed;

    AddendDraw F = draw_addend(rng, E, mu, co, false);
    FunctionalValue mE = body_measure(E, mu, co);
    FunctionalValue mixed = mixed_measure(E, F.addend, mu, co, MixedMethod::boundary);

    FunctionalValue mEp = power_of(mE, 1.0 - q), mFp = power_of(F.mass, q);
    rep.lhs = mEp.value * mFp.value;
    rep.rhs = q * mixed.value;
    rep.slack = rep.rhs - rep.lhs;
    rep.noise_tolerance = kSafety * (q * mixed.error + mEp.error * mFp.value +
                                     mEp.value * mFp.error) +
                          tiny_floor(rep.lhs, rep.rhs);
    rep.details = "n=" + std::to_string(n) + " mu=" + measure_label(mu) + " E=" + body_label(E) +
                  " F=" + F.label + " q=" + fmt(q);
    note(rep, "mass_E", mE);
    note(rep, "mass_F", F.mass);
    note(rep, "mixed", mixed);
    settle(rep);
    return rep;
}

CheckReport lemma_polar_identity(Rng& rng, const VerifyOptions& vo) {
    const ComputeOptions& co = vo.compute;
    int n = 2 + static_cast<int>(rng.uniform(0.0, 3.0)) % 3;
    MeasureSpec mu = draw_measure(rng, n, MeasureClass::any_homogeneous);
    BodySpec L = random_body(rng, n, false);
    double q = 1.0 / (n + mu.density_degree());

    CheckReport rep;
    rep.check_id = "polar_identity_2_7";
    rep.seed = co.seed;
    rep.details = "n=" + std::to_string(n) + " mu=" + measure_label(mu) + " L=" + body_label(L) +
                  " q=" + fmt(q);

    FunctionalValue lhs = body_measure(L, mu, co);
    // one level finer and a different panel seed so the radial discretizations
    // of smooth bodies do not coincide with the mass path
    QuadratureRule rule = mu.kind == MeasureKind::cone_power
                              ? sphere_rule_about(mu.direction, co.level + 1, 3.0)
                              : sphere_rule(n, co.level + 1, 1299709);
    FunctionalValue integ = rule_integral(rule, [&](const Vec& u) {
        FunctionalValue v;
        v.value = std::pow(radial(L, u), 1.0 / q) * mu.density(u);
        v.error = 0;
        v.method = Method::boundary_quadrature;
        return v;
    });
    rep.lhs = lhs.value;
    rep.rhs = q * integ.value;
    rep.slack = -std::abs(rep.rhs - rep.lhs);
    rep.hypothesis_margin = 0;
    rep.noise_tolerance =
        kSafety * (lhs.error + q * integ.error) + tiny_floor(rep.lhs, rep.rhs);
    add_detail(rep, "identity: slack is -|difference|");
    note(rep, "mass", lhs);
    note(rep, "polar_integral", integ);
    settle(rep);
    return rep;
}

CheckReport lemma_qconcave_mixed(Rng& rng, const VerifyOptions& vo) {
    const ComputeOptions& co = vo.compute;
    int n = 2 + static_cast<int>(rng.uniform(0.0, 3.0)) % 3;
    MeasureSpec mu = draw_measure(rng, n, MeasureClass::q_concave);
    BodySpec E = shrink_into(random_body(rng, n, true), mu);
    double q = *minkowski_q(mu, n);

    CheckReport rep;
    rep.check_id = "qconcave_5_2";
    rep.seed = co.seed;

    AddendDraw F = draw_addend(rng, E, mu, co, true);
    FunctionalValue mE = body_measure(E, mu, co);
    FunctionalValue self = mixed_measure(E, Addend::homothet(1.0), mu, co, MixedMethod::boundary);
    FunctionalValue mixed = mixed_measure(E, F.addend, mu, co, MixedMethod::boundary);

    double gap = (std::pow(F.mass.value, q) - std::pow(mE.value, q)) *
                 std::pow(mE.value, 1.0 - q) / q;
    rep.lhs = self.value + gap;
    rep.rhs = mixed.value;
    rep.slack = rep.rhs - rep.lhs;
    double mass_sens = 1.0 + std::abs((1.0 - q) * gap / mE.value);
    double massF_sens =
        F.mass.value > 0 ? std::pow(F.mass.value, q - 1.0) * std::pow(mE.value, 1.0 - q) : 0.0;
    rep.noise_tolerance = kSafety * (mixed.error + self.error + mass_sens * mE.error +
                                     massF_sens * F.mass.error) +
                          tiny_floor(rep.lhs, rep.rhs);
    rep.details = "n=" + std::to_string(n) + " mu=" + measure_label(mu) + " E=" + body_label(E) +
                  " F=" + F.label + " q=" + fmt(q);
    note(rep, "mixed_EE", self);
    note(rep, "mixed_EF", mixed);
    note(rep, "mass_E", mE);
    note(rep, "mass_F", F.mass);
    settle(rep);
    return rep;
}

CheckReport lemma_dilation(Rng& rng, const VerifyOptions& vo) {
    const ComputeOptions& co = vo.compute;
    int n = 2 + static_cast<int>(rng.uniform(0.0, 3.0)) % 3;
    MeasureSpec mu = draw_measure(rng, n, MeasureClass::ray_dec);
    BodySpec K = shrink_into(random_body(rng, n, false), mu);

    CheckReport rep;
    rep.check_id = "ray_decreasing_6_2";
    rep.seed = co.seed;
    rep.details = "n=" + std::to_string(n) + " mu=" + measure_label(mu) + " K=" + body_label(K);

    FunctionalValue mK = body_measure(K, mu, co);
    const double ts[6] = {0.15, 0.35, 0.55, 0.75, 0.95, 1.0};
    double worst = HUGE_VAL, worst_noise = 0, worst_lhs = 0, worst_rhs = 0;
    for (double t : ts) {
        FunctionalValue mt = body_measure(dilate(K, t), mu, co);
        double lhs = std::pow(t, n) * mK.value;
        double m = mt.value - lhs;
        if (m < worst) {
            worst = m;
            worst_noise = kSafety * (mt.error + std::pow(t, n) * mK.error) + tiny_floor(lhs, mt.value);
            worst_lhs = lhs;
            worst_rhs = mt.value;
        }
    }
    rep.lhs = worst_lhs;
    rep.rhs = worst_rhs;
    rep.slack = worst;
    rep.noise_tolerance = worst_noise;
    add_detail(rep, "worst dilation factor over a fixed t grid");
    note(rep, "mass_K", mK);
    settle(rep);
    return rep;
}

CheckReport lemma_endpoint(Rng& rng, const VerifyOptions& vo) {
    const ComputeOptions& co = vo.compute;
    int n = 2 + static_cast<int>(rng.uniform(0.0, 3.0)) % 3;
    MeasureSpec mu = draw_measure(rng, n, MeasureClass::ray_dec);

    CheckReport rep;
    rep.check_id = "endpoint_6_3";
    rep.seed = co.seed;
    rep.details = "n=" + std::to_string(n) + " mu=" + measure_label(mu);

    // sphere integral of the density at radius x, closed forms per kind
    auto sphere_density = [&](double x) {
        double area = sphere_area(n);
        switch (mu.kind) {
            case MeasureKind::lebesgue: return area;
            case MeasureKind::gaussian:
                if (x > mu.truncation) return 0.0;
                return area * std::exp(-0.5 * x * x / (mu.sigma * mu.sigma));
            default:
                throw std::logic_error("endpoint check: unexpected measure kind");
        }
    };
    auto ratio = [&](double x) {
        double m = mu.ball_mass(n, x);
        return x * std::pow(x, n - 1.0) * sphere_density(x) / m;
    };

    const double xs[3] = {1e-3, 1.0, 1e3};
    double upper_slack = HUGE_VAL;
    for (double x : xs) upper_slack = std::min(upper_slack, n - ratio(x));
    // small-radius lower bound and the decreasing trend across the grid
    double gsup = mu.sup_density(BodySpec::ball(n, 1.0));
    double x0 = xs[0];
    double lower_lhs = ratio(x0) / x0;
    double lower_rhs = sphere_density(1.0) / (x0 * unit_ball_volume(n) * gsup);
    double lower_slack = lower_lhs - lower_rhs;
    double trend_slack =
        std::min(ratio(xs[0]) - ratio(xs[1]), ratio(xs[1]) - ratio(xs[2]));

    rep.lhs = ratio(1.0);
    rep.rhs = n;
    rep.slack = std::min(upper_slack, std::min(lower_slack, trend_slack));
    rep.noise_tolerance = 1e-9 * (1.0 + std::abs(rep.lhs) + std::abs(lower_rhs));
    add_detail(rep, "ratios " + fmt(ratio(xs[0])) + ", " + fmt(ratio(xs[1])) + ", " +
                        fmt(ratio(xs[2])) + " at x=1e-3,1,1e3; closed forms");
    settle(rep);
    return rep;
}

CheckReport lemma_logconcave_mixed(Rng& rng, const VerifyOptions& vo) {
    const ComputeOptions& co = vo.compute;
    int n = 2 + static_cast<int>(rng.uniform(0.0, 3.0)) % 3;
    MeasureSpec mu = draw_measure(rng, n, MeasureClass::log_concave_ray_dec);
    BodySpec E = shrink_into(random_body(rng, n, true), mu);

    CheckReport rep;
    rep.check_id = "logconcave_6_4";
    rep.seed = co.seed;

    AddendDraw F = draw_addend(rng, E, mu, co, false);
    FunctionalValue mE = body_measure(E, mu, co);
    FunctionalValue self = mixed_measure(E, Addend::homothet(1.0), mu, co, MixedMethod::boundary);
    FunctionalValue mixed = mixed_measure(E, F.addend, mu, co, MixedMethod::boundary);

    rep.lhs = self.value + mE.value * std::log(F.mass.value / mE.value);
    rep.rhs = mixed.value;
    rep.slack = rep.rhs - rep.lhs;
    double sens = std::abs(std::log(F.mass.value / mE.value) - 1.0) * mE.error +
                  (mE.value / F.mass.value) * F.mass.error;
    rep.noise_tolerance =
        kSafety * (mixed.error + self.error + sens) + tiny_floor(rep.lhs, rep.rhs);
    rep.details = "n=" + std::to_string(n) + " mu=" + measure_label(mu) + " E=" + body_label(E) +
                  " F=" + F.label;
    note(rep, "mixed_EE", self);
    note(rep, "mixed_EF", mixed);
    note(rep, "mass_E", mE);
    note(rep, "mass_F", F.mass);
    settle(rep);
    return rep;
}

CheckReport lemma_subsphere_average(Rng& rng, const VerifyOptions& vo) {
    const ComputeOptions& co = vo.compute;
    int n = 3 + static_cast<int>(rng.uniform(0.0, 2.0)) % 2;
    int k = 2 + (n > 3 ? static_cast<int>(rng.uniform(0.0, 2.0)) % 2 : 0);
    BodySpec A = random_body(rng, n, true);

    CheckReport rep;
    rep.check_id = "funk_identity_3_2";
    rep.seed = co.seed;
    rep.details = "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                  " f=support of " + body_label(A);

    auto f = [&](const Vec& u) { return support(A, u); };
    auto frames = frame_grid(n, k, std::max(24, vo.grid_target / 2), mix_seed(co.seed, 32));
    std::vector<double> xs;
    double quad_err = 0;
    for (const Frame& fr : frames) {
        QuadratureRule rule = subsphere_rule(fr, co.level);
        IntegralResult r = integrate(rule, f);
        xs.push_back(r.value);
        quad_err += r.error;
    }
    double mean = pairwise_sum(xs) / xs.size();
    double var = 0;
    for (double x : xs) var += (x - mean) * (x - mean);
    double se = xs.size() > 1 ? std::sqrt(var / (xs.size() * (xs.size() - 1.0))) : 0.0;

    QuadratureRule full = sphere_rule(n, co.level, 17);
    IntegralResult whole = integrate(full, f);
    double factor = sphere_area(k) / sphere_area(n);

    rep.lhs = mean;
    rep.rhs = factor * whole.value;
    rep.slack = -std::abs(rep.rhs - rep.lhs);
    rep.noise_tolerance = kSafety * (quad_err / xs.size() + factor * whole.error) + 3.0 * se +
                          tiny_floor(rep.lhs, rep.rhs);
    rep.grid_size = static_cast<int>(frames.size());
    add_detail(rep, "identity: slack is -|difference|; 3-SE included in noise");
    settle(rep);
    return rep;
}

CheckReport lemma_surface_ratio(Rng& rng, const VerifyOptions& vo) {
    const ComputeOptions& co = vo.compute;
    int n = 2 + static_cast<int>(rng.uniform(0.0, 3.0)) % 3;
    BodySpec L = random_body(rng, n, true);

    CheckReport rep;
    rep.check_id = "isoperimetric_3_4";
    rep.seed = co.seed;
    rep.details = "n=" + std::to_string(n) + " L=" + body_label(L);

    FunctionalValue area = surface_area(L, co);
    FunctionalValue vol = body_measure(L, MeasureSpec::lebesgue(), co);
    double r = radii(L).inradius;
    rep.lhs = area.value;
    rep.rhs = (n / r) * vol.value;
    rep.slack = rep.rhs - rep.lhs;
    rep.noise_tolerance =
        kSafety * (area.error + (n / r) * vol.error) + tiny_floor(rep.lhs, rep.rhs);
    add_detail(rep, "inradius " + fmt(r));
    note(rep, "surface", area);
    note(rep, "vol", vol);
    settle(rep);
    return rep;
}

CheckReport lemma_profile_concavity(Rng& rng, const VerifyOptions& vo) {
    const ComputeOptions& co = vo.compute;
    int n = 3 + static_cast<int>(rng.uniform(0.0, 2.0)) % 2;
    BodySpec K = random_body(rng, n, true);
    Vec theta = rng.sphere_point(n);

    CheckReport rep;
    rep.check_id = "brunn_profile";
    rep.seed = co.seed;
    rep.details = "n=" + std::to_string(n) + " K=" + body_label(K);

    double h = support(K, theta);
    double step = 0.15 * h;
    std::vector<double> ts;
    for (int i = 0; i <= 5; ++i) ts.push_back(i * step);
    auto prof = parallel_section_profile(K, MeasureSpec::lebesgue(), theta, ts, co);

    double e = 1.0 / (n - 1.0);
    std::vector<double> f, ferr;
    for (const auto& a : prof) {
        FunctionalValue p = power_of(a, e);
        f.push_back(p.value);
        ferr.push_back(p.error);
    }
    // maximum of the concave even profile sits at the center slice
    double slack = HUGE_VAL, noise = 0;
    for (std::size_t i = 1; i < f.size(); ++i) {
        double m = f[0] - f[i];
        if (m < slack) {
            slack = m;
            noise = kSafety * (ferr[0] + ferr[i]);
        }
    }
    // midpoint concavity on the uniform grid
    for (std::size_t i = 1; i + 1 < f.size(); ++i) {
        double m = 2.0 * f[i] - f[i - 1] - f[i + 1];
        if (m < slack) {
            slack = m;
            noise = kSafety * (ferr[i - 1] + 2.0 * ferr[i] + ferr[i + 1]);
        }
    }
    // evenness through the opposite direction
    Vec anti = theta;
    for (double& x : anti) x = -x;
    auto mirror = parallel_section_profile(K, MeasureSpec::lebesgue(), anti, {ts[2]}, co);
    double even_gap = -std::abs(std::pow(mirror[0].value, e) - f[2]);
    double even_noise = kSafety * (ferr[2] + power_of(mirror[0], e).error);
    if (even_gap < slack) {
        slack = even_gap;
        noise = even_noise;
    }

    rep.lhs = f[0];
    rep.rhs = f[0];
    rep.slack = slack;
    rep.noise_tolerance = noise + 1e-10 * (1.0 + std::abs(f[0]));
    add_detail(rep, "min over center-max, midpoint concavity, evenness margins of the profile root");
    settle(rep);
    return rep;
}

CheckReport lemma_averaged_separation(Rng& rng, const VerifyOptions& vo) {
    const ComputeOptions& co = vo.compute;
    int n = 2 + static_cast<int>(rng.uniform(0.0, 2.0)) % 2;
    MeasureSpec mu = draw_measure(rng, n, MeasureClass::homogeneous_concave);
    BodySpec K = random_body(rng, n, true);
    double deg = mu.density_degree();
    double q = 1.0 / (n + deg);

    CheckReport rep;
    rep.check_id = "remark_4_1";
    rep.seed = co.seed;
    rep.details = "n=" + std::to_string(n) + " mu=" + measure_label(mu) + " K=" + body_label(K);

    MuProjector proj(K, mu, co);
    QuadratureRule rule = sphere_rule(n, co.level, 41);
    FunctionalValue ip = rule_integral(rule, [&](const Vec& u) { return proj(u); });
    FunctionalValue is = rule_integral(rule, [&](const Vec& u) {
        return section_measure(BodySpec::ball(n, 1.0), mu, u, co);
    });
    // scale a reference ball so the sphere-averaged hypothesis is an equality
    double c = std::pow(ip.value / is.value, 1.0 / (n - 1.0 + deg));
    BodySpec L = BodySpec::ball(n, c);

    FunctionalValue mK = body_measure(K, mu, co);
    double mL = mu.ball_mass(n, c);
    double coeff = std::pow((1.0 - 1.0 / n) / (1.0 - q), 1.0 / (1.0 - q));
    rep.lhs = mK.value;
    rep.rhs = coeff * mL;
    rep.slack = rep.rhs - rep.lhs;
    double c_rel = (ip.error / std::max(ip.value, 1e-300) +
                    is.error / std::max(is.value, 1e-300)) /
                   (n - 1.0 + deg);
    rep.noise_tolerance =
        kSafety * (mK.error + rep.rhs * (n + deg) * c_rel) + tiny_floor(rep.lhs, rep.rhs);
    rep.hypothesis_margin = 0;
    add_detail(rep, "averaged hypothesis enforced as equality, L=ball(" + fmt(c) + ")");
    note(rep, "avg_projection", ip);
    note(rep, "avg_section_unit_ball", is);
    note(rep, "mass_K", mK);
    settle(rep);
    return rep;
}

}  // namespace

std::vector<CheckReport> lemma_bank(const VerifyOptions& vo) {
    int count = std::max(1, vo.instances);
    std::vector<std::function<CheckReport()>> jobs;
    jobs.reserve(count);
    for (int i = 0; i < count; ++i) {
        jobs.push_back([i, vo]() {
            Rng rng(mix_seed(vo.compute.seed, static_cast<std::uint64_t>(i)));
            VerifyOptions v = vo;
            v.compute.seed = mix_seed(vo.compute.seed, static_cast<std::uint64_t>(i));
            switch (i % 11) {
                case 0: return lemma_borell(rng, v);
                case 1: return lemma_mixed_lower(rng, v);
                case 2: return lemma_polar_identity(rng, v);
                case 3: return lemma_qconcave_mixed(rng, v);
                case 4: return lemma_dilation(rng, v);
                case 5: return lemma_endpoint(rng, v);
                case 6: return lemma_logconcave_mixed(rng, v);
                case 7: return lemma_subsphere_average(rng, v);
                case 8: return lemma_surface_ratio(rng, v);
                case 9: return lemma_profile_concavity(rng, v);
                default: return lemma_averaged_separation(rng, v);
            }
        });
    }
    return run_jobs(jobs);
}

// ---- sharpness sweeps ----------------------------------------------------------------

SweepTable sweep_remark31(int n, const std::vector<double>& ps, const VerifyOptions& vo) {
    SweepTable t;
    t.id = "remark31";
    t.columns = {"p", "ratio_observed", "ratio_predicted"};
    const ComputeOptions& co = vo.compute;
    BodySpec K = BodySpec::ball(n, 1.0);
    auto dirs = direction_grid(n, co.level, 8);
    for (double p : ps) {
        MeasureSpec mu = MeasureSpec::radial_power(p);
        std::vector<double> lhs;
        std::vector<double> rhs;
        for (const Vec& d : dirs) {
            lhs.push_back(section_measure(K, mu, d, co).value);
            rhs.push_back(mu_projection(BodySpec::ball(n, 1.0), mu, d, co).value);
        }
        double e = n - 1.0 + p;
        double s = enforce_hypothesis(lhs, [&](double) { return rhs; }, e);
        BodySpec L = BodySpec::ball(n, s);
        double mK = body_measure(K, mu, co).value;
        double mL = body_measure(L, mu, co).value;
        double R = radii(K).circumradius;
        double r = radii(L).inradius;
        double observed = (r * mK) / (R * mL);
        double predicted = ((p + n - 1.0) / (p + n)) / (1.0 - 1.0 / n);
        t.rows.push_back({p, observed, predicted});
    }
    return t;
}

SweepTable sweep_remark61(const std::vector<int>& ns, const VerifyOptions& vo) {
    SweepTable t;
    t.id = "remark61";
    t.columns = {"n", "ratio_a", "predicted_a", "ratio_b", "predicted_b"};
    MeasureSpec leb = MeasureSpec::lebesgue();
    double r = vo.r;
    for (int n : ns) {
        double mrB = leb.ball_mass(n, r);
        double rho = r * std::exp(-1.0 / n);
        double mK = leb.ball_mass(n, rho);  // equals mrB / e
        double wn = unit_ball_volume(n);
        double lhs_a = mK * std::log(mrB / mK);
        double rhs_a = r * std::pow(wn, 1.0 / n) * std::pow(mK, (n - 1.0) / n);
        double lhs_b = mK;
        double rhs_b = std::pow(M_E * std::pow(r, n) * wn / mrB, 1.0 / (n - 1.0)) * mK;
        t.rows.push_back({double(n), lhs_a / rhs_a, std::exp(-1.0 / n), rhs_b / lhs_b,
                          std::exp(1.0 / (n - 1.0))});
    }
    return t;
}

SweepTable sweep_remark32(int n, const std::vector<int>& levels, const VerifyOptions& vo) {
    SweepTable t;
    t.id = "remark32";
    t.columns = {"level", "slack_rel", "margin"};
    double R = 2.0;
    BodySpec K = BodySpec::ball(n, R);
    int k = n - 1;
    for (int level : levels) {
        VerifyOptions v = vo;
        v.compute.level = level;
        auto reps = verify_prop31(K, K, k, v);
        double volK = reps[0].lhs;
        t.rows.push_back({double(level), reps[0].slack / volK, reps[0].hypothesis_margin});
    }
    return t;
}

SweepTable sweep_remark41(int n, const VerifyOptions& vo) {
    SweepTable t;
    t.id = "remark41";
    t.columns = {"density_degree", "gap_rel"};
    const ComputeOptions& co = vo.compute;
    std::vector<MeasureSpec> mus;
    mus.push_back(MeasureSpec::lebesgue());
    Vec w(n, 0.0);
    w[0] = 1.0;
    for (double a : {0.5, 1.0, 2.0}) mus.push_back(MeasureSpec::cone_power(w, a));
    for (const MeasureSpec& mu : mus) {
        double deg = mu.kind == MeasureKind::lebesgue ? 0.0 : mu.exponent;
        double q = 1.0 / (n + deg);
        BodySpec K = BodySpec::ball(n, 1.0);
        MuProjector proj(K, mu, co);
        QuadratureRule rule = sphere_rule(n, co.level, 41);
        FunctionalValue ip = rule_integral(rule, [&](const Vec& u) { return proj(u); });
        FunctionalValue is = rule_integral(rule, [&](const Vec& u) {
            return section_measure(K, mu, u, co);
        });
        double c = std::pow(ip.value / is.value, 1.0 / (n - 1.0 + deg));
        double coeff = std::pow((1.0 - 1.0 / n) / (1.0 - q), 1.0 / (1.0 - q));
        double lhs = mu.ball_mass(n, 1.0);
        double rhs = coeff * mu.ball_mass(n, c);
        t.rows.push_back({deg, (rhs - lhs) / lhs});
    }
    return t;
}

// ---- battery ---------------------------------------------------------------------------

std::vector<CheckReport> run_battery(const std::string& suite, const VerifyOptions& vo) {
    if (suite == "lemma_bank") return lemma_bank(vo);
    if (suite != "theorems" && suite != "all")
        throw std::invalid_argument("run_battery: unknown suite '" + suite +
                                    "' (expected lemma_bank, theorems, or all)");

    int count = std::max(11, vo.instances / 8);
    std::vector<std::function<CheckReport()>> jobs;
    jobs.reserve(count);
    for (int i = 0; i < count; ++i) {
        jobs.push_back([i, vo]() -> CheckReport {
            std::uint64_t seed = mix_seed(vo.compute.seed ^ 0x7468656f72656d73ull,
                                          static_cast<std::uint64_t>(i));
            Rng rng(seed);
            VerifyOptions v = vo;
            v.compute.seed = seed;
            v.enforce = true;
            int n = 2 + static_cast<int>(rng.uniform(0.0, 3.0)) % 3;
            switch (i % 11) {
                case 0: {
                    BodySpec K = random_body(rng, n, true), L = random_body(rng, n, true);
                    return verify_gk(K, L, n - 1, v);
                }
                case 1: {
                    int nn = std::max(3, n);
                    BodySpec K = random_body(rng, nn, true), L = random_body(rng, nn, true);
                    int k = 1 + static_cast<int>(rng.uniform(0.0, double(nn - 1))) % (nn - 1);
                    return verify_gk(K, L, k, v);
                }
                case 2: {
                    BodySpec K = random_body(rng, n, true), L = random_body(rng, n, true);
                    return verify_thm12(K, L, MeasureSpec::lebesgue(), 'a', v);
                }
                case 3: {
                    BodySpec K = random_body(rng, 3, true), L = random_body(rng, 3, true);
                    MeasureSpec mu = random_measure(rng, 3);
                    // wide gaussians keep the projection side clear of its
                    // dilation-saturation cap
                    if (mu.kind == MeasureKind::gaussian)
                        mu = MeasureSpec::gaussian(rng.uniform(1.1, 1.5));
                    return verify_thm12(K, L, mu, 'b', v);
                }
                case 4: {
                    BodySpec K = random_body(rng, n, true), L = random_body(rng, n, true);
                    return verify_cor13(K, L, MeasureSpec::lebesgue(), 'a', v);
                }
                case 5: {
                    BodySpec K = random_body(rng, 3, true), L = random_body(rng, 3, true);
                    MeasureSpec mu = random_measure(rng, 3);
                    if (mu.kind == MeasureKind::gaussian)
                        mu = MeasureSpec::gaussian(rng.uniform(1.1, 1.5));
                    return verify_cor13(K, L, mu, 'b', v);
                }
                case 6: {
                    BodySpec K = random_body(rng, n, true), L = random_body(rng, n, true);
                    int k = 1 + static_cast<int>(rng.uniform(0.0, double(n - 1))) % (n - 1);
                    return verify_prop31(K, L, k, v)[0];
                }
                case 7: {
                    int nn = std::min(n, 3);
                    BodySpec K = random_body(rng, nn, true), L = random_body(rng, nn, true);
                    MeasureSpec mu = draw_measure(rng, nn, MeasureClass::homogeneous_concave);
                    return verify_thm14(K, L, mu, v);
                }
                case 8: {
                    BodySpec K = random_body(rng, 3, true), L = random_body(rng, 3, true);
                    MeasureSpec mu = rng.uniform() < 0.5
                                         ? MeasureSpec::lebesgue()
                                         : MeasureSpec::gaussian(rng.uniform(0.8, 1.2),
                                                                 rng.uniform(2.6, 3.2));
                    K = shrink_into(K, mu);
                    L = shrink_into(L, mu);
                    return verify_thm51(K, L, mu, v)[0];
                }
                case 9: {
                    BodySpec K = random_body(rng, 3, true);
                    int k = 1 + static_cast<int>(rng.uniform(0.0, 2.0)) % 2;
                    return verify_prop53(K, k, v);
                }
                default: {
                    BodySpec K = dilate(random_body(rng, 3, true), 0.55);
                    BodySpec L = random_body(rng, 3, true);
                    MeasureSpec mu = draw_measure(rng, 3, MeasureClass::log_concave_ray_dec);
                    K = shrink_into(K, mu);
                    L = shrink_into(L, mu);
                    return verify_thm61(K, L, mu, v);
                }
            }
        });
    }
    std::vector<CheckReport> out = run_jobs(jobs);
    if (suite == "all") {
        std::vector<CheckReport> lemmas = lemma_bank(vo);
        out.insert(out.end(), lemmas.begin(), lemmas.end());
    }
    return out;
}

}  // namespace geomtomo
