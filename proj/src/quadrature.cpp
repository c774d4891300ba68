#include "geomtomo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geomtomo {

namespace {

constexpr int kCircleOrder = 10;   // Gauss order per circle panel

void check_level(int level) {
    if (level < 1 || level > 6)
        throw std::invalid_argument("quadrature level must be in [1,6]");
}

// panel boundaries on [0, 2pi): coordinate axes plus caller splits, each
// segment subdivided so the whole circle has at least `min_panels` panels
std::vector<double> circle_panels(int min_panels, const std::vector<double>& splits) {
    std::vector<double> cuts = {0.0, M_PI_2, M_PI, 3 * M_PI_2};
    for (double s : splits) {
        double a = std::fmod(s, 2 * M_PI);
        if (a < 0) a += 2 * M_PI;
        cuts.push_back(a);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return std::fabs(a - b) < 1e-12; }),
               cuts.end());
    std::vector<double> bounds;
    for (std::size_t i = 0; i < cuts.size(); i++) {
        double a = cuts[i];
        double b = i + 1 < cuts.size() ? cuts[i + 1] : cuts[0] + 2 * M_PI;
        int sub = std::max(1, (int)std::ceil(min_panels * (b - a) / (2 * M_PI)));
        for (int s = 0; s < sub; s++) bounds.push_back(a + (b - a) * s / sub);
    }
    bounds.push_back(2 * M_PI);
    return bounds;
}

void circle_rule(int min_panels, const std::vector<double>& splits,
                 std::vector<Vec>& nodes, std::vector<double>& weights) {
    std::vector<double> bounds = circle_panels(min_panels, splits);
    std::vector<double> gx, gw;
    for (std::size_t i = 0; i + 1 < bounds.size(); i++) {
        gauss_legendre_on(kCircleOrder, bounds[i], bounds[i + 1], gx, gw);
        for (int j = 0; j < kCircleOrder; j++) {
            nodes.push_back({std::cos(gx[j]), std::sin(gx[j])});
            weights.push_back(gw[j]);
        }
    }
}

// composite Gauss on [-1,1] split at 0 (z = <u, axis> of catalog bodies can
// lose smoothness exactly there)
void split_interval_rule(int per_panel, std::vector<double>& nodes,
                         std::vector<double>& weights) {
    std::vector<double> gx, gw;
    for (auto [a, b] : {std::pair{-1.0, 0.0}, std::pair{0.0, 1.0}}) {
        gauss_legendre_on(per_panel, a, b, gx, gw);
        nodes.insert(nodes.end(), gx.begin(), gx.end());
        weights.insert(weights.end(), gw.begin(), gw.end());
    }
}

void s2_rule(int level, std::vector<Vec>& nodes, std::vector<double>& weights) {
    // z in two Gauss panels, azimuth in eight panels aligned to k*pi/4
    int nz = 4 << (level - 1);                  // per z panel
    int np = std::max(1, 1 << level);           // per azimuth panel
    std::vector<double> zs, zw;
    split_interval_rule(nz, zs, zw);
    std::vector<double> bounds;
    for (int i = 0; i <= 8; i++) bounds.push_back(i * M_PI_2 / 2);
    std::vector<double> px, pw, gx, gw;
    for (int i = 0; i < 8; i++) {
        gauss_legendre_on(np, bounds[i], bounds[i + 1], gx, gw);
        px.insert(px.end(), gx.begin(), gx.end());
        pw.insert(pw.end(), gw.begin(), gw.end());
    }
    for (std::size_t iz = 0; iz < zs.size(); iz++) {
        double s = std::sqrt(std::max(0.0, 1 - zs[iz] * zs[iz]));
        for (std::size_t ip = 0; ip < px.size(); ip++) {
            nodes.push_back({s * std::cos(px[ip]), s * std::sin(px[ip]), zs[iz]});
            weights.push_back(zw[iz] * pw[ip]);
        }
    }
}

void s3_rule(int level, std::vector<Vec>& nodes, std::vector<double>& weights) {
    // u = (sin(chi) v, cos(chi)), v in S^2; area element sin^2(chi) dchi dv
    int nc = 4 << (level - 1);   // per chi panel, two panels split at pi/2
    std::vector<double> cx, cw, gx, gw;
    for (auto [a, b] : {std::pair{0.0, M_PI_2}, std::pair{M_PI_2, M_PI}}) {
        gauss_legendre_on(nc, a, b, gx, gw);
        cx.insert(cx.end(), gx.begin(), gx.end());
        cw.insert(cw.end(), gw.begin(), gw.end());
    }
    std::vector<Vec> vn;
    std::vector<double> vw;
    s2_rule(std::max(1, level - 1), vn, vw);
    for (std::size_t ic = 0; ic < cx.size(); ic++) {
        double s = std::sin(cx[ic]), c = std::cos(cx[ic]);
        double w = cw[ic] * s * s;
        for (std::size_t iv = 0; iv < vn.size(); iv++) {
            nodes.push_back({s * vn[iv][0], s * vn[iv][1], s * vn[iv][2], c});
            weights.push_back(w * vw[iv]);
        }
    }
}

// Gauss nodes on [0,1] mapped through x = xi^grade, concentrating toward 0;
// grade 1 is plain Gauss
void graded_unit_rule(int m, double grade, std::vector<double>& nodes,
                      std::vector<double>& weights) {
    std::vector<double> gx, gw;
    gauss_legendre_on(m, 0.0, 1.0, gx, gw);
    nodes.resize(m);
    weights.resize(m);
    for (int i = 0; i < m; i++) {
        nodes[i] = std::pow(gx[i], grade);
        weights[i] = gw[i] * grade * std::pow(gx[i], grade - 1.0);
    }
}

void s2_rule_graded(int level, double grade, std::vector<Vec>& nodes,
                    std::vector<double>& weights) {
    int nz = 4 << (level - 1);
    int np = std::max(1, 1 << level);
    std::vector<double> zs, zw, g0, w0;
    graded_unit_rule(nz, grade, g0, w0);
    for (int i = 0; i < nz; i++) {
        zs.push_back(g0[i]);
        zw.push_back(w0[i]);
        zs.push_back(-g0[i]);
        zw.push_back(w0[i]);
    }
    std::vector<double> px, pw, gx, gw;
    for (int i = 0; i < 8; i++) {
        gauss_legendre_on(np, i * M_PI_2 / 2, (i + 1) * M_PI_2 / 2, gx, gw);
        px.insert(px.end(), gx.begin(), gx.end());
        pw.insert(pw.end(), gw.begin(), gw.end());
    }
    for (std::size_t iz = 0; iz < zs.size(); iz++) {
        double s = std::sqrt(std::max(0.0, 1 - zs[iz] * zs[iz]));
        for (std::size_t ip = 0; ip < px.size(); ip++) {
            nodes.push_back({s * std::cos(px[ip]), s * std::sin(px[ip]), zs[iz]});
            weights.push_back(zw[iz] * pw[ip]);
        }
    }
}

void circle_rule_graded(double pole_angle, int level, double grade,
                        std::vector<Vec>& nodes, std::vector<double>& weights) {
    // equator angles are pole_angle +- pi/2; grade each quarter toward them
    int m = 10 << (level - 1);
    std::vector<double> g0, w0;
    graded_unit_rule(m, grade, g0, w0);
    for (double kink : {pole_angle + M_PI_2, pole_angle + 3 * M_PI_2})
        for (double sgn : {1.0, -1.0})
            for (int i = 0; i < m; i++) {
                double phi = kink + sgn * M_PI_2 * g0[i];
                nodes.push_back({std::cos(phi), std::sin(phi)});
                weights.push_back(M_PI_2 * w0[i]);
            }
}

void s3_rule_graded(int level, double grade, std::vector<Vec>& nodes,
                    std::vector<double>& weights) {
    int nc = 4 << (level - 1);
    std::vector<double> cx, cw, g0, w0;
    graded_unit_rule(nc, grade, g0, w0);
    for (int i = 0; i < nc; i++)
        for (double sgn : {1.0, -1.0}) {
            cx.push_back(M_PI_2 + sgn * M_PI_2 * g0[i]);
            cw.push_back(M_PI_2 * w0[i]);
        }
    std::vector<Vec> vn;
    std::vector<double> vw;
    s2_rule(std::max(1, level - 1), vn, vw);
    for (std::size_t ic = 0; ic < cx.size(); ic++) {
        double s = std::sin(cx[ic]), c = std::cos(cx[ic]);
        double w = cw[ic] * s * s;
        for (std::size_t iv = 0; iv < vn.size(); iv++) {
            nodes.push_back({s * vn[iv][0], s * vn[iv][1], s * vn[iv][2], c});
            weights.push_back(w * vw[iv]);
        }
    }
}

void shell_rule(int n, int level, std::uint64_t seed, QuadratureRule& rule) {
    int shells = 1 << (8 + level);
    Rng rng(seed ^ 0x5bd1e995u);
    rule.stochastic = true;
    rule.batches = 16;
    double w = sphere_area(n) / (2.0 * n * shells);
    rule.nodes.reserve(2 * n * shells);
    for (int s = 0; s < shells; s++) {
        std::vector<Vec> frame = grassmann_frame(rng, n, n);
        for (int i = 0; i < n; i++) {
            rule.nodes.push_back(frame[i]);
            rule.weights.push_back(w);
            rule.nodes.push_back(scaled(frame[i], -1.0));
            rule.weights.push_back(w);
        }
    }
}

void normalize_total(std::vector<double>& w, double total) {
    double s = pairwise_sum(w);
    for (double& x : w) x *= total / s;
}

}  // namespace

QuadratureRule sphere_rule(int n, int level, std::uint64_t seed,
                           const std::vector<double>& splits) {
    check_level(level);
    if (n < 2) throw std::invalid_argument("sphere_rule: dimension must be >= 2");
    QuadratureRule rule;
    rule.dim = n;
    rule.seed = seed;
    if (n == 2) {
        circle_rule(8 << (level - 1), splits, rule.nodes, rule.weights);
        circle_rule(std::max(4, 4 << (level - 1)), splits, rule.coarse_nodes,
                    rule.coarse_weights);
    } else if (n == 3) {
        s2_rule(level, rule.nodes, rule.weights);
        s2_rule(std::max(1, level - 1), rule.coarse_nodes, rule.coarse_weights);
    } else if (n == 4) {
        s3_rule(level, rule.nodes, rule.weights);
        s3_rule(std::max(1, level - 1), rule.coarse_nodes, rule.coarse_weights);
    } else {
        shell_rule(n, level, seed, rule);
    }
    normalize_total(rule.weights, sphere_area(n));
    if (!rule.coarse_weights.empty())
        normalize_total(rule.coarse_weights, sphere_area(n));
    return rule;
}

QuadratureRule sphere_rule_about(const Vec& pole, int level, double grade) {
    check_level(level);
    const int n = (int)pole.size();
    if (std::fabs(dot(pole, pole) - 1.0) > 2e-10)
        throw std::invalid_argument("sphere_rule_about: pole must be unit");
    if (grade < 1.0) throw std::invalid_argument("sphere_rule_about: grade must be >= 1");
    if (n == 2) {
        double a = std::atan2(pole[1], pole[0]);
        if (grade == 1.0)
            return sphere_rule(2, level, 0, {a, a + M_PI_2, a + M_PI, a + 3 * M_PI_2});
        QuadratureRule rule;
        rule.dim = 2;
        circle_rule_graded(a, level, grade, rule.nodes, rule.weights);
        circle_rule_graded(a, std::max(1, level - 1), grade, rule.coarse_nodes,
                           rule.coarse_weights);
        normalize_total(rule.weights, sphere_area(2));
        normalize_total(rule.coarse_weights, sphere_area(2));
        return rule;
    }
    if (n > 4)
        throw std::invalid_argument("sphere_rule_about: deterministic dims only (n <= 4)");
    QuadratureRule flat;
    if (grade == 1.0) {
        flat = sphere_rule(n, level);
    } else {
        flat.dim = n;
        if (n == 3) {
            s2_rule_graded(level, grade, flat.nodes, flat.weights);
            s2_rule_graded(std::max(1, level - 1), grade, flat.coarse_nodes,
                           flat.coarse_weights);
        } else {
            s3_rule_graded(level, grade, flat.nodes, flat.weights);
            s3_rule_graded(std::max(1, level - 1), grade, flat.coarse_nodes,
                           flat.coarse_weights);
        }
        normalize_total(flat.weights, sphere_area(n));
        normalize_total(flat.coarse_weights, sphere_area(n));
    }
    // send the chart's last axis to the pole; equatorial panel boundaries of
    // the chart rule land on the great sphere orthogonal to the pole
    std::vector<Vec> fr = complete_basis({pole}, n);
    auto remap = [&](std::vector<Vec>& nodes) {
        for (Vec& x : nodes) {
            Vec y(n, 0.0);
            for (int j = 0; j + 1 < n; j++) axpy(x[j], fr[j + 1], y);
            axpy(x[n - 1], pole, y);
            x = std::move(y);
        }
    };
    remap(flat.nodes);
    remap(flat.coarse_nodes);
    return flat;
}

QuadratureRule subsphere_rule(const Frame& frame, int level, std::uint64_t seed,
                              const std::vector<double>& splits,
                              const Vec& chart_pole, double grade) {
    QuadratureRule rule;
    rule.dim = frame.dim;
    rule.seed = seed;
    if (frame.k == 1) {
        rule.nodes = {frame.basis[0], scaled(frame.basis[0], -1.0)};
        rule.weights = {1.0, 1.0};
        rule.coarse_nodes = rule.nodes;
        rule.coarse_weights = rule.weights;
        return rule;
    }
    QuadratureRule flat = chart_pole.empty()
                              ? sphere_rule(frame.k, level, seed, splits)
                              : sphere_rule_about(chart_pole, level, grade);
    for (const Vec& x : flat.nodes) rule.nodes.push_back(frame.lift(x));
    rule.weights = std::move(flat.weights);
    for (const Vec& x : flat.coarse_nodes) rule.coarse_nodes.push_back(frame.lift(x));
    rule.coarse_weights = std::move(flat.coarse_weights);
    rule.stochastic = flat.stochastic;
    rule.batches = flat.batches;
    return rule;
}

void radial_rule(int level, std::vector<double>& nodes, std::vector<double>& weights) {
    check_level(level);
    gauss_legendre_on(8 << (level - 1), 0.0, 1.0, nodes, weights);
    // square map t = x^2: keeps monomial exactness through degree ~m/2 and
    // absorbs half-integer powers arising from radial profiles at the origin
    for (std::size_t i = 0; i < nodes.size(); i++) {
        weights[i] *= 2.0 * nodes[i];
        nodes[i] *= nodes[i];
    }
}

std::vector<Vec> grassmann_frame(Rng& rng, int n, int k) {
    if (k < 1 || k > n) throw std::invalid_argument("grassmann_frame: need 1 <= k <= n");
    for (int attempt = 0; attempt < 64; attempt++) {
        std::vector<Vec> cols;
        for (int i = 0; i < k; i++) cols.push_back(rng.gaussian_vector(n));
        try {
            return orthonormalize(cols);
        } catch (const std::invalid_argument&) {
            continue;   // numerically degenerate draw, retry
        }
    }
    throw std::runtime_error("grassmann_frame: repeated rank loss");
}

IntegralResult integrate(const QuadratureRule& rule,
                         const std::function<double(const Vec&)>& f) {
    std::vector<double> terms(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); i++)
        terms[i] = rule.weights[i] * f(rule.nodes[i]);
    IntegralResult out;
    out.value = pairwise_sum(terms);
    if (rule.stochastic) {
        int b = rule.batches;
        std::size_t per = terms.size() / b;
        std::vector<double> means(b);
        for (int i = 0; i < b; i++) {
            std::span<const double> chunk(terms.data() + i * per, per);
            means[i] = pairwise_sum(chunk) * b;   // each batch scaled to full total
        }
        double m = pairwise_sum(means) / b, var = 0;
        for (double x : means) var += (x - m) * (x - m);
        var /= b * (b - 1.0);
        out.value = m;
        out.error = 3 * std::sqrt(var);
    } else {
        std::vector<double> ct(rule.coarse_nodes.size());
        for (std::size_t i = 0; i < rule.coarse_nodes.size(); i++)
            ct[i] = rule.coarse_weights[i] * f(rule.coarse_nodes[i]);
        double coarse = pairwise_sum(ct);
        out.error = std::fabs(out.value - coarse) + 1e-14 * std::fabs(out.value);
    }
    return out;
}

}  // namespace geomtomo
