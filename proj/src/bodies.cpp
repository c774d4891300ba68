#include "geomtomo/bodies.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace geomtomo {

namespace {

constexpr double kRidgeTol = 1e-12;

void check_dim(int n) {
    if (n < 2 || n > 8)
        throw std::invalid_argument("body dimension must be in [2,8]");
}

void check_unit(const BodySpec& body, const Vec& u) {
    if ((int)u.size() != body.dim)
        throw std::invalid_argument("direction dimension mismatch");
    double r2 = dot(u, u);
    if (std::fabs(r2 - 1.0) > 2e-10)
        throw std::invalid_argument("direction must be a unit vector");
}

double abs_sum(const Vec& u) {
    double s = 0;
    for (double x : u) s += std::fabs(x);
    return s;
}

// active facet of a box: argmin over i of w_i/|u_i|; ridge when the two
// smallest ratios tie to relative 1e-12
int box_active_facet(const Vec& w, const Vec& u) {
    int best = -1;
    double r1 = HUGE_VAL, r2 = HUGE_VAL;
    for (std::size_t i = 0; i < u.size(); i++) {
        if (std::fabs(u[i]) < 1e-300) continue;
        double r = w[i] / std::fabs(u[i]);
        if (r < r1) {
            r2 = r1;
            r1 = r;
            best = (int)i;
        } else if (r < r2) {
            r2 = r;
        }
    }
    if (best < 0) throw std::domain_error("box_active_facet: zero direction");
    if (r2 - r1 <= kRidgeTol * r1)
        throw RidgeHit("box ridge in direction component " + std::to_string(best));
    return best;
}

int hpoly_active_facet(const BodySpec& b, const Vec& u) {
    int best = -1;
    double r1 = HUGE_VAL, r2 = HUGE_VAL;
    for (std::size_t i = 0; i < b.normals.size(); i++) {
        double d = dot(b.normals[i], u);
        if (d <= 1e-14) continue;
        double r = b.offsets[i] / d;
        if (r < r1) {
            r2 = r1;
            r1 = r;
            best = (int)i;
        } else if (r < r2) {
            r2 = r;
        }
    }
    if (best < 0)
        throw std::domain_error("h_polytope is unbounded in the given direction");
    if (r2 - r1 <= kRidgeTol * r1) throw RidgeHit("h_polytope ridge");
    return best;
}

// full gradient of the degree -1 homogeneous extension of the radial
// function, evaluated at unit u; throws RidgeHit on polytopal ridges
Vec radial_gradient(const BodySpec& b, const Vec& u) {
    const int n = b.dim;
    Vec g(n, 0.0);
    switch (b.kind) {
        case BodyKind::ball:
            for (int i = 0; i < n; i++) g[i] = -b.radius * u[i];
            return g;
        case BodyKind::ellipsoid: {
            double q = 0;
            for (int i = 0; i < n; i++) q += u[i] * u[i] / (b.semi_axes[i] * b.semi_axes[i]);
            double rho3 = std::pow(q, -1.5);
            for (int i = 0; i < n; i++) g[i] = -rho3 * u[i] / (b.semi_axes[i] * b.semi_axes[i]);
            return g;
        }
        case BodyKind::lp_ball: {
            if (std::isinf(b.p)) {
                Vec w(n, b.scale);
                int j = box_active_facet(w, u);
                g[j] = -(b.scale / (u[j] * u[j])) * (u[j] > 0 ? 1.0 : -1.0);
                return g;
            }
            if (b.p == 1.0) {
                for (int i = 0; i < n; i++)
                    if (std::fabs(u[i]) < kRidgeTol) throw RidgeHit("l1 ball ridge");
                double t = abs_sum(u);
                for (int i = 0; i < n; i++)
                    g[i] = -b.scale / (t * t) * (u[i] > 0 ? 1.0 : -1.0);
                return g;
            }
            double m = 0;
            for (int i = 0; i < n; i++) m += std::pow(std::fabs(u[i]), b.p);
            double c = -b.scale * std::pow(m, -1.0 / b.p - 1.0);
            for (int i = 0; i < n; i++)
                g[i] = c * std::pow(std::fabs(u[i]), b.p - 1.0) *
                       (u[i] > 0 ? 1.0 : (u[i] < 0 ? -1.0 : 0.0));
            return g;
        }
        case BodyKind::box: {
            int j = box_active_facet(b.half_widths, u);
            g[j] = -(b.half_widths[j] / (u[j] * u[j])) * (u[j] > 0 ? 1.0 : -1.0);
            return g;
        }
        case BodyKind::cross_polytope: {
            for (int i = 0; i < n; i++)
                if (std::fabs(u[i]) < kRidgeTol) throw RidgeHit("cross_polytope ridge");
            double t = abs_sum(u);
            for (int i = 0; i < n; i++)
                g[i] = -b.scale / (t * t) * (u[i] > 0 ? 1.0 : -1.0);
            return g;
        }
        case BodyKind::h_polytope: {
            int j = hpoly_active_facet(b, u);
            double d = dot(b.normals[j], u);
            double c = -b.offsets[j] / (d * d);
            for (int i = 0; i < n; i++) g[i] = c * b.normals[j][i];
            return g;
        }
    }
    throw std::logic_error("radial_gradient: unhandled kind");
}

BoundaryElement element_from_gradient(const BodySpec& b, const Vec& u,
                                      double rho, const Vec& grad_full) {
    const int n = b.dim;
    // tangential part; Euler's relation for degree -1 gives <grad,u> = -rho,
    // but the projection is done explicitly to absorb rounding
    Vec gs(grad_full);
    axpy(-dot(grad_full, u), u, gs);
    Vec nu(n);
    for (int i = 0; i < n; i++) nu[i] = rho * u[i] - gs[i];
    BoundaryElement e;
    e.normal = normalized(nu);
    e.point = scaled(u, rho);
    e.jacobian = std::pow(rho, n - 2) * std::sqrt(rho * rho + dot(gs, gs));
    return e;
}

std::vector<std::vector<int>> combinations(int m, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        out.push_back(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == m - k + i) i--;
        if (i < 0) break;
        idx[i]++;
        for (int j = i + 1; j < k; j++) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

// quadrature over a (d)-simplex via the collapsed tensor map; weights are
// rescaled so they sum exactly to `total`
void simplex_quadrature(const std::vector<Vec>& verts, int order, double total,
                        std::vector<Vec>& points, std::vector<double>& weights) {
    const int d = (int)verts.size() - 1;
    const int n = (int)verts[0].size();
    std::vector<double> gx, gw;
    gauss_legendre_on(order, 0.0, 1.0, gx, gw);
    std::vector<int> c(d, 0);
    std::vector<Vec> pts;
    std::vector<double> wts;
    for (;;) {
        // stick-breaking map xi -> barycentric
        double rem = 1.0, w = 1.0;
        std::vector<double> lam(d + 1, 0.0);
        for (int i = 0; i < d; i++) {
            lam[i] = gx[c[i]] * rem;
            w *= gw[c[i]] * rem;
            rem -= lam[i];
        }
        lam[d] = rem;
        Vec x(n, 0.0);
        for (int i = 0; i <= d; i++) axpy(lam[i], verts[i], x);
        pts.push_back(std::move(x));
        wts.push_back(w);
        int i = 0;
        while (i < d && ++c[i] == order) c[i++] = 0;
        if (i == d) break;
    }
    double s = pairwise_sum(wts);
    for (double& w : wts) w *= total / s;
    points.insert(points.end(), pts.begin(), pts.end());
    weights.insert(weights.end(), wts.begin(), wts.end());
}

double factorial(int n) {
    double f = 1;
    for (int i = 2; i <= n; i++) f *= i;
    return f;
}

}  // namespace

std::string to_string(BodyKind k) {
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

bool BodySpec::symmetric() const {
    if (kind != BodyKind::h_polytope) return true;
    for (std::size_t i = 0; i < normals.size(); i++) {
        bool paired = false;
        for (std::size_t j = 0; j < normals.size() && !paired; j++) {
            Vec s = sum(normals[i], normals[j]);
            paired = norm(s) < 1e-9 && std::fabs(offsets[i] - offsets[j]) < 1e-9;
        }
        if (!paired) return false;
    }
    return true;
}

bool BodySpec::smooth() const {
    switch (kind) {
        case BodyKind::ball:
        case BodyKind::ellipsoid: return true;
        case BodyKind::lp_ball: return std::isfinite(p) && p > 1.0;
        default: return false;
    }
}

BodySpec BodySpec::ball(int n, double r) {
    check_dim(n);
    if (r <= 0) throw std::invalid_argument("ball: radius must be positive");
    BodySpec b;
    b.kind = BodyKind::ball;
    b.dim = n;
    b.radius = r;
    return b;
}

BodySpec BodySpec::ellipsoid(Vec semi_axes) {
    check_dim((int)semi_axes.size());
    for (double a : semi_axes)
        if (a <= 0) throw std::invalid_argument("ellipsoid: semi-axes must be positive");
    BodySpec b;
    b.kind = BodyKind::ellipsoid;
    b.dim = (int)semi_axes.size();
    b.semi_axes = std::move(semi_axes);
    return b;
}

BodySpec BodySpec::lp_ball(int n, double p, double scale) {
    check_dim(n);
    if (!(p >= 1.0))
        throw std::invalid_argument("lp_ball: exponent must satisfy p >= 1");
    if (scale <= 0) throw std::invalid_argument("lp_ball: scale must be positive");
    BodySpec b;
    b.kind = BodyKind::lp_ball;
    b.dim = n;
    b.p = p;
    b.scale = scale;
    return b;
}

BodySpec BodySpec::box(Vec half_widths) {
    check_dim((int)half_widths.size());
    for (double w : half_widths)
        if (w <= 0) throw std::invalid_argument("box: half-widths must be positive");
    BodySpec b;
    b.kind = BodyKind::box;
    b.dim = (int)half_widths.size();
    b.half_widths = std::move(half_widths);
    return b;
}

BodySpec BodySpec::cross_polytope(int n, double scale) {
    check_dim(n);
    if (scale <= 0) throw std::invalid_argument("cross_polytope: scale must be positive");
    BodySpec b;
    b.kind = BodyKind::cross_polytope;
    b.dim = n;
    b.scale = scale;
    return b;
}

BodySpec BodySpec::h_polytope(std::vector<Vec> normals, Vec offsets) {
    if (normals.empty() || normals.size() != offsets.size())
        throw std::invalid_argument("h_polytope: normals/offsets size mismatch");
    check_dim((int)normals[0].size());
    BodySpec b;
    b.kind = BodyKind::h_polytope;
    b.dim = (int)normals[0].size();
    for (std::size_t i = 0; i < normals.size(); i++) {
        if ((int)normals[i].size() != b.dim)
            throw std::invalid_argument("h_polytope: inconsistent normal dimensions");
        double len = norm(normals[i]);
        if (len < 1e-12) throw std::invalid_argument("h_polytope: zero normal");
        if (offsets[i] <= 0)
            throw std::invalid_argument(
                "h_polytope: offsets must be positive (origin must be interior)");
        if (std::fabs(len - 1.0) < 1e-12) {
            // keep already-unit rows bit-exact so serialization round-trips
            b.normals.push_back(normals[i]);
            b.offsets.push_back(offsets[i]);
        } else {
            b.normals.push_back(scaled(normals[i], 1.0 / len));
            b.offsets.push_back(offsets[i] / len);
        }
    }
    return b;
}

double radial(const BodySpec& b, const Vec& u) {
    check_unit(b, u);
    switch (b.kind) {
        case BodyKind::ball: return b.radius;
        case BodyKind::ellipsoid: {
            double q = 0;
            for (int i = 0; i < b.dim; i++)
                q += u[i] * u[i] / (b.semi_axes[i] * b.semi_axes[i]);
            return 1.0 / std::sqrt(q);
        }
        case BodyKind::lp_ball: {
            if (std::isinf(b.p)) {
                double m = 0;
                for (double x : u) m = std::max(m, std::fabs(x));
                return b.scale / m;
            }
            if (b.p == 1.0) return b.scale / abs_sum(u);
            double m = 0;
            for (double x : u) m += std::pow(std::fabs(x), b.p);
            return b.scale * std::pow(m, -1.0 / b.p);
        }
        case BodyKind::box: {
            double t = HUGE_VAL;
            for (int i = 0; i < b.dim; i++)
                if (std::fabs(u[i]) > 1e-300)
                    t = std::min(t, b.half_widths[i] / std::fabs(u[i]));
            return t;
        }
        case BodyKind::cross_polytope: return b.scale / abs_sum(u);
        case BodyKind::h_polytope: {
            double t = HUGE_VAL;
            for (std::size_t i = 0; i < b.normals.size(); i++) {
                double d = dot(b.normals[i], u);
                if (d > 1e-14) t = std::min(t, b.offsets[i] / d);
            }
            if (!std::isfinite(t))
                throw std::domain_error("h_polytope is unbounded in the given direction");
            return t;
        }
    }
    throw std::logic_error("radial: unhandled kind");
}

double support(const BodySpec& b, const Vec& u) {
    check_unit(b, u);
    switch (b.kind) {
        case BodyKind::ball: return b.radius;
        case BodyKind::ellipsoid: {
            double q = 0;
            for (int i = 0; i < b.dim; i++)
                q += b.semi_axes[i] * b.semi_axes[i] * u[i] * u[i];
            return std::sqrt(q);
        }
        case BodyKind::lp_ball: {
            if (std::isinf(b.p)) return b.scale * abs_sum(u);
            if (b.p == 1.0) {
                double m = 0;
                for (double x : u) m = std::max(m, std::fabs(x));
                return b.scale * m;
            }
            double pd = b.p / (b.p - 1.0);   // dual exponent
            double m = 0;
            for (double x : u) m += std::pow(std::fabs(x), pd);
            return b.scale * std::pow(m, 1.0 / pd);
        }
        case BodyKind::box: {
            double s = 0;
            for (int i = 0; i < b.dim; i++) s += b.half_widths[i] * std::fabs(u[i]);
            return s;
        }
        case BodyKind::cross_polytope: {
            double m = 0;
            for (double x : u) m = std::max(m, std::fabs(x));
            return b.scale * m;
        }
        case BodyKind::h_polytope: {
            if (b.dim > 4)
                throw std::invalid_argument(
                    "h_polytope support requires vertex enumeration (dim <= 4)");
            double s = -HUGE_VAL;
            for (const Vec& v : vertex_enumeration(b)) s = std::max(s, dot(u, v));
            return s;
        }
    }
    throw std::logic_error("support: unhandled kind");
}

double gauge(const BodySpec& b, const Vec& x) {
    if ((int)x.size() != b.dim)
        throw std::invalid_argument("gauge: dimension mismatch");
    switch (b.kind) {
        case BodyKind::ball: return norm(x) / b.radius;
        case BodyKind::ellipsoid: {
            double q = 0;
            for (int i = 0; i < b.dim; i++)
                q += x[i] * x[i] / (b.semi_axes[i] * b.semi_axes[i]);
            return std::sqrt(q);
        }
        case BodyKind::lp_ball: {
            if (std::isinf(b.p)) {
                double m = 0;
                for (double v : x) m = std::max(m, std::fabs(v));
                return m / b.scale;
            }
            if (b.p == 1.0) return abs_sum(x) / b.scale;
            double m = 0;
            for (double v : x) m += std::pow(std::fabs(v), b.p);
            return std::pow(m, 1.0 / b.p) / b.scale;
        }
        case BodyKind::box: {
            double m = 0;
            for (int i = 0; i < b.dim; i++)
                m = std::max(m, std::fabs(x[i]) / b.half_widths[i]);
            return m;
        }
        case BodyKind::cross_polytope: return abs_sum(x) / b.scale;
        case BodyKind::h_polytope: {
            double m = 0;
            for (std::size_t i = 0; i < b.normals.size(); i++)
                m = std::max(m, dot(b.normals[i], x) / b.offsets[i]);
            return m;
        }
    }
    throw std::logic_error("gauge: unhandled kind");
}

Vec support_point(const BodySpec& b, const Vec& u) {
    check_unit(b, u);
    const int n = b.dim;
    Vec x(n, 0.0);
    switch (b.kind) {
        case BodyKind::ball: return scaled(u, b.radius);
        case BodyKind::ellipsoid: {
            double h = support(b, u);
            for (int i = 0; i < n; i++)
                x[i] = b.semi_axes[i] * b.semi_axes[i] * u[i] / h;
            return x;
        }
        case BodyKind::lp_ball: {
            if (std::isinf(b.p)) {
                for (int i = 0; i < n; i++)
                    x[i] = b.scale * (u[i] > 0 ? 1.0 : (u[i] < 0 ? -1.0 : 0.0));
                return x;
            }
            if (b.p == 1.0) {
                int j = 0;
                for (int i = 1; i < n; i++)
                    if (std::fabs(u[i]) > std::fabs(u[j])) j = i;
                x[j] = b.scale * (u[j] >= 0 ? 1.0 : -1.0);
                return x;
            }
            double q = 1.0 / (b.p - 1.0);
            double m = 0;
            for (int i = 0; i < n; i++) m += std::pow(std::fabs(u[i]), b.p * q);
            double c = b.scale * std::pow(m, -1.0 / b.p);
            for (int i = 0; i < n; i++)
                x[i] = c * std::pow(std::fabs(u[i]), q) *
                       (u[i] > 0 ? 1.0 : (u[i] < 0 ? -1.0 : 0.0));
            return x;
        }
        case BodyKind::box: {
            for (int i = 0; i < n; i++)
                x[i] = b.half_widths[i] * (u[i] > 0 ? 1.0 : (u[i] < 0 ? -1.0 : 0.0));
            return x;
        }
        case BodyKind::cross_polytope: {
            int j = 0;
            for (int i = 1; i < n; i++)
                if (std::fabs(u[i]) > std::fabs(u[j])) j = i;
            x[j] = b.scale * (u[j] >= 0 ? 1.0 : -1.0);
            return x;
        }
        case BodyKind::h_polytope: {
            double best = -HUGE_VAL;
            for (const Vec& v : vertex_enumeration(b)) {
                double d = dot(u, v);
                if (d > best) {
                    best = d;
                    x = v;
                }
            }
            return x;
        }
    }
    throw std::logic_error("support_point: unhandled kind");
}

BoundaryElement boundary_element(const BodySpec& b, const Vec& u) {
    check_unit(b, u);
    double rho = radial(b, u);
    return element_from_gradient(b, u, rho, radial_gradient(b, u));
}

BoundaryElement boundary_element_fd(const BodySpec& b, const Vec& u) {
    check_unit(b, u);
    const double h = 1e-5;
    double rho = radial(b, u);
    std::vector<Vec> frame = complete_basis({u}, b.dim);
    Vec gs(b.dim, 0.0);
    for (int i = 1; i < b.dim; i++) {
        Vec up = normalized(sum(u, scaled(frame[i], h)));
        Vec um = normalized(diff(u, scaled(frame[i], h)));
        axpy((radial(b, up) - radial(b, um)) / (2 * h), frame[i], gs);
    }
    Vec grad(gs);              // rebuild the full gradient from the chart
    axpy(-rho, u, grad);
    return element_from_gradient(b, u, rho, grad);
}

Radii radii(const BodySpec& b) {
    switch (b.kind) {
        case BodyKind::ball: return {b.radius, b.radius};
        case BodyKind::ellipsoid: {
            auto [lo, hi] = std::minmax_element(b.semi_axes.begin(), b.semi_axes.end());
            return {*lo, *hi};
        }
        case BodyKind::lp_ball: {
            double f = std::pow((double)b.dim, 0.5 - 1.0 / b.p);   // p=inf -> sqrt(n)
            if (std::isinf(b.p)) f = std::sqrt((double)b.dim);
            return b.p >= 2.0 ? Radii{b.scale, b.scale * f} : Radii{b.scale * f, b.scale};
        }
        case BodyKind::box: {
            double lo = *std::min_element(b.half_widths.begin(), b.half_widths.end());
            return {lo, norm(b.half_widths)};
        }
        case BodyKind::cross_polytope:
            return {b.scale / std::sqrt((double)b.dim), b.scale};
        case BodyKind::h_polytope: {
            double r = *std::min_element(b.offsets.begin(), b.offsets.end());
            double R = 0;
            if (b.dim <= 4) {
                for (const Vec& v : vertex_enumeration(b)) R = std::max(R, norm(v));
            } else {
                // sphere scan with local hill climbing on the radial function
                Rng rng(20240901u);
                for (int trial = 0; trial < 64; trial++) {
                    Vec u = rng.sphere_point(b.dim);
                    double step = 0.5, best = radial(b, u);
                    while (step > 1e-9) {
                        bool moved = false;
                        for (int i = 0; i < b.dim && !moved; i++)
                            for (double sgn : {1.0, -1.0}) {
                                Vec t(u);
                                t[i] += sgn * step;
                                t = normalized(t);
                                double val = radial(b, t);
                                if (val > best) {
                                    best = val;
                                    u = t;
                                    moved = true;
                                    break;
                                }
                            }
                        if (!moved) step *= 0.5;
                    }
                    R = std::max(R, best);
                }
            }
            return {r, R};
        }
    }
    throw std::logic_error("radii: unhandled kind");
}

BodySpec john_normalize(const BodySpec& b) {
    if (!b.symmetric())
        throw std::invalid_argument("john_normalize requires an origin-symmetric body");
    switch (b.kind) {
        case BodyKind::ball: return BodySpec::ball(b.dim, 1.0);
        case BodyKind::ellipsoid: return BodySpec::ball(b.dim, 1.0);
        case BodyKind::box: return BodySpec::box(Vec(b.dim, 1.0));
        case BodyKind::cross_polytope:
            return BodySpec::cross_polytope(b.dim, std::sqrt((double)b.dim));
        case BodyKind::lp_ball: {
            // the John ellipsoid is the inscribed ball by signed-permutation
            // symmetry; rescale so that ball becomes the unit one
            double r = radii(b).inradius;
            return BodySpec::lp_ball(b.dim, b.p, b.scale / r);
        }
        case BodyKind::h_polytope:
            throw std::invalid_argument(
                "john_normalize: h_polytope unsupported (general John solver out of scope)");
    }
    throw std::logic_error("john_normalize: unhandled kind");
}

BodySpec dilate(const BodySpec& b, double t) {
    if (t <= 0) throw std::invalid_argument("dilate: factor must be positive");
    BodySpec out(b);
    switch (b.kind) {
        case BodyKind::ball: out.radius *= t; break;
        case BodyKind::ellipsoid:
            for (double& a : out.semi_axes) a *= t;
            break;
        case BodyKind::lp_ball:
        case BodyKind::cross_polytope: out.scale *= t; break;
        case BodyKind::box:
            for (double& w : out.half_widths) w *= t;
            break;
        case BodyKind::h_polytope:
            for (double& o : out.offsets) o *= t;
            break;
    }
    return out;
}

std::optional<double> analytic_volume(const BodySpec& b) {
    const int n = b.dim;
    switch (b.kind) {
        case BodyKind::ball: return unit_ball_volume(n) * std::pow(b.radius, n);
        case BodyKind::ellipsoid: {
            double v = unit_ball_volume(n);
            for (double a : b.semi_axes) v *= a;
            return v;
        }
        case BodyKind::box: {
            double v = 1;
            for (double w : b.half_widths) v *= 2 * w;
            return v;
        }
        case BodyKind::cross_polytope:
            return std::pow(2 * b.scale, n) / factorial(n);
        case BodyKind::lp_ball: {
            if (std::isinf(b.p)) return std::pow(2 * b.scale, n);
            double lf = n * std::lgamma(1.0 + 1.0 / b.p) - std::lgamma(1.0 + n / b.p);
            return std::pow(2 * b.scale, n) * std::exp(lf);
        }
        case BodyKind::h_polytope: {
            auto facets = facet_decomposition(b);
            if (!facets) return std::nullopt;
            double v = 0;   // pyramid decomposition from the (interior) origin
            for (const Facet& f : *facets) v += f.offset * f.area / n;
            return v;
        }
    }
    return std::nullopt;
}

std::vector<Vec> vertex_enumeration(const BodySpec& b) {
    const int n = b.dim;
    std::vector<Vec> verts;
    switch (b.kind) {
        case BodyKind::box: {
            for (int mask = 0; mask < (1 << n); mask++) {
                Vec v(n);
                for (int i = 0; i < n; i++)
                    v[i] = (mask >> i & 1) ? b.half_widths[i] : -b.half_widths[i];
                verts.push_back(std::move(v));
            }
            return verts;
        }
        case BodyKind::cross_polytope: {
            for (int i = 0; i < n; i++)
                for (double s : {b.scale, -b.scale}) {
                    Vec v(n, 0.0);
                    v[i] = s;
                    verts.push_back(std::move(v));
                }
            return verts;
        }
        case BodyKind::lp_ball:
            if (std::isinf(b.p))
                return vertex_enumeration(BodySpec::box(Vec(n, b.scale)));
            if (b.p == 1.0)
                return vertex_enumeration(BodySpec::cross_polytope(n, b.scale));
            return {};
        case BodyKind::h_polytope: {
            if (n > 4)
                throw std::invalid_argument("vertex enumeration limited to dim <= 4");
            const int m = (int)b.normals.size();
            if (m < n) throw std::domain_error("h_polytope with too few facets");
            double scale = *std::max_element(b.offsets.begin(), b.offsets.end());
            for (const auto& pick : combinations(m, n)) {
                std::vector<Vec> a;
                Vec rhs;
                for (int i : pick) {
                    a.push_back(b.normals[i]);
                    rhs.push_back(b.offsets[i]);
                }
                Vec x = solve_linear(a, rhs);
                if (x.empty()) continue;
                bool feasible = true;
                for (int i = 0; i < m && feasible; i++)
                    feasible = dot(b.normals[i], x) <= b.offsets[i] + 1e-9 * scale;
                if (!feasible) continue;
                bool dup = false;
                for (const Vec& v : verts)
                    if (norm(diff(v, x)) < 1e-8 * scale) {
                        dup = true;
                        break;
                    }
                if (!dup) verts.push_back(std::move(x));
            }
            if ((int)verts.size() < n + 1)
                throw std::domain_error("h_polytope is unbounded or degenerate");
            return verts;
        }
        default: return {};
    }
}

std::optional<std::vector<Facet>> facet_decomposition(const BodySpec& b) {
    const int n = b.dim;
    std::vector<Facet> out;
    auto cross_facets = [&](double scale) {
        double area = std::pow(scale, n - 1) * std::sqrt((double)n) / factorial(n - 1);
        for (int mask = 0; mask < (1 << n); mask++) {
            Facet f;
            f.unit_normal.assign(n, 0.0);
            f.area = area;
            f.offset = scale / std::sqrt((double)n);
            for (int i = 0; i < n; i++) {
                double s = (mask >> i & 1) ? 1.0 : -1.0;
                f.unit_normal[i] = s / std::sqrt((double)n);
                Vec v(n, 0.0);
                v[i] = s * scale;
                f.vertices.push_back(std::move(v));
            }
            out.push_back(std::move(f));
        }
    };
    auto box_facets = [&](const Vec& w) {
        for (int axis = 0; axis < n; axis++)
            for (double sgn : {1.0, -1.0}) {
                Facet f;
                f.unit_normal.assign(n, 0.0);
                f.unit_normal[axis] = sgn;
                f.offset = w[axis];
                f.area = 1;
                for (int j = 0; j < n; j++)
                    if (j != axis) f.area *= 2 * w[j];
                std::vector<int> others;
                for (int j = 0; j < n; j++)
                    if (j != axis) others.push_back(j);
                if (n == 3) {
                    // ordered corners of the facet rectangle
                    for (auto [s0, s1] : {std::pair{1.0, 1.0}, {1.0, -1.0}, {-1.0, -1.0},
                                          {-1.0, 1.0}}) {
                        Vec v(n, 0.0);
                        v[axis] = sgn * w[axis];
                        v[others[0]] = s0 * w[others[0]];
                        v[others[1]] = s1 * w[others[1]];
                        f.vertices.push_back(std::move(v));
                    }
                } else if (n == 2) {
                    for (double s0 : {1.0, -1.0}) {
                        Vec v(n, 0.0);
                        v[axis] = sgn * w[axis];
                        v[others[0]] = s0 * w[others[0]];
                        f.vertices.push_back(std::move(v));
                    }
                } else {
                    // n = 4: corners of the rectangular cell in binary order,
                    // bit m of the index flips axis others[m]
                    for (int mask = 0; mask < (1 << (n - 1)); mask++) {
                        Vec v(n, 0.0);
                        v[axis] = sgn * w[axis];
                        for (int m = 0; m < n - 1; m++)
                            v[others[m]] = ((mask >> m & 1) ? 1.0 : -1.0) * w[others[m]];
                        f.vertices.push_back(std::move(v));
                    }
                }
                out.push_back(std::move(f));
            }
    };
    switch (b.kind) {
        case BodyKind::box:
            if (n > 4) return std::nullopt;
            box_facets(b.half_widths);
            return out;
        case BodyKind::cross_polytope:
            if (n > 4) return std::nullopt;
            cross_facets(b.scale);
            return out;
        case BodyKind::lp_ball:
            if (std::isinf(b.p) && n <= 4) {
                box_facets(Vec(n, b.scale));
                return out;
            }
            if (b.p == 1.0 && n <= 4) {
                cross_facets(b.scale);
                return out;
            }
            return std::nullopt;
        case BodyKind::h_polytope: {
            if (n > 3) return std::nullopt;
            std::vector<Vec> verts = vertex_enumeration(b);
            double scale = *std::max_element(b.offsets.begin(), b.offsets.end());
            for (std::size_t i = 0; i < b.normals.size(); i++) {
                std::vector<Vec> on;
                for (const Vec& v : verts)
                    if (std::fabs(dot(b.normals[i], v) - b.offsets[i]) < 1e-8 * scale)
                        on.push_back(v);
                if ((int)on.size() < n) continue;   // redundant constraint
                Facet f;
                f.unit_normal = b.normals[i];
                f.offset = b.offsets[i];
                if (n == 2) {
                    f.vertices = on;
                    f.area = norm(diff(on[0], on[1]));
                } else {
                    // order the polygon by angle in a facet chart
                    Vec c(n, 0.0);
                    for (const Vec& v : on) axpy(1.0 / on.size(), v, c);
                    std::vector<Vec> chart = complete_basis({b.normals[i]}, n);
                    std::sort(on.begin(), on.end(), [&](const Vec& a2, const Vec& b2) {
                        Vec da = diff(a2, c), db = diff(b2, c);
                        return std::atan2(dot(da, chart[2]), dot(da, chart[1])) <
                               std::atan2(dot(db, chart[2]), dot(db, chart[1]));
                    });
                    f.vertices = on;
                    double area = 0;   // fan triangulation from the centroid
                    for (std::size_t k = 0; k < on.size(); k++) {
                        Vec e1 = diff(on[k], c);
                        Vec e2 = diff(on[(k + 1) % on.size()], c);
                        double g11 = dot(e1, e1), g22 = dot(e2, e2), g12 = dot(e1, e2);
                        area += 0.5 * std::sqrt(std::max(0.0, g11 * g22 - g12 * g12));
                    }
                    f.area = area;
                }
                out.push_back(std::move(f));
            }
            return out;
        }
        default: return std::nullopt;
    }
}

void facet_quadrature(const Facet& f, int order,
                      std::vector<Vec>& points, std::vector<double>& weights) {
    const int n = (int)f.unit_normal.size();
    points.clear();
    weights.clear();
    if ((int)f.vertices.size() == n) {
        simplex_quadrature(f.vertices, order, f.area, points, weights);
        return;
    }
    if (n == 2 && f.vertices.size() == 2) {
        std::vector<double> gx, gw;
        gauss_legendre_on(order, 0.0, 1.0, gx, gw);
        Vec d = diff(f.vertices[1], f.vertices[0]);
        for (int i = 0; i < order; i++) {
            Vec x(f.vertices[0]);
            axpy(gx[i], d, x);
            points.push_back(std::move(x));
            weights.push_back(gw[i] * f.area);
        }
        return;
    }
    if (n == 3 && f.vertices.size() == 4 && f.area > 0) {
        // box facet rectangle: tensor rule on the bilinear patch
        std::vector<double> gx, gw;
        gauss_legendre_on(order, 0.0, 1.0, gx, gw);
        const Vec& v0 = f.vertices[0];
        Vec ea = diff(f.vertices[1], v0), eb = diff(f.vertices[3], v0);
        for (int i = 0; i < order; i++)
            for (int j = 0; j < order; j++) {
                Vec x(v0);
                axpy(gx[i], ea, x);
                axpy(gx[j], eb, x);
                points.push_back(std::move(x));
                weights.push_back(gw[i] * gw[j] * f.area);
            }
        return;
    }
    if (n == 4 && f.vertices.size() == 8) {
        // rectangular cell in binary corner order: tensor rule over the
        // three edge directions out of corner 0
        std::vector<double> gx, gw;
        gauss_legendre_on(order, 0.0, 1.0, gx, gw);
        const Vec& v0 = f.vertices[0];
        Vec e0 = diff(f.vertices[1], v0), e1 = diff(f.vertices[2], v0),
            e2 = diff(f.vertices[4], v0);
        for (int i = 0; i < order; i++)
            for (int j = 0; j < order; j++)
                for (int k = 0; k < order; k++) {
                    Vec x(v0);
                    axpy(gx[i], e0, x);
                    axpy(gx[j], e1, x);
                    axpy(gx[k], e2, x);
                    points.push_back(std::move(x));
                    weights.push_back(gw[i] * gw[j] * gw[k] * f.area);
                }
        return;
    }
    if (f.vertices.size() > (std::size_t)n) {
        // general polygon (n=3): fan from the centroid into triangles
        Vec c(n, 0.0);
        for (const Vec& v : f.vertices) axpy(1.0 / f.vertices.size(), v, c);
        for (std::size_t k = 0; k < f.vertices.size(); k++) {
            const Vec& a = f.vertices[k];
            const Vec& b2 = f.vertices[(k + 1) % f.vertices.size()];
            Vec e1 = diff(a, c), e2 = diff(b2, c);
            double g11 = dot(e1, e1), g22 = dot(e2, e2), g12 = dot(e1, e2);
            double tri = 0.5 * std::sqrt(std::max(0.0, g11 * g22 - g12 * g12));
            if (tri < 1e-14 * f.area) continue;
            simplex_quadrature({c, a, b2}, order, tri, points, weights);
        }
        return;
    }
    throw std::logic_error("facet_quadrature: unsupported facet shape");
}

std::vector<double> corner_angles(const BodySpec& b) {
    if (b.dim != 2) return {};
    std::vector<Vec> verts = vertex_enumeration(b);
    std::vector<double> out;
    for (const Vec& v : verts) {
        double a = std::atan2(v[1], v[0]);
        if (a < 0) a += 2 * M_PI;
        out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](double a, double b2) { return std::fabs(a - b2) < 1e-12; }),
              out.end());
    return out;
}

double distance_to_body(const BodySpec& b, const Vec& x) {
    if ((int)x.size() != b.dim)
        throw std::invalid_argument("distance_to_body: dimension mismatch");
    switch (b.kind) {
        case BodyKind::ball: return std::max(0.0, norm(x) - b.radius);
        case BodyKind::box: {
            double s = 0;
            for (int i = 0; i < b.dim; i++) {
                double d = std::fabs(x[i]) - b.half_widths[i];
                if (d > 0) s += d * d;
            }
            return std::sqrt(s);
        }
        case BodyKind::ellipsoid: {
            if (gauge(b, x) <= 1.0) return 0.0;
            // nearest point y_i = a_i^2 x_i / (a_i^2 + lam), lam > 0 outside
            auto phi = [&](double lam) {
                double s = 0;
                for (int i = 0; i < b.dim; i++) {
                    double t = b.semi_axes[i] * x[i] /
                               (b.semi_axes[i] * b.semi_axes[i] + lam);
                    s += t * t;
                }
                return 1.0 - s;   // increasing in lam, negative at 0
            };
            double hi = 1.0;
            while (phi(hi) < 0) hi *= 2;
            double lam = bisect_root(phi, 0.0, hi, 1e-14 * (1 + hi));
            Vec y(b.dim);
            for (int i = 0; i < b.dim; i++)
                y[i] = b.semi_axes[i] * b.semi_axes[i] * x[i] /
                       (b.semi_axes[i] * b.semi_axes[i] + lam);
            return norm(diff(x, y));
        }
        case BodyKind::cross_polytope: {
            if (abs_sum(x) <= b.scale) return 0.0;
            // projection onto the l1 ball by soft thresholding
            Vec a(b.dim);
            for (int i = 0; i < b.dim; i++) a[i] = std::fabs(x[i]);
            Vec srt(a);
            std::sort(srt.begin(), srt.end(), std::greater<double>());
            double cum = 0, tau = 0;
            for (int k = 0; k < b.dim; k++) {
                cum += srt[k];
                double t = (cum - b.scale) / (k + 1);
                if (k + 1 == b.dim || srt[k + 1] <= t) {
                    tau = t;
                    break;
                }
            }
            double s = 0;
            for (int i = 0; i < b.dim; i++) {
                double d = std::min(a[i], tau);
                s += d * d;
            }
            return std::sqrt(s);
        }
        default:
            throw std::invalid_argument(
                "distance_to_body: exact nearest-point map unavailable for " +
                to_string(b.kind) +
                " (supported: ball, box, ellipsoid, cross_polytope)");
    }
}

std::optional<BodySpec> restrict_to_subspace(const BodySpec& b, const Frame& frame) {
    if (frame.dim != b.dim)
        throw std::invalid_argument("restrict_to_subspace: frame dimension mismatch");
    const int k = frame.k;
    if (k < 2) throw std::invalid_argument("restrict_to_subspace: chart dim must be >= 2");
    if (b.kind == BodyKind::ball) return BodySpec::ball(k, b.radius);
    if (k > 3) return std::nullopt;

    // collect ambient halfspace constraints <a, x> <= c
    std::vector<Vec> amb;
    Vec off;
    switch (b.kind) {
        case BodyKind::box:
            for (int i = 0; i < b.dim; i++)
                for (double s : {1.0, -1.0}) {
                    Vec a(b.dim, 0.0);
                    a[i] = s;
                    amb.push_back(std::move(a));
                    off.push_back(b.half_widths[i]);
                }
            break;
        case BodyKind::lp_ball:
            if (std::isinf(b.p))
                return restrict_to_subspace(BodySpec::box(Vec(b.dim, b.scale)), frame);
            if (b.p == 1.0)
                return restrict_to_subspace(BodySpec::cross_polytope(b.dim, b.scale),
                                            frame);
            return std::nullopt;
        case BodyKind::cross_polytope:
            for (int mask = 0; mask < (1 << b.dim); mask++) {
                Vec a(b.dim);
                for (int i = 0; i < b.dim; i++) a[i] = (mask >> i & 1) ? 1.0 : -1.0;
                amb.push_back(std::move(a));
                off.push_back(b.scale);
            }
            break;
        case BodyKind::h_polytope:
            amb = b.normals;
            off = b.offsets;
            break;
        default: return std::nullopt;
    }

    // chart rows r_j = <a, basis_j>; dedupe parallel rows keeping the tighter
    std::vector<Vec> rows;
    Vec offs;
    for (std::size_t i = 0; i < amb.size(); i++) {
        Vec r(k);
        for (int j = 0; j < k; j++) r[j] = dot(amb[i], frame.basis[j]);
        double len = norm(r);
        if (len < 1e-12) continue;   // facet parallel to the subspace
        Vec rn = scaled(r, 1.0 / len);
        double on = off[i] / len;
        bool merged = false;
        for (std::size_t j = 0; j < rows.size() && !merged; j++)
            if (norm(diff(rows[j], rn)) < 1e-10) {
                offs[j] = std::min(offs[j], on);
                merged = true;
            }
        if (!merged) {
            rows.push_back(std::move(rn));
            offs.push_back(on);
        }
    }
    return BodySpec::h_polytope(rows, offs);
}

// ---- Frame -----------------------------------------------------------------

Frame Frame::hyperplane(const Vec& theta) {
    double r2 = dot(theta, theta);
    if (std::fabs(r2 - 1.0) > 2e-10)
        throw std::invalid_argument("Frame::hyperplane: normal must be unit");
    Frame f;
    f.dim = (int)theta.size();
    f.k = f.dim - 1;
    std::vector<Vec> full = complete_basis({theta}, f.dim);
    f.basis.assign(full.begin() + 1, full.end());
    f.normal = theta;
    return f;
}

Frame Frame::subspace(int dim, const std::vector<Vec>& span) {
    Frame f;
    f.dim = dim;
    f.basis = orthonormalize(span);
    f.k = (int)f.basis.size();
    if (f.k >= dim)
        throw std::invalid_argument("Frame::subspace: k must be < dim");
    if (f.k == dim - 1) {
        std::vector<Vec> full = complete_basis(f.basis, dim);
        f.normal = full.back();
    }
    return f;
}

Vec Frame::lift(std::span<const double> coords) const {
    if ((int)coords.size() != k)
        throw std::invalid_argument("Frame::lift: coordinate dimension mismatch");
    Vec x(dim, 0.0);
    for (int i = 0; i < k; i++) axpy(coords[i], basis[i], x);
    return x;
}

// ---- JSON ------------------------------------------------------------------

std::string BodySpec::to_json() const {
    nlohmann::json j;
    j["kind"] = geomtomo::to_string(kind);
    j["dim"] = dim;
    nlohmann::json params;
    switch (kind) {
        case BodyKind::ball: params["radius"] = radius; break;
        case BodyKind::ellipsoid: params["semi_axes"] = semi_axes; break;
        case BodyKind::lp_ball:
            params["p"] = std::isinf(p) ? nlohmann::json("inf") : nlohmann::json(p);
            params["scale"] = scale;
            break;
        case BodyKind::box: params["half_widths"] = half_widths; break;
        case BodyKind::cross_polytope: params["scale"] = scale; break;
        case BodyKind::h_polytope:
            params["normals"] = normals;
            params["offsets"] = offsets;
            break;
    }
    j["params"] = params;
    return j.dump();
}

BodySpec BodySpec::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::string kind = j.at("kind").get<std::string>();
    int dim = j.at("dim").get<int>();
    const nlohmann::json& p = j.at("params");
    if (kind == "ball") return ball(dim, p.at("radius").get<double>());
    if (kind == "ellipsoid") {
        BodySpec b = ellipsoid(p.at("semi_axes").get<Vec>());
        if (b.dim != dim) throw std::invalid_argument("ellipsoid: dim/params mismatch");
        return b;
    }
    if (kind == "lp_ball") {
        double exp = p.at("p").is_string() ? HUGE_VAL : p.at("p").get<double>();
        return lp_ball(dim, exp, p.at("scale").get<double>());
    }
    if (kind == "box") {
        BodySpec b = box(p.at("half_widths").get<Vec>());
        if (b.dim != dim) throw std::invalid_argument("box: dim/params mismatch");
        return b;
    }
    if (kind == "cross_polytope")
        return cross_polytope(dim, p.at("scale").get<double>());
    if (kind == "h_polytope") {
        BodySpec b = h_polytope(p.at("normals").get<std::vector<Vec>>(),
                                p.at("offsets").get<Vec>());
        if (b.dim != dim) throw std::invalid_argument("h_polytope: dim/params mismatch");
        return b;
    }
    throw std::invalid_argument("unknown body kind '" + kind + "'");
}

}  // namespace geomtomo
