#include "geomtomo/functionals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace geomtomo {

namespace {

// integral over t in [0,1] of g(t x) t^(n-1) dt; shared by pyramid volume
// decompositions and dilation-averaged boundary functionals
double ray_mass_factor(const MeasureSpec& mu, const Vec& x) {
    const int n = (int)x.size();
    double r = norm(x);
    return mu.segment_moment(scaled(x, 1.0 / r), r, n - 1) / std::pow(r, n);
}

BoundaryElement element_with_retry(const BodySpec& body, const Vec& u) {
    double step = 1e-9;
    Vec v(u);
    for (int attempt = 0; attempt < 6; attempt++) {
        try {
            return boundary_element(body, v);
        } catch (const RidgeHit&) {
            // deterministic tangent nudge off the ridge
            std::vector<Vec> fr = complete_basis({u}, body.dim);
            v = normalized(sum(u, scaled(fr[1], step)));
            step *= 64;
        }
    }
    throw std::runtime_error("boundary element: persistent ridge contact");
}

// pole aligning the rule's equator with the shadow silhouette of `theta`:
// exact for balls and ellipsoids, support-point heuristic for other smooth
// kinds, empty for polytopal kinds (they use facet paths)
Vec silhouette_pole(const BodySpec& body, const Vec& theta) {
    switch (body.kind) {
        case BodyKind::ball: return theta;
        case BodyKind::ellipsoid: {
            Vec p(theta);
            for (int i = 0; i < body.dim; i++)
                p[i] /= body.semi_axes[i] * body.semi_axes[i];
            return normalized(p);
        }
        case BodyKind::lp_ball:
            if (std::isfinite(body.p) && body.p > 1.0)
                return normalized(support_point(body, theta));
            return {};
        default: return {};
    }
}

bool rotation_invariant(const MeasureSpec& mu) {
    return mu.kind != MeasureKind::cone_power;
}

// rule pole/grade for integrating a measure density over a smooth boundary:
// cone densities carry an algebraic singularity on the great sphere
// orthogonal to their axis, which outranks any crease alignment
void measure_rule_hints(const MeasureSpec& mu, Vec& pole, double& grade) {
    if (mu.kind == MeasureKind::cone_power) {
        pole = mu.direction;
        grade = 3.0;
    }
}

std::vector<double> body_splits(const BodySpec& body) {
    if (body.dim != 2) return {};
    switch (body.kind) {
        case BodyKind::box:
        case BodyKind::cross_polytope:
        case BodyKind::h_polytope: return corner_angles(body);
        default: return {};
    }
}

struct ChartMeasure {
    MeasureSpec mu;
    double factor = 1.0;
    bool zero = false;
    Vec chart_axis;   // cone axis in chart coordinates (unit), else empty
};

ChartMeasure restrict_measure(const MeasureSpec& mu, const Frame& frame) {
    ChartMeasure out;
    out.mu = mu;
    if (mu.kind != MeasureKind::cone_power) return out;
    Vec c(frame.k);
    for (int j = 0; j < frame.k; j++) c[j] = dot(mu.direction, frame.basis[j]);
    double len = norm(c);
    if (len < 1e-14) {
        out.zero = true;   // density vanishes a.e. on the subspace
        return out;
    }
    out.chart_axis = scaled(c, 1.0 / len);
    out.mu = MeasureSpec::cone_power(out.chart_axis, mu.exponent);
    out.factor = std::pow(len, mu.exponent);
    return out;
}

// kink directions of lifted coordinate hyperplanes, for 2-D chart rules
std::vector<double> chart_coordinate_splits(const Frame& frame) {
    if (frame.k != 2) return {};
    std::vector<double> splits;
    for (int i = 0; i < frame.dim; i++) {
        double cx = frame.basis[0][i], cy = frame.basis[1][i];
        if (cx * cx + cy * cy < 1e-24) continue;
        double a = std::atan2(cy, cx);
        splits.push_back(a + M_PI_2);
        splits.push_back(a - M_PI_2);
    }
    return splits;
}

double sum_with(std::vector<double>& scratch) { return pairwise_sum(scratch); }

}  // namespace

std::string to_string(Method m) {
    switch (m) {
        case Method::analytic: return "analytic";
        case Method::facet_sum: return "facet_sum";
        case Method::radial_quadrature: return "radial_quadrature";
        case Method::boundary_quadrature: return "boundary_quadrature";
        case Method::hull_projection: return "hull_projection";
        case Method::finite_difference: return "finite_difference";
        case Method::monte_carlo: return "monte_carlo";
    }
    return "?";
}

// ---- boundary quadrature -----------------------------------------------------

BoundaryQuadrature boundary_quadrature(const BodySpec& body, const ComputeOptions& opt,
                                       const Vec& pole, double grade) {
    BoundaryQuadrature out;
    auto facets = facet_decomposition(body);
    if (facets) {
        out.method = Method::facet_sum;
        std::vector<Vec> pts;
        std::vector<double> w;
        for (const Facet& f : *facets) {
            facet_quadrature(f, opt.facet_order, pts, w);
            for (std::size_t i = 0; i < pts.size(); i++)
                out.fine.push_back({pts[i], f.unit_normal, w[i]});
            facet_quadrature(f, std::max(2, opt.facet_order / 2), pts, w);
            for (std::size_t i = 0; i < pts.size(); i++)
                out.coarse.push_back({pts[i], f.unit_normal, w[i]});
        }
        return out;
    }
    QuadratureRule rule = pole.empty()
                              ? sphere_rule(body.dim, opt.level, opt.seed,
                                            body_splits(body))
                              : sphere_rule_about(pole, opt.level, grade);
    auto fill = [&](const std::vector<Vec>& nodes, const std::vector<double>& ws,
                    std::vector<BoundarySample>& dst) {
        dst.reserve(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); i++) {
            BoundaryElement e = element_with_retry(body, nodes[i]);
            dst.push_back({e.point, e.normal, ws[i] * e.jacobian});
        }
    };
    fill(rule.nodes, rule.weights, out.fine);
    fill(rule.coarse_nodes, rule.coarse_weights, out.coarse);
    return out;
}

FunctionalValue surface_integral(const BodySpec& body,
                                 const std::function<double(const Vec&, const Vec&)>& f,
                                 const ComputeOptions& opt, const Vec& pole,
                                 double grade) {
    BoundaryQuadrature bq = boundary_quadrature(body, opt, pole, grade);
    std::vector<double> terms(bq.fine.size());
    for (std::size_t i = 0; i < bq.fine.size(); i++)
        terms[i] = bq.fine[i].weight * f(bq.fine[i].point, bq.fine[i].normal);
    double fine = sum_with(terms);
    terms.resize(bq.coarse.size());
    for (std::size_t i = 0; i < bq.coarse.size(); i++)
        terms[i] = bq.coarse[i].weight * f(bq.coarse[i].point, bq.coarse[i].normal);
    double coarse = sum_with(terms);
    return {fine, std::fabs(fine - coarse) + 1e-14 * std::fabs(fine), bq.method};
}

// ---- masses --------------------------------------------------------------------

FunctionalValue body_measure(const BodySpec& body, const MeasureSpec& mu,
                             const ComputeOptions& opt) {
    const int n = body.dim;
    if (opt.allow_analytic) {
        if (body.kind == BodyKind::ball)
            return {mu.ball_mass(n, body.radius), 1e-15 * mu.ball_mass(n, body.radius),
                    Method::analytic};
        if (mu.kind == MeasureKind::lebesgue) {
            auto v = analytic_volume(body);
            if (v) return {*v, 1e-15 * *v, Method::analytic};
        }
    }
    auto facets = facet_decomposition(body);
    if (facets) {
        // pyramid decomposition: mu(K) = sum_F offset_F * int_F w(y) dA / n
        // with w(y) = n * int_0^1 g(ty) t^(n-1) dt collapsed into the factor
        auto piece = [&](int order) {
            std::vector<double> terms;
            std::vector<Vec> pts;
            std::vector<double> w;
            for (const Facet& f : *facets) {
                facet_quadrature(f, order, pts, w);
                for (std::size_t i = 0; i < pts.size(); i++)
                    terms.push_back(f.offset * w[i] * ray_mass_factor(mu, pts[i]));
            }
            return pairwise_sum(terms);
        };
        double fine = piece(opt.facet_order);
        double coarse = piece(std::max(2, opt.facet_order / 2));
        return {fine, std::fabs(fine - coarse) + 1e-14 * std::fabs(fine),
                Method::facet_sum};
    }
    Vec pole;
    double grade = 1.0;
    measure_rule_hints(mu, pole, grade);
    QuadratureRule rule = pole.empty()
                              ? sphere_rule(n, opt.level, opt.seed, body_splits(body))
                              : sphere_rule_about(pole, opt.level, grade);
    IntegralResult res = integrate(rule, [&](const Vec& u) {
        return mu.segment_moment(u, radial(body, u), n - 1);
    });
    return {res.value, res.error, Method::radial_quadrature};
}

FunctionalValue subspace_measure(const BodySpec& body, const MeasureSpec& mu,
                                 const Frame& frame, const ComputeOptions& opt) {
    const int k = frame.k;
    if (frame.dim != body.dim)
        throw std::invalid_argument("subspace_measure: frame dimension mismatch");
    if (k == body.dim) return body_measure(body, mu, opt);

    if (k == 1) {
        const Vec& u = frame.basis[0];
        Vec mu_ = scaled(u, -1.0);
        double m = mu.segment_moment(u, radial(body, u), 0) +
                   mu.segment_moment(mu_, radial(body, mu_), 0);
        return {m, 1e-15 * std::fabs(m), Method::analytic};
    }

    ChartMeasure cm = restrict_measure(mu, frame);
    if (cm.zero) return {0.0, 0.0, Method::analytic};

    if (body.kind == BodyKind::ball && opt.allow_analytic) {
        double m = cm.factor * cm.mu.ball_mass(k, body.radius);
        return {m, 1e-15 * std::fabs(m), Method::analytic};
    }

    if (auto chart = restrict_to_subspace(body, frame)) {
        FunctionalValue inner = body_measure(*chart, cm.mu, opt);
        return {cm.factor * inner.value, cm.factor * inner.error, inner.method};
    }

    // radial quadrature over the subspace sphere
    std::vector<double> splits = chart_coordinate_splits(frame);
    QuadratureRule rule = subsphere_rule(frame, opt.level, opt.seed, splits,
                                         cm.chart_axis,
                                         cm.chart_axis.empty() ? 1.0 : 3.0);
    IntegralResult res = integrate(rule, [&](const Vec& u) {
        return mu.segment_moment(u, radial(body, u), k - 1);
    });
    return {res.value, res.error, Method::radial_quadrature};
}

FunctionalValue section_measure(const BodySpec& body, const MeasureSpec& mu,
                                const Vec& theta, const ComputeOptions& opt) {
    return subspace_measure(body, mu, Frame::hyperplane(theta), opt);
}

// ---- shadows --------------------------------------------------------------------

FunctionalValue projection_area(const BodySpec& body, const Vec& theta,
                                const ComputeOptions& opt) {
    const int n = body.dim;
    if ((int)theta.size() != n)
        throw std::invalid_argument("projection_area: dimension mismatch");
    if (opt.allow_analytic) {
        if (body.kind == BodyKind::ball) {
            double v = unit_ball_volume(n - 1) * std::pow(body.radius, n - 1);
            return {v, 1e-15 * v, Method::analytic};
        }
        if (body.kind == BodyKind::ellipsoid) {
            double prod = 1, q = 0;
            for (int i = 0; i < n; i++) {
                prod *= body.semi_axes[i];
                q += theta[i] * theta[i] / (body.semi_axes[i] * body.semi_axes[i]);
            }
            double v = unit_ball_volume(n - 1) * prod * std::sqrt(q);
            return {v, 1e-15 * v, Method::analytic};
        }
        if (body.kind == BodyKind::box) {
            double v = 0;
            for (int i = 0; i < n; i++) {
                double t = std::fabs(theta[i]);
                for (int j = 0; j < n; j++)
                    if (j != i) t *= 2 * body.half_widths[j];
                v += t;
            }
            return {v, 1e-14 * v, Method::analytic};
        }
    }
    if (auto facets = facet_decomposition(body)) {
        std::vector<double> terms;
        for (const Facet& f : *facets)
            terms.push_back(std::fabs(dot(theta, f.unit_normal)) * f.area);
        double v = 0.5 * pairwise_sum(terms);
        return {v, 1e-14 * v, Method::facet_sum};
    }
    FunctionalValue r = surface_integral(
        body,
        [&](const Vec&, const Vec& nu) { return 0.5 * std::fabs(dot(theta, nu)); },
        opt, silhouette_pole(body, theta));
    r.method = Method::boundary_quadrature;
    return r;
}

FunctionalValue subspace_projection_volume(const BodySpec& body, const Frame& frame,
                                           const ComputeOptions& opt) {
    const int n = body.dim, k = frame.k;
    if (frame.dim != n)
        throw std::invalid_argument("subspace_projection_volume: dimension mismatch");
    if (k == n) return body_measure(body, MeasureSpec::lebesgue(), opt);
    if (k == n - 1 && !frame.normal.empty()) return projection_area(body, frame.normal, opt);
    if (k == 1) {
        Vec mu_ = scaled(frame.basis[0], -1.0);
        double len = support(body, frame.basis[0]) + support(body, mu_);
        return {len, 1e-15 * len, Method::analytic};
    }
    if (opt.allow_analytic &&
        (body.kind == BodyKind::ball || body.kind == BodyKind::ellipsoid)) {
        // Gram matrix of the chart basis under the squared-axis metric
        std::vector<Vec> g(k, Vec(k, 0.0));
        for (int i = 0; i < k; i++)
            for (int j = 0; j < k; j++) {
                double s = 0;
                for (int l = 0; l < n; l++) {
                    double a = body.kind == BodyKind::ball ? body.radius
                                                           : body.semi_axes[l];
                    s += a * a * frame.basis[i][l] * frame.basis[j][l];
                }
                g[i][j] = s;
            }
        double v = unit_ball_volume(k) * std::sqrt(spd_determinant(g));
        return {v, 1e-14 * v, Method::analytic};
    }
    auto chart_point = [&](const Vec& x) {
        Vec y(k);
        for (int j = 0; j < k; j++) y[j] = dot(x, frame.basis[j]);
        return y;
    };
    std::vector<Vec> verts = vertex_enumeration(body);
    if (!verts.empty()) {
        std::vector<Vec> pts;
        for (const Vec& v : verts) pts.push_back(chart_point(v));
        double v = k == 2 ? hull_area_2d(std::move(pts)) : hull_volume_3d(pts);
        return {v, 1e-13 * v, Method::hull_projection};
    }
    if (k > 3)
        throw std::invalid_argument(
            "subspace_projection_volume: smooth bodies need chart dim <= 3");
    // support points of the body seen through the chart are support points of
    // the shadow; hulls over two resolutions give a Richardson estimate
    auto hull_at = [&](int level) {
        QuadratureRule dirs = sphere_rule(k, level, opt.seed);
        std::vector<Vec> pts;
        pts.reserve(dirs.nodes.size());
        for (const Vec& d : dirs.nodes)
            pts.push_back(chart_point(support_point(body, frame.lift(d))));
        return k == 2 ? hull_area_2d(std::move(pts)) : hull_volume_3d(pts);
    };
    double fine = hull_at(opt.level), coarse = hull_at(std::max(1, opt.level - 1));
    double v = fine + (fine - coarse) / 3.0;
    return {v, std::fabs(fine - coarse) / 3.0 + 1e-13 * std::fabs(v),
            Method::hull_projection};
}

// ---- weighted projections --------------------------------------------------------

FunctionalValue mu_projection(const BodySpec& body, const MeasureSpec& mu,
                              const Vec& theta, const ComputeOptions& opt) {
    const int n = body.dim;
    if ((int)theta.size() != n)
        throw std::invalid_argument("mu_projection: dimension mismatch");
    if (opt.allow_analytic && body.kind == BodyKind::ball && rotation_invariant(mu)) {
        double r = body.radius;
        double w = mu.segment_moment(theta, r, n - 1) / std::pow(r, n);
        double v = n * unit_ball_volume(n - 1) * std::pow(r, n - 1) * w;
        return {v, 1e-14 * std::fabs(v), Method::analytic};
    }
    Vec pole = silhouette_pole(body, theta);
    double grade = 1.0;
    measure_rule_hints(mu, pole, grade);
    FunctionalValue r = surface_integral(
        body,
        [&](const Vec& x, const Vec& nu) {
            return 0.5 * n * std::fabs(dot(theta, nu)) * ray_mass_factor(mu, x);
        },
        opt, pole, grade);
    return r;
}

MuProjector::MuProjector(const BodySpec& body, const MeasureSpec& mu,
                         const ComputeOptions& opt)
    : dim_(body.dim) {
    Vec pole;
    double grade = 1.0;
    measure_rule_hints(mu, pole, grade);
    BoundaryQuadrature bq = boundary_quadrature(body, opt, pole, grade);
    auto build = [&](const std::vector<BoundarySample>& src, Layer& dst) {
        dst.normals.reserve(src.size());
        dst.coeffs.reserve(src.size());
        for (const BoundarySample& s : src) {
            dst.normals.push_back(s.normal);
            dst.coeffs.push_back(s.weight * ray_mass_factor(mu, s.point));
        }
    };
    build(bq.fine, fine_);
    build(bq.coarse, coarse_);
}

double MuProjector::collapse(const Layer& layer, const Vec& theta) const {
    std::vector<double> terms(layer.coeffs.size());
    for (std::size_t i = 0; i < terms.size(); i++)
        terms[i] = layer.coeffs[i] * std::fabs(dot(theta, layer.normals[i]));
    return 0.5 * dim_ * pairwise_sum(terms);
}

FunctionalValue MuProjector::operator()(const Vec& theta) const {
    if ((int)theta.size() != dim_)
        throw std::invalid_argument("MuProjector: dimension mismatch");
    double fine = collapse(fine_, theta);
    double coarse = collapse(coarse_, theta);
    return {fine, std::fabs(fine - coarse) + 1e-14 * std::fabs(fine),
            Method::boundary_quadrature};
}

// ---- Minkowski sums ---------------------------------------------------------------

Addend Addend::ball(double radius) {
    if (radius < 0) throw std::invalid_argument("Addend::ball: negative radius");
    Addend a;
    a.kind = Kind::ball;
    a.radius = radius;
    return a;
}

Addend Addend::segment(Vec direction, double half_length) {
    if (half_length < 0) throw std::invalid_argument("Addend::segment: negative length");
    if (std::fabs(dot(direction, direction) - 1.0) > 2e-10)
        throw std::invalid_argument("Addend::segment: direction must be unit");
    Addend a;
    a.kind = Kind::segment;
    a.direction = std::move(direction);
    a.half_length = half_length;
    return a;
}

Addend Addend::homothet(double factor) {
    if (factor < 0) throw std::invalid_argument("Addend::homothet: negative factor");
    Addend a;
    a.kind = Kind::homothet;
    a.factor = factor;
    return a;
}

Addend Addend::scaled_by(double t) const {
    Addend a(*this);
    if (t < 0) throw std::invalid_argument("Addend::scaled_by: negative scale");
    a.radius *= t;
    a.half_length *= t;
    a.factor *= t;
    return a;
}

double Addend::support(const BodySpec& base, const Vec& normal) const {
    switch (kind) {
        case Kind::ball: return radius;
        case Kind::segment: return half_length * std::fabs(dot(direction, normal));
        case Kind::homothet: return factor * geomtomo::support(base, normal);
    }
    throw std::logic_error("Addend::support: unhandled kind");
}

namespace {

bool axis_aligned_unit(const Vec& d, int& axis) {
    for (std::size_t i = 0; i < d.size(); i++)
        if (std::fabs(std::fabs(d[i]) - 1.0) < 1e-12) {
            axis = (int)i;
            return true;
        }
    return false;
}

// smallest gauge value of base over the slide x - s * d, s in [-hl, hl];
// convex in s, so golden-section search converges
double slide_gauge_min(const BodySpec& base, const Vec& x, const Vec& d, double hl) {
    double a = -hl, b = hl;
    const double gr = 0.6180339887498949;
    double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
    double f1 = gauge(base, diff(x, scaled(d, c1)));
    double f2 = gauge(base, diff(x, scaled(d, c2)));
    for (int it = 0; it < 80 && b - a > 1e-13 * (1 + hl); it++) {
        if (f1 < f2) {
            b = c2;
            c2 = c1;
            f2 = f1;
            c1 = b - gr * (b - a);
            f1 = gauge(base, diff(x, scaled(d, c1)));
        } else {
            a = c1;
            c1 = c2;
            f1 = f2;
            c2 = a + gr * (b - a);
            f2 = gauge(base, diff(x, scaled(d, c2)));
        }
    }
    return std::min(f1, f2);
}

// radial function of base + addend via bisection on a membership oracle
double sum_radial(const BodySpec& base, const Addend& add, const Vec& u,
                  double circum) {
    const bool ball = add.kind == Addend::Kind::ball;
    auto phi = [&](double t) {
        Vec x = scaled(u, t);
        return ball ? distance_to_body(base, x) - add.radius
                    : slide_gauge_min(base, x, add.direction, add.half_length) - 1.0;
    };
    double lo = radial(base, u) * (1 - 1e-13);
    double hi = circum + (ball ? add.radius : add.half_length) + 1.0;
    if (phi(lo) > 0) return lo;   // zero-size addend edge case
    return bisect_root(phi, lo, hi, 1e-12 * hi);
}

}  // namespace

FunctionalValue sum_body_measure(const BodySpec& base, const Addend& add,
                                 const MeasureSpec& mu, const ComputeOptions& opt) {
    const int n = base.dim;
    // exact reductions within the catalog
    if (add.kind == Addend::Kind::homothet)
        return body_measure(dilate(base, 1.0 + add.factor), mu, opt);
    if (add.kind == Addend::Kind::ball) {
        if (add.radius == 0) return body_measure(base, mu, opt);
        if (base.kind == BodyKind::ball)
            return body_measure(BodySpec::ball(n, base.radius + add.radius), mu, opt);
    }
    if (add.kind == Addend::Kind::segment) {
        if (add.half_length == 0) return body_measure(base, mu, opt);
        int axis = -1;
        if (base.kind == BodyKind::box && axis_aligned_unit(add.direction, axis)) {
            BodySpec grown(base);
            grown.half_widths[axis] += add.half_length;
            return body_measure(grown, mu, opt);
        }
    }
    if (add.kind == Addend::Kind::ball && base.kind != BodyKind::ball &&
        base.kind != BodyKind::box && base.kind != BodyKind::ellipsoid &&
        base.kind != BodyKind::cross_polytope)
        throw std::invalid_argument(
            "sum_body_measure: ball addend needs a base kind with an exact "
            "distance map (ball, box, ellipsoid, cross_polytope)");

    double circum = radii(base).circumradius;
    Vec pole;
    double grade = 1.0;
    measure_rule_hints(mu, pole, grade);
    QuadratureRule rule = pole.empty() ? sphere_rule(n, opt.level, opt.seed)
                                       : sphere_rule_about(pole, opt.level, grade);
    IntegralResult res = integrate(rule, [&](const Vec& u) {
        return mu.segment_moment(u, sum_radial(base, add, u, circum), n - 1);
    });
    return {res.value, res.error, Method::radial_quadrature};
}

// ---- mixed measures ----------------------------------------------------------------

FunctionalValue mixed_measure(const BodySpec& body, const Addend& add,
                              const MeasureSpec& mu, const ComputeOptions& opt,
                              MixedMethod method) {
    if (method == MixedMethod::boundary) {
        Vec pole;
        double grade = 1.0;
        if (add.kind == Addend::Kind::segment)
            pole = silhouette_pole(body, add.direction);
        measure_rule_hints(mu, pole, grade);
        return surface_integral(
            body,
            [&](const Vec& x, const Vec& nu) {
                return add.support(body, nu) * mu.density(x);
            },
            opt, pole, grade);
    }
    // Richardson-extrapolated forward differences of eps -> mu(K + eps A);
    // the difference quotient is formed per sphere node before integrating,
    // so quadrature bias cancels exactly instead of being amplified by 1/eps
    const int n = body.dim;
    if (add.kind == Addend::Kind::ball && body.kind != BodyKind::ball &&
        body.kind != BodyKind::box && body.kind != BodyKind::ellipsoid &&
        body.kind != BodyKind::cross_polytope)
        throw std::invalid_argument(
            "mixed_measure: ball addend needs a base kind with an exact distance map");
    double circum = radii(body).circumradius;
    auto grown_radial = [&](double eps, const Vec& u) {
        if (add.kind == Addend::Kind::homothet)
            return (1.0 + eps * add.factor) * radial(body, u);
        return sum_radial(body, add.scaled_by(eps), u, circum);
    };
    Vec pole;
    double grade = 1.0;
    measure_rule_hints(mu, pole, grade);
    QuadratureRule rule = pole.empty()
                              ? sphere_rule(n, opt.level, opt.seed)
                              : sphere_rule_about(pole, opt.level, grade);
    double scale = radii(body).inradius;
    std::array<double, 3> eps{1e-2 * scale, 5e-3 * scale, 2.5e-3 * scale};
    std::array<double, 3> diffq{}, err{};
    for (int i = 0; i < 3; i++) {
        IntegralResult res = integrate(rule, [&](const Vec& u) {
            double r0 = radial(body, u);
            double m0 = mu.segment_moment(u, r0, n - 1);
            double m1 = mu.segment_moment(u, grown_radial(eps[i], u), n - 1);
            return (m1 - m0) / eps[i];
        });
        diffq[i] = res.value;
        err[i] = res.error;
    }
    double r1 = 2 * diffq[1] - diffq[0];
    double r2 = 2 * diffq[2] - diffq[1];
    double value = (4 * r2 - r1) / 3.0;
    return {value, std::fabs(r2 - r1) + err[2] + err[1], Method::finite_difference};
}

// ---- scalar geometry ---------------------------------------------------------------

FunctionalValue surface_area(const BodySpec& body, const ComputeOptions& opt) {
    const int n = body.dim;
    if (opt.allow_analytic && body.kind == BodyKind::ball) {
        double v = sphere_area(n) * std::pow(body.radius, n - 1);
        return {v, 1e-15 * v, Method::analytic};
    }
    if (auto facets = facet_decomposition(body)) {
        std::vector<double> terms;
        for (const Facet& f : *facets) terms.push_back(f.area);
        double v = pairwise_sum(terms);
        return {v, 1e-14 * v, Method::facet_sum};
    }
    return surface_integral(body, [](const Vec&, const Vec&) { return 1.0; }, opt);
}

FunctionalValue mean_width(const BodySpec& body, const ComputeOptions& opt) {
    const int n = body.dim;
    double total = sphere_area(n);
    if (opt.allow_analytic) {
        if (body.kind == BodyKind::ball)
            return {body.radius, 1e-15 * body.radius, Method::analytic};
        if (body.kind == BodyKind::box) {
            double s = 0;
            for (double w : body.half_widths) s += w;
            double v = s * 2 * unit_ball_volume(n - 1) / total;
            return {v, 1e-15 * v, Method::analytic};
        }
    }
    QuadratureRule rule = sphere_rule(n, opt.level, opt.seed, body_splits(body));
    IntegralResult res = integrate(rule, [&](const Vec& u) { return support(body, u); });
    return {res.value / total, res.error / total, Method::radial_quadrature};
}

FunctionalValue isotropic_constant(const BodySpec& body, const ComputeOptions& opt,
                                   bool sqrt_normalization) {
    const int n = body.dim;
    Vec half(n);
    for (int i = 0; i < n; i++) {
        Vec e(n, 0.0);
        e[i] = 1.0;
        half[i] = support(body, e);
    }
    double box_vol = 1;
    for (double h : half) box_vol *= 2 * h;
    const int batches = 16;
    const long per = 1L << (12 + 2 * std::min(opt.level, 4));
    Rng rng(opt.seed ^ 0x9e3779b9u);
    std::vector<double> ls;
    for (int b = 0; b < batches; b++) {
        long hits = 0;
        Vec mean(n, 0.0);
        std::vector<Vec> second(n, Vec(n, 0.0));
        for (long s = 0; s < per; s++) {
            Vec x(n);
            for (int i = 0; i < n; i++) x[i] = rng.uniform(-half[i], half[i]);
            if (gauge(body, x) > 1.0) continue;
            hits++;
            for (int i = 0; i < n; i++) {
                mean[i] += x[i];
                for (int j = 0; j < n; j++) second[i][j] += x[i] * x[j];
            }
        }
        if (hits < 16 * n)
            throw std::runtime_error("isotropic_constant: rejection rate too high");
        double vol = box_vol * (double)hits / per;
        std::vector<Vec> cov(n, Vec(n, 0.0));
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++)
                cov[i][j] = second[i][j] / hits - mean[i] * mean[j] / (hits * (double)hits);
        double det = spd_determinant(cov);
        double diag = std::pow(det, 1.0 / n) / std::pow(vol, 2.0 / n);
        ls.push_back(sqrt_normalization ? std::sqrt(diag) : diag);
    }
    double m = 0;
    for (double l : ls) m += l;
    m /= batches;
    double var = 0;
    for (double l : ls) var += (l - m) * (l - m);
    var /= batches * (batches - 1.0);
    return {m, 3 * std::sqrt(var), Method::monte_carlo};
}

std::vector<FunctionalValue> parallel_section_profile(const BodySpec& body,
                                                      const MeasureSpec& mu,
                                                      const Vec& theta,
                                                      const std::vector<double>& ts,
                                                      const ComputeOptions& opt) {
    const int n = body.dim;
    double h = support(body, theta);
    Vec apex = support_point(body, theta);
    Frame frame = Frame::hyperplane(theta);
    QuadratureRule rule = subsphere_rule(frame, opt.level, opt.seed);
    std::vector<double> rx, rw;
    radial_rule(opt.level, rx, rw);

    std::vector<FunctionalValue> out;
    for (double t : ts) {
        if (t < 0 || t > h * (1 - 1e-12)) {
            out.push_back({0.0, 0.0, Method::analytic});
            continue;
        }
        Vec center = scaled(apex, t / h);
        auto slice_mass = [&](const Vec& d) {
            auto f = [&](double s) { return gauge(body, sum(center, scaled(d, s))) - 1.0; };
            double hi = 2 * radii(body).circumradius + 1;
            double len = bisect_root(f, 0.0, hi, 1e-11 * hi);
            if (mu.kind == MeasureKind::lebesgue)
                return std::pow(len, n - 1) / (n - 1);
            double acc = 0;
            for (std::size_t i = 0; i < rx.size(); i++) {
                double r = rx[i] * len;
                acc += rw[i] * len * mu.density(sum(center, scaled(d, r))) *
                       std::pow(r, n - 2);
            }
            return acc;
        };
        std::vector<double> terms(rule.nodes.size());
        for (std::size_t i = 0; i < rule.nodes.size(); i++)
            terms[i] = rule.weights[i] * slice_mass(rule.nodes[i]);
        double fine = pairwise_sum(terms);
        terms.resize(rule.coarse_nodes.size());
        for (std::size_t i = 0; i < rule.coarse_nodes.size(); i++)
            terms[i] = rule.coarse_weights[i] * slice_mass(rule.coarse_nodes[i]);
        double coarse = pairwise_sum(terms);
        out.push_back({fine, std::fabs(fine - coarse) + 1e-13 * std::fabs(fine),
                       Method::radial_quadrature});
    }
    return out;
}

// ---- hulls ------------------------------------------------------------------------

double hull_area_2d(std::vector<Vec> pts) {
    if (pts.size() < 3) return 0.0;
    std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
        return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vec& a, const Vec& b) {
                              return a[0] == b[0] && a[1] == b[1];
                          }),
              pts.end());
    auto cross = [](const Vec& o, const Vec& a, const Vec& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<Vec> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Vec& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) k--;
        hull[k++] = p;
    }
    std::size_t lower = k + 1;
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0) k--;
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    double area = 0;
    for (std::size_t i = 0; i < hull.size(); i++) {
        const Vec& a = hull[i];
        const Vec& b = hull[(i + 1) % hull.size()];
        area += a[0] * b[1] - a[1] * b[0];
    }
    return 0.5 * std::fabs(area);
}

double hull_volume_3d(const std::vector<Vec>& pts) {
    const std::size_t m = pts.size();
    if (m < 4) return 0.0;
    double scale = 0;
    for (const Vec& p : pts) scale = std::max(scale, norm(p));
    const double eps = 1e-12 * std::max(scale, 1.0);

    auto sub = [](const Vec& a, const Vec& b) {
        return Vec{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
    };
    auto crossv = [](const Vec& a, const Vec& b) {
        return Vec{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                   a[0] * b[1] - a[1] * b[0]};
    };

    // initial simplex: spread points
    std::size_t i0 = 0, i1 = 1;
    double best = -1;
    for (std::size_t i = 0; i < m; i++)
        for (std::size_t j = i + 1; j < std::min(m, i + 64); j++) {
            double d = norm(sub(pts[i], pts[j]));
            if (d > best) {
                best = d;
                i0 = i;
                i1 = j;
            }
        }
    std::size_t i2 = 0;
    best = -1;
    for (std::size_t i = 0; i < m; i++) {
        double d = norm(crossv(sub(pts[i1], pts[i0]), sub(pts[i], pts[i0])));
        if (d > best) {
            best = d;
            i2 = i;
        }
    }
    if (best < eps) return 0.0;
    Vec nrm = crossv(sub(pts[i1], pts[i0]), sub(pts[i2], pts[i0]));
    std::size_t i3 = 0;
    best = -1;
    for (std::size_t i = 0; i < m; i++) {
        double d = std::fabs(dot(nrm, sub(pts[i], pts[i0])));
        if (d > best) {
            best = d;
            i3 = i;
        }
    }
    if (best < eps) return 0.0;

    struct Face {
        std::array<std::size_t, 3> v;
        Vec normal;   // outward, unnormalized
        bool alive = true;
    };
    std::vector<Face> faces;
    Vec inner{(pts[i0][0] + pts[i1][0] + pts[i2][0] + pts[i3][0]) / 4,
              (pts[i0][1] + pts[i1][1] + pts[i2][1] + pts[i3][1]) / 4,
              (pts[i0][2] + pts[i1][2] + pts[i2][2] + pts[i3][2]) / 4};
    auto add_face = [&](std::size_t a, std::size_t b, std::size_t c) {
        Face f;
        f.v = {a, b, c};
        f.normal = crossv(sub(pts[b], pts[a]), sub(pts[c], pts[a]));
        if (dot(f.normal, sub(inner, pts[a])) > 0)
            for (double& x : f.normal) x = -x;
        faces.push_back(std::move(f));
    };
    add_face(i0, i1, i2);
    add_face(i0, i1, i3);
    add_face(i0, i2, i3);
    add_face(i1, i2, i3);

    for (std::size_t p = 0; p < m; p++) {
        if (p == i0 || p == i1 || p == i2 || p == i3) continue;
        std::vector<std::size_t> visible;
        for (std::size_t f = 0; f < faces.size(); f++) {
            if (!faces[f].alive) continue;
            if (dot(faces[f].normal, sub(pts[p], pts[faces[f].v[0]])) >
                eps * norm(faces[f].normal))
                visible.push_back(f);
        }
        if (visible.empty()) continue;
        // horizon: edges of visible faces shared with a live hidden face
        std::vector<std::pair<std::size_t, std::size_t>> horizon;
        auto edge_on = [&](std::size_t a, std::size_t b) {
            for (std::size_t f = 0; f < faces.size(); f++) {
                if (!faces[f].alive) continue;
                bool vis = std::find(visible.begin(), visible.end(), f) != visible.end();
                if (vis) continue;
                const auto& v = faces[f].v;
                bool hasA = v[0] == a || v[1] == a || v[2] == a;
                bool hasB = v[0] == b || v[1] == b || v[2] == b;
                if (hasA && hasB) return true;
            }
            return false;
        };
        for (std::size_t f : visible) {
            const auto& v = faces[f].v;
            for (auto [a, b] : {std::pair{v[0], v[1]}, std::pair{v[1], v[2]},
                                std::pair{v[0], v[2]}})
                if (edge_on(a, b)) horizon.emplace_back(a, b);
        }
        for (std::size_t f : visible) faces[f].alive = false;
        for (auto [a, b] : horizon) add_face(a, b, p);
    }

    double vol = 0;
    for (const Face& f : faces) {
        if (!f.alive) continue;
        vol += std::fabs(dot(sub(pts[f.v[0]], inner),
                             crossv(sub(pts[f.v[1]], inner), sub(pts[f.v[2]], inner)))) /
               6.0;
    }
    return vol;
}

}  // namespace geomtomo
