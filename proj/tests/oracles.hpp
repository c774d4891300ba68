#pragma once
// Independent test-side oracles.  Values are recomputed from elementary
// per-kind formulas plus Monte Carlo or dense 1-D quadrature, deliberately
// avoiding the library's quadrature and boundary machinery so that
// agreement is evidence rather than tautology.

#include "geomtomo/bodies.hpp"
#include "geomtomo/measures.hpp"
#include "geomtomo/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace oracles {

using geomtomo::BodyKind;
using geomtomo::BodySpec;
using geomtomo::MeasureKind;
using geomtomo::MeasureSpec;
using geomtomo::Rng;
using geomtomo::Vec;

struct McValue {
    double value = 0;
    double se = 0;   // one standard error
};

// gauge ||x||_K from the defining formula of each catalog kind
inline double gauge(const BodySpec& b, const Vec& x) {
    switch (b.kind) {
        case BodyKind::ball: {
            double s = 0;
            for (double v : x) s += v * v;
            return std::sqrt(s) / b.radius;
        }
        case BodyKind::ellipsoid: {
            double s = 0;
            for (int i = 0; i < b.dim; i++) s += x[i] * x[i] / (b.semi_axes[i] * b.semi_axes[i]);
            return std::sqrt(s);
        }
        case BodyKind::box: {
            double m = 0;
            for (int i = 0; i < b.dim; i++) m = std::max(m, std::abs(x[i]) / b.half_widths[i]);
            return m;
        }
        case BodyKind::cross_polytope: {
            double s = 0;
            for (double v : x) s += std::abs(v);
            return s / b.scale;
        }
        case BodyKind::lp_ball: {
            if (std::isinf(b.p)) {
                double m = 0;
                for (double v : x) m = std::max(m, std::abs(v));
                return m / b.scale;
            }
            double s = 0;
            for (double v : x) s += std::pow(std::abs(v), b.p);
            return std::pow(s, 1.0 / b.p) / b.scale;
        }
        case BodyKind::h_polytope: {
            double m = 0;
            for (std::size_t i = 0; i < b.normals.size(); i++)
                m = std::max(m, geomtomo::dot(b.normals[i], x) / b.offsets[i]);
            return m;
        }
    }
    throw std::logic_error("gauge: unhandled kind");
}

inline bool inside(const BodySpec& b, const Vec& x) { return oracles::gauge(b, x) <= 1.0; }

// axis-aligned bounding half-widths (support in each coordinate direction)
inline Vec bounding_box(const BodySpec& b) {
    Vec w(b.dim, 0.0);
    switch (b.kind) {
        case BodyKind::ball:
            for (double& v : w) v = b.radius;
            break;
        case BodyKind::ellipsoid: w = b.semi_axes; break;
        case BodyKind::box: w = b.half_widths; break;
        case BodyKind::cross_polytope:
        case BodyKind::lp_ball:
            for (double& v : w) v = b.scale;
            break;
        case BodyKind::h_polytope:
            throw std::invalid_argument("bounding_box: h_polytope not supported");
    }
    return w;
}

inline double density(const MeasureSpec& m, const Vec& x) {
    switch (m.kind) {
        case MeasureKind::lebesgue: return 1.0;
        case MeasureKind::radial_power: return std::pow(geomtomo::norm(x), m.exponent);
        case MeasureKind::cone_power: {
            double t = geomtomo::dot(m.direction, x);
            return t > 0 ? std::pow(t, m.exponent) : 0.0;
        }
        case MeasureKind::gaussian: {
            double r2 = geomtomo::dot(x, x);
            if (r2 > m.truncation * m.truncation) return 0.0;
            return std::exp(-r2 / (2.0 * m.sigma * m.sigma));
        }
    }
    throw std::logic_error("density: unhandled kind");
}

// mass of the body by rejection sampling from the bounding box
inline McValue mc_mass(const BodySpec& b, const MeasureSpec& m, int count,
                       std::uint64_t seed) {
    Vec w = bounding_box(b);
    double box_vol = 1.0;
    for (double v : w) box_vol *= 2.0 * v;
    Rng rng(seed);
    double acc = 0, acc2 = 0;
    Vec x(b.dim);
    for (int i = 0; i < count; i++) {
        for (int d = 0; d < b.dim; d++) x[d] = rng.uniform(-w[d], w[d]);
        double f = inside(b, x) ? density(m, x) : 0.0;
        acc += f;
        acc2 += f * f;
    }
    double mean = acc / count;
    double var = std::max(0.0, acc2 / count - mean * mean);
    return {box_vol * mean, box_vol * std::sqrt(var / count)};
}

inline McValue mc_volume(const BodySpec& b, int count, std::uint64_t seed) {
    return mc_mass(b, MeasureSpec::lebesgue(), count, seed);
}

// shadow area |K|theta_perp| by sampling a chart box in the hyperplane and
// testing whether the line through each sample meets the body (the gauge is
// convex along the line, so a dense t-scan plus local refinement suffices)
inline McValue mc_shadow(const BodySpec& b, const Vec& theta, int count,
                         std::uint64_t seed) {
    int n = b.dim;
    std::vector<Vec> basis = geomtomo::complete_basis({theta}, n);
    double reach = geomtomo::norm(bounding_box(b));
    double chart_vol = 1.0;
    for (int i = 0; i < n - 1; i++) chart_vol *= 2.0 * reach;
    Rng rng(seed);
    int hits = 0;
    Vec y(n);
    for (int i = 0; i < count; i++) {
        Vec x(n, 0.0);
        for (int d = 1; d < n; d++) {
            double c = rng.uniform(-reach, reach);
            geomtomo::axpy(c, basis[d], x);
        }
        // minimize gauge along x + t*theta by golden section on [-reach, reach]
        double lo = -reach, hi = reach;
        const double phi = 0.6180339887498949;
        double t1 = hi - phi * (hi - lo), t2 = lo + phi * (hi - lo);
        auto eval = [&](double t) {
            for (int d = 0; d < n; d++) y[d] = x[d] + t * theta[d];
            return oracles::gauge(b, y);
        };
        double f1 = eval(t1), f2 = eval(t2);
        for (int it = 0; it < 60; it++) {
            if (f1 < f2) {
                hi = t2; t2 = t1; f2 = f1;
                t1 = hi - phi * (hi - lo);
                f1 = eval(t1);
            } else {
                lo = t1; t1 = t2; f1 = f2;
                t2 = lo + phi * (hi - lo);
                f2 = eval(t2);
            }
        }
        if (std::min(f1, f2) <= 1.0) hits++;
    }
    double p = double(hits) / count;
    return {chart_vol * p, chart_vol * std::sqrt(std::max(0.0, p * (1 - p)) / count)};
}

// weighted central section mass by sampling the hyperplane chart
inline McValue mc_section(const BodySpec& b, const MeasureSpec& m, const Vec& theta,
                          int count, std::uint64_t seed) {
    int n = b.dim;
    std::vector<Vec> basis = geomtomo::complete_basis({theta}, n);
    double reach = geomtomo::norm(bounding_box(b));
    double chart_vol = 1.0;
    for (int i = 0; i < n - 1; i++) chart_vol *= 2.0 * reach;
    Rng rng(seed);
    double acc = 0, acc2 = 0;
    for (int i = 0; i < count; i++) {
        Vec x(n, 0.0);
        for (int d = 1; d < n; d++) {
            double c = rng.uniform(-reach, reach);
            geomtomo::axpy(c, basis[d], x);
        }
        double f = inside(b, x) ? density(m, x) : 0.0;
        acc += f;
        acc2 += f * f;
    }
    double mean = acc / count;
    double var = std::max(0.0, acc2 / count - mean * mean);
    return {chart_vol * mean, chart_vol * std::sqrt(var / count)};
}

// dense composite Simpson rule (m even panels)
inline double simpson(const std::function<double(double)>& f, double a, double b, int m) {
    double h = (b - a) / m;
    double acc = f(a) + f(b);
    for (int i = 1; i < m; i++) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

inline double ellipse_perimeter(double a, double b) {
    auto arc = [&](double t) {
        double sa = a * std::sin(t), cb = b * std::cos(t);
        return std::sqrt(sa * sa + cb * cb);
    };
    return simpson(arc, 0.0, 2.0 * std::acos(-1.0), 4096);
}

// closed-form volumes from the standard formulas
inline double exact_volume(const BodySpec& b) {
    int n = b.dim;
    switch (b.kind) {
        case BodyKind::ball: return geomtomo::unit_ball_volume(n) * std::pow(b.radius, n);
        case BodyKind::ellipsoid: {
            double v = geomtomo::unit_ball_volume(n);
            for (double a : b.semi_axes) v *= a;
            return v;
        }
        case BodyKind::box: {
            double v = 1.0;
            for (double w : b.half_widths) v *= 2.0 * w;
            return v;
        }
        case BodyKind::cross_polytope: {
            double v = std::pow(2.0 * b.scale, n);
            for (int i = 2; i <= n; i++) v /= i;
            return v;
        }
        case BodyKind::lp_ball: {
            double v = std::pow(2.0 * std::tgamma(1.0 / b.p + 1.0), n) /
                       std::tgamma(double(n) / b.p + 1.0);
            return v * std::pow(b.scale, n);
        }
        case BodyKind::h_polytope:
            throw std::invalid_argument("exact_volume: h_polytope not supported");
    }
    throw std::logic_error("exact_volume: unhandled kind");
}

}  // namespace oracles
