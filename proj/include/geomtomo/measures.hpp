#pragma once

// Measures with continuous radial-friendly densities on R^n.  Every measure
// is given by a nonnegative density g against Lebesgue measure:
//
//   lebesgue       g = 1
//   radial_power   g(x) = |x|^p, p > 0
//   cone_power     g(x) = max(<x,w>, 0)^alpha, unit w, alpha > 0
//   gaussian       g(x) = exp(-|x|^2 / (2 sigma^2)), optionally truncated
//                  to the ball of radius `truncation`
//
// The helpers expose the structural facts the inequality checks rely on:
// homogeneity degree of the density, monotonicity along rays toward the
// origin, the concavity exponent q for dilation profiles t -> mu(tK)^q,
// and closed-form masses of balls and of radial segments.

#include "geomtomo/bodies.hpp"
#include "geomtomo/numerics.hpp"

#include <optional>
#include <string>

namespace geomtomo {

enum class MeasureKind { lebesgue, radial_power, cone_power, gaussian };

std::string to_string(MeasureKind k);

struct MeasureSpec {
    MeasureKind kind = MeasureKind::lebesgue;
    double exponent = 0.0;            // radial_power p, cone_power alpha
    Vec direction;                    // cone_power axis (unit)
    double sigma = 1.0;               // gaussian width
    double truncation = HUGE_VAL;     // gaussian support radius, inf if none

    static MeasureSpec lebesgue();
    static MeasureSpec radial_power(double p);
    static MeasureSpec cone_power(Vec direction, double alpha);
    static MeasureSpec gaussian(double sigma, double truncation = HUGE_VAL);

    double density(const Vec& x) const;

    // density homogeneity: g(tx) = t^deg g(x) for t > 0
    bool homogeneous() const;
    double density_degree() const;

    // g(tx) >= g(x) for all t in [0,1] (density does not grow outward)
    bool ray_decreasing() const;

    // exponent q with t -> mu(tK)^q concave on [0,1]; for homogeneous
    // measures q = 1/(n + deg) exactly, for a truncated gaussian the value
    // is valid for bodies inside the ball of radius truncation/2
    std::optional<double> q_exponent(int n) const;

    // sup of the density over a convex region containing the origin
    double sup_density(const BodySpec& region) const;

    // mass of the centered ball of radius r in dimension n
    double ball_mass(int n, double r) const;

    // integral of g(s u) s^m ds over s in [0, t] for a unit direction u
    double segment_moment(const Vec& u, double t, int m) const;

    std::string to_json() const;
    static MeasureSpec from_json(const std::string& text);
};

}  // namespace geomtomo
