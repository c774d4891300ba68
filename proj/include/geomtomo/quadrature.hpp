#pragma once

// Quadrature over spheres, subspace spheres and radial segments.
//
// Deterministic rules (dimensions 2..4) carry a coarser companion rule; the
// difference between the two estimates is the reported error.  Rules for
// dimension >= 5 are randomized antithetic orthonormal shells grouped into
// batches, with three standard errors of the batch means as the error.
//
// Circle rules are composite Gauss panels that can be aligned to a body's
// corner directions so that piecewise-smooth integrands stay smooth per
// panel.  All rules in dimensions 3 and 4 place panel boundaries on the
// coordinate planes, where the catalog bodies keep their non-smooth sets.

#include "geomtomo/bodies.hpp"
#include "geomtomo/numerics.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace geomtomo {

struct QuadratureRule {
    int dim = 0;                       // ambient dimension of the nodes
    std::vector<Vec> nodes;            // unit vectors
    std::vector<double> weights;       // sum to the total sphere area
    std::vector<Vec> coarse_nodes;     // companion rule (deterministic only)
    std::vector<double> coarse_weights;
    bool stochastic = false;
    int batches = 1;                   // stochastic: node count is a multiple
    std::uint64_t seed = 0;
};

struct IntegralResult {
    double value = 0;
    double error = 0;   // rule-difference bound or 3 SE for stochastic rules
};

// rule over the full unit sphere in R^n; `splits` are extra panel boundary
// angles for n = 2 (radians); seed only matters for n >= 5
QuadratureRule sphere_rule(int n, int level, std::uint64_t seed = 0,
                           const std::vector<double>& splits = {});

// sphere rule whose polar axis is aligned with the unit vector `pole`, with
// panel boundaries on the equator; integrands with a crease on the great
// sphere orthogonal to `pole` (such as |<pole, u>| factors) stay smooth per
// panel.  grade > 1 concentrates nodes toward the equator through the map
// z = xi^grade, taming algebraic singularities z^a with small a (densities
// like <x,w>_+^a near their zero set).  Deterministic dimensions only.
QuadratureRule sphere_rule_about(const Vec& pole, int level, double grade = 1.0);

// rule over the unit sphere of the frame's subspace, with nodes lifted to
// ambient coordinates; k = 1 gives the two-point counting rule; a nonempty
// `chart_pole` (chart coordinates, unit) requests a pole-aligned, optionally
// graded chart rule
QuadratureRule subsphere_rule(const Frame& frame, int level, std::uint64_t seed = 0,
                              const std::vector<double>& splits = {},
                              const Vec& chart_pole = {}, double grade = 1.0);

// Gauss nodes on [0,1] for radial profiles; count is 8 * 2^(level-1)
void radial_rule(int level, std::vector<double>& nodes, std::vector<double>& weights);

// random orthonormal k-frame in R^n (Gaussian matrix + orthonormalization)
std::vector<Vec> grassmann_frame(Rng& rng, int n, int k);

IntegralResult integrate(const QuadratureRule& rule,
                         const std::function<double(const Vec&)>& f);

}  // namespace geomtomo
