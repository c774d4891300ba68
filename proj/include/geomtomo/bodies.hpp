#pragma once
/** \file   bodies.hpp
    \brief  the convex/star body catalog: radial and support functions,
            boundary elements, radii, John normalization, facet data

    All bodies contain the origin in their interior. Directions passed to
    radial/support/boundary_element must be unit vectors (tolerance 1e-10);
    anything else is an input error, not silently normalized.
*/
#include "geomtomo/numerics.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace geomtomo {

enum class BodyKind { ball, ellipsoid, lp_ball, box, cross_polytope, h_polytope };

std::string to_string(BodyKind k);

/// raised by boundary_element when the direction hits a ridge/vertex of a
/// polytopal body; callers perturb the direction and retry
class RidgeHit : public std::runtime_error {
public:
    explicit RidgeHit(const std::string& what) : std::runtime_error(what) {}
};

struct BodySpec {
    BodyKind kind = BodyKind::ball;
    int dim = 0;
    double radius = 1.0;            // ball
    Vec semi_axes;                  // ellipsoid
    double p = 2.0;                 // lp_ball exponent, may be INFINITY
    double scale = 1.0;             // lp_ball / cross_polytope
    Vec half_widths;                // box
    std::vector<Vec> normals;       // h_polytope rows (stored unit length)
    Vec offsets;                    // h_polytope, all > 0 (origin interior)

    bool symmetric() const;
    bool smooth() const;

    static BodySpec ball(int n, double r);
    static BodySpec ellipsoid(Vec semi_axes);
    static BodySpec lp_ball(int n, double p, double scale);
    static BodySpec box(Vec half_widths);
    static BodySpec cross_polytope(int n, double scale);
    static BodySpec h_polytope(std::vector<Vec> normals, Vec offsets);

    std::string to_json() const;
    static BodySpec from_json(const std::string& text);
};

/// orthonormal frame of a k-dimensional subspace; for k = n-1 the unit
/// normal is carried alongside the tangent basis
struct Frame {
    int dim = 0;
    int k = 0;
    std::vector<Vec> basis;      // k orthonormal vectors
    Vec normal;                  // nonempty iff k == dim-1

    /// hyperplane through the origin orthogonal to `theta` (unit)
    static Frame hyperplane(const Vec& theta);
    /// span of the given vectors, orthonormalized; throws on rank loss
    static Frame subspace(int dim, const std::vector<Vec>& span);

    /// lift coordinates in the subspace to an ambient vector
    Vec lift(std::span<const double> coords) const;
};

// ---- pointwise geometry ---------------------------------------------------

double radial(const BodySpec& body, const Vec& u);
double support(const BodySpec& body, const Vec& u);

/// gauge (Minkowski functional) ||x||_K; zero at the origin
double gauge(const BodySpec& body, const Vec& x);

/// a boundary point maximizing <u,x> over the body
Vec support_point(const BodySpec& body, const Vec& u);

struct BoundaryElement {
    Vec point;        // rho(u) u
    Vec normal;       // outer unit normal there
    double jacobian;  // area element of the radial graph parametrization
};

/// boundary data at direction u via the radial parametrization; analytic
/// spherical gradients for the whole catalog, with a central-difference
/// tangent-chart fallback (step 1e-5) kept for cross-checking
BoundaryElement boundary_element(const BodySpec& body, const Vec& u);
BoundaryElement boundary_element_fd(const BodySpec& body, const Vec& u);

struct Radii {
    double inradius = 0;       // min of the radial function (centered)
    double circumradius = 0;   // max of the radial function
};

Radii radii(const BodySpec& body);

/// affinely normalize a symmetric catalog body so its John ellipsoid is the
/// unit ball; h_polytopes are not supported (general John position solver
/// is out of scope)
BodySpec john_normalize(const BodySpec& body);

BodySpec dilate(const BodySpec& body, double t);

/// closed-form volume where the catalog has one (h_polytope: n<=3 only)
std::optional<double> analytic_volume(const BodySpec& body);

// ---- polytope combinatorics ------------------------------------------------

/// vertices of a polytopal body; exact for box/cross_polytope (any n) and
/// h_polytope (n<=4); empty for smooth kinds
std::vector<Vec> vertex_enumeration(const BodySpec& body);

struct Facet {
    Vec unit_normal;
    double offset = 0;             // <normal, x> = offset on the facet
    double area = 0;
    std::vector<Vec> vertices;     // ordered boundary for n<=3 polygons
};

/// exact facet decomposition: box/cross_polytope for n<=4, h_polytope for
/// n<=3; empty optional for smooth kinds or unsupported dimensions
std::optional<std::vector<Facet>> facet_decomposition(const BodySpec& body);

/// quadrature nodes over one facet with weights summing to its area;
/// `order` is the tensor Gauss order per coordinate
void facet_quadrature(const Facet& facet, int order,
                      std::vector<Vec>& points, std::vector<double>& weights);

/// corner directions of a 2-D polytopal body, as angles in [0, 2pi);
/// empty when the boundary is smooth (used to align circle-rule panels)
std::vector<double> corner_angles(const BodySpec& body);

// ---- metric helpers ---------------------------------------------------------

/// Euclidean distance from x to the body; exact nearest-point maps exist for
/// ball/box/ellipsoid/cross_polytope, other kinds throw std::invalid_argument
double distance_to_body(const BodySpec& body, const Vec& x);

/// the slice body `K intersect span(frame)` in chart coordinates: balls
/// restrict to balls, polytopal kinds to h_polytopes (chart dim 2 or 3);
/// nullopt when no catalog kind represents the slice (smooth non-ball kinds)
std::optional<BodySpec> restrict_to_subspace(const BodySpec& body, const Frame& frame);

}  // namespace geomtomo
