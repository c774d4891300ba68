#pragma once

// Geometric functionals of catalog bodies against catalog measures: masses,
// central sections, shadows, weighted projections, mixed measures, widths
// and related scalar quantities.
//
// Every functional returns a FunctionalValue carrying the computed number,
// an estimated absolute numerical error and the evaluation path that was
// taken.  Closed forms are used when the catalog has them; otherwise exact
// facet decompositions (polytopal kinds) or radial-graph quadrature (smooth
// kinds) are used, with rule-difference error estimates.

#include "geomtomo/bodies.hpp"
#include "geomtomo/measures.hpp"
#include "geomtomo/quadrature.hpp"

#include <functional>
#include <string>
#include <vector>

namespace geomtomo {

enum class Method {
    analytic,
    facet_sum,
    radial_quadrature,
    boundary_quadrature,
    hull_projection,
    finite_difference,
    monte_carlo,
};

std::string to_string(Method m);

struct FunctionalValue {
    double value = 0;
    double error = 0;   // estimated absolute numerical error
    Method method = Method::analytic;
};

struct ComputeOptions {
    int level = 3;                 // quadrature refinement level
    std::uint64_t seed = 1234;     // stochastic paths only
    bool allow_analytic = true;    // false forces numeric paths (cross-checks)
    int facet_order = 12;          // Gauss order per facet coordinate
};

// ---- boundary quadrature -----------------------------------------------------

struct BoundarySample {
    Vec point;
    Vec normal;
    double weight;   // includes the area element
};

struct BoundaryQuadrature {
    std::vector<BoundarySample> fine, coarse;
    Method method = Method::boundary_quadrature;
};

// boundary rule: exact facet quadrature for polytopal kinds, radial-graph
// quadrature otherwise; `pole`/`grade` select an aligned spherical rule for
// integrands with a crease or algebraic singularity on a known great sphere
BoundaryQuadrature boundary_quadrature(const BodySpec& body, const ComputeOptions& opt,
                                       const Vec& pole = {}, double grade = 1.0);

// integral over the boundary of f(point, outer unit normal)
FunctionalValue surface_integral(const BodySpec& body,
                                 const std::function<double(const Vec&, const Vec&)>& f,
                                 const ComputeOptions& opt, const Vec& pole = {},
                                 double grade = 1.0);

// ---- masses and sections -----------------------------------------------------

// mu(K)
FunctionalValue body_measure(const BodySpec& body, const MeasureSpec& mu,
                             const ComputeOptions& opt);

// (n-1)-dimensional mass of the central hyperplane section K ∩ theta^perp
FunctionalValue section_measure(const BodySpec& body, const MeasureSpec& mu,
                                const Vec& theta, const ComputeOptions& opt);

// k-dimensional mass of the central slice K ∩ span(frame)
FunctionalValue subspace_measure(const BodySpec& body, const MeasureSpec& mu,
                                 const Frame& frame, const ComputeOptions& opt);

// ---- shadows -------------------------------------------------------------------

// (n-1)-volume of the orthogonal shadow K | theta^perp
FunctionalValue projection_area(const BodySpec& body, const Vec& theta,
                                const ComputeOptions& opt);

// k-volume of the shadow K | span(frame); polytopes project their vertices,
// smooth bodies project support points, hulls are taken in the chart
FunctionalValue subspace_projection_volume(const BodySpec& body, const Frame& frame,
                                           const ComputeOptions& opt);

// ---- weighted projection functionals -------------------------------------------

// P_{mu,K}(theta): the dilation-averaged weighted shadow area, i.e. the
// integral over t in [0,1] of (n/2) * int_{bd(tK)} |<theta,nu>| g dH^{n-1}
FunctionalValue mu_projection(const BodySpec& body, const MeasureSpec& mu,
                              const Vec& theta, const ComputeOptions& opt);

// cached evaluator of theta -> P_{mu,K}(theta): the radial/facet layer and
// the measure profile along each ray are collapsed into one coefficient per
// boundary node, so each direction costs one pass of dot products
class MuProjector {
  public:
    MuProjector(const BodySpec& body, const MeasureSpec& mu, const ComputeOptions& opt);
    FunctionalValue operator()(const Vec& theta) const;
    int dim() const { return dim_; }

  private:
    struct Layer {
        std::vector<Vec> normals;
        std::vector<double> coeffs;
    };
    double collapse(const Layer& layer, const Vec& theta) const;
    int dim_;
    Layer fine_, coarse_;
};

// ---- Minkowski sums and mixed measures ------------------------------------------

// summand for Minkowski additions K + A
struct Addend {
    enum class Kind { ball, segment, homothet };
    Kind kind = Kind::ball;
    double radius = 0;        // ball
    Vec direction;            // segment axis (unit)
    double half_length = 0;   // segment reaches +- half_length * direction
    double factor = 0;        // homothet: A = factor * K

    static Addend ball(double radius);
    static Addend segment(Vec direction, double half_length);
    static Addend homothet(double factor);

    Addend scaled_by(double t) const;
    double support(const BodySpec& base, const Vec& normal) const;
};

// mu(K + A); exact family reductions where the sum stays in the catalog,
// otherwise radial bisection on a membership oracle (ball addends need
// base kinds with an exact distance map)
FunctionalValue sum_body_measure(const BodySpec& base, const Addend& addend,
                                 const MeasureSpec& mu, const ComputeOptions& opt);

enum class MixedMethod { boundary, finite_difference };

// first mixed mass mu_1(K; A) = lim (mu(K + eps A) - mu(K)) / eps, computed
// either as the boundary integral of h_A(nu) g or by Richardson-extrapolated
// finite differences of eps -> mu(K + eps A)
FunctionalValue mixed_measure(const BodySpec& body, const Addend& addend,
                              const MeasureSpec& mu, const ComputeOptions& opt,
                              MixedMethod method = MixedMethod::boundary);

// ---- scalar geometry -------------------------------------------------------------

FunctionalValue surface_area(const BodySpec& body, const ComputeOptions& opt);

// average of the support function over the unit sphere
FunctionalValue mean_width(const BodySpec& body, const ComputeOptions& opt);

// isotropic constant of an origin-symmetric catalog body by rejection Monte
// Carlo from the support box: the common covariance diagonal of the affine
// volume-one image, det(Cov)^(1/n) / vol(K)^(2/n); pass sqrt_normalization
// for the square-root convention used by much of the literature
FunctionalValue isotropic_constant(const BodySpec& body, const ComputeOptions& opt,
                                   bool sqrt_normalization = false);

// masses of the parallel slices K ∩ {<x,theta> = t} for each offset t in
// [0, support(theta)); slice centers ride the chord toward the support point
std::vector<FunctionalValue> parallel_section_profile(const BodySpec& body,
                                                      const MeasureSpec& mu,
                                                      const Vec& theta,
                                                      const std::vector<double>& ts,
                                                      const ComputeOptions& opt);

// ---- hulls (chart coordinates; also used as independent test oracles) -----------

double hull_area_2d(std::vector<Vec> points);
double hull_volume_3d(const std::vector<Vec>& points);

}  // namespace geomtomo
