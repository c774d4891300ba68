#pragma once
/** \file   numerics.hpp
    \brief  small dense linear algebra, Gauss rules, special functions and
            a reproducible RNG shared by the rest of the library

    Everything here is desk-scale: vectors live in dimension <= 8 or so and
    matrices are tiny, so plain std::vector<double> with free functions wins
    over a heavier linear-algebra dependency.
*/
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace geomtomo {

using Vec = std::vector<double>;

// ---- elementary vector operations -------------------------------------

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
Vec normalized(const Vec& a);                 // throws std::domain_error on ~0
Vec scaled(const Vec& a, double s);
Vec sum(const Vec& a, const Vec& b);
Vec diff(const Vec& a, const Vec& b);
void axpy(double s, const Vec& x, Vec& y);    // y += s*x

/// numerically stable sum with a fixed (input-order) pairwise reduction;
/// results are bit-reproducible for a given input sequence
double pairwise_sum(std::span<const double> v);

/// Gram-Schmidt with re-orthogonalization; returns an orthonormal set
/// spanning the input vectors, throws std::invalid_argument on rank loss
std::vector<Vec> orthonormalize(const std::vector<Vec>& v);

/// complete the orthonormal set `basis` (possibly empty) to an orthonormal
/// basis of R^n, deterministically
std::vector<Vec> complete_basis(const std::vector<Vec>& basis, int n);

/// solve A x = b for small n (Gaussian elimination, partial pivoting);
/// returns empty vector when the matrix is numerically singular
Vec solve_linear(std::vector<Vec> a, Vec b);

/// determinant of a symmetric positive definite matrix via Cholesky;
/// throws std::domain_error if the matrix is not SPD
double spd_determinant(std::vector<Vec> a);

// ---- constants of sphere geometry --------------------------------------

double unit_ball_volume(int n);    // volume of the Euclidean unit ball
double sphere_area(int n);         // surface measure of S^{n-1}, = n * volume

// ---- special functions --------------------------------------------------

/// regularized lower incomplete gamma P(a,x)
double gamma_p(double a, double x);

/// \int_0^T exp(-r^2/(2 s^2)) r^m dr in closed form
double gaussian_radial_moment(int m, double s, double T);

/// \int_{S^{n-1}} max(<u,w>,0)^alpha du for unit w (closed form via Gamma)
double cone_sphere_moment(int n, double alpha);

// ---- 1-D quadrature ------------------------------------------------------

/// Gauss-Legendre nodes and weights on [-1,1], cached per order
void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights);

/// map a Gauss-Legendre rule onto [a,b]
void gauss_legendre_on(int m, double a, double b,
                       std::vector<double>& nodes, std::vector<double>& weights);

// ---- scalar root finding / optimization ---------------------------------

/// bisection for an increasing sign change of f on [lo,hi] down to `tol`;
/// f(lo) must be <= 0 <= f(hi)
double bisect_root(const std::function<double(double)>& f,
                   double lo, double hi, double tol);

/// golden-section maximizer of a unimodal function on [lo,hi]
double golden_max(const std::function<double(double)>& f,
                  double lo, double hi, double tol);

// ---- RNG -----------------------------------------------------------------

/// seeded RNG with a hand-rolled Box-Muller normal so that streams are
/// identical across standard library implementations
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed), base_(seed) {}

    double uniform();                    // [0,1)
    double uniform(double a, double b);
    double normal();
    Vec gaussian_vector(int n);
    Vec sphere_point(int n);             // uniform on S^{n-1}

    /// derive an independent, reproducible child seed for sub-task `index`
    std::uint64_t child_seed(std::uint64_t index) const;

private:
    std::mt19937_64 gen_;
    std::uint64_t base_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// ---- hashing --------------------------------------------------------------

/// FNV-1a over a byte string, used for input digests in reports
std::uint64_t fnv1a(std::span<const unsigned char> bytes);
std::string digest_hex(std::uint64_t h);

}  // namespace geomtomo
