#include "geomtomo/numerics.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numeric>

using namespace geomtomo;

TEST_CASE("pairwise sum is stable and order-fixed") {
    std::vector<double> v(1000000, 0.1);
    CHECK(pairwise_sum(v) == doctest::Approx(100000.0).epsilon(1e-13));
    CHECK(pairwise_sum(v) == pairwise_sum(v));
    std::vector<double> w(1000, 0.1);
    CHECK(pairwise_sum(w) == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
    CHECK(pairwise_sum(std::vector<double>{3.5}) == 3.5);
}

TEST_CASE("unit ball volumes and sphere areas") {
    const double pi = std::acos(-1.0);
    CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(unit_ball_volume(2) == doctest::Approx(pi).epsilon(1e-14));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-14));
    CHECK(unit_ball_volume(4) == doctest::Approx(pi * pi / 2.0).epsilon(1e-14));
    for (int n = 1; n <= 8; n++)
        CHECK(sphere_area(n) == doctest::Approx(n * unit_ball_volume(n)).epsilon(1e-14));
}

TEST_CASE("orthonormalize and complete_basis give orthonormal frames") {
    std::vector<Vec> v = {{1, 1, 0}, {1, 0, 1}};
    auto q = orthonormalize(v);
    REQUIRE(q.size() == 2);
    CHECK(std::abs(dot(q[0], q[0]) - 1) < 1e-14);
    CHECK(std::abs(dot(q[1], q[1]) - 1) < 1e-14);
    CHECK(std::abs(dot(q[0], q[1])) < 1e-13);
    auto full = complete_basis(q, 3);
    REQUIRE(full.size() == 3);
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < i; j++) CHECK(std::abs(dot(full[i], full[j])) < 1e-12);
    CHECK_THROWS_AS(orthonormalize({{1, 0}, {2, 0}}), std::invalid_argument);
}

TEST_CASE("linear solve and SPD determinant") {
    std::vector<Vec> a = {{2, 1}, {1, 3}};
    Vec x = solve_linear(a, {5, 10});
    REQUIRE(x.size() == 2);
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(spd_determinant({{2, 1}, {1, 3}}) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK_THROWS_AS(spd_determinant({{1, 2}, {2, 1}}), std::domain_error);
}

TEST_CASE("incomplete gamma and gaussian radial moments") {
    CHECK(gamma_p(1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK(gamma_p(0.5, 100.0) == doctest::Approx(1.0).epsilon(1e-10));
    // m = 0: int_0^T exp(-r^2/2) dr with s = 1 against erf
    double T = 1.3;
    double expect = std::sqrt(std::acos(-1.0) / 2.0) * std::erf(T / std::sqrt(2.0));
    CHECK(gaussian_radial_moment(0, 1.0, T) == doctest::Approx(expect).epsilon(1e-12));
    // m = 1: closed form 1 - exp(-T^2/2)
    CHECK(gaussian_radial_moment(1, 1.0, T) ==
          doctest::Approx(1.0 - std::exp(-T * T / 2.0)).epsilon(1e-12));
}

TEST_CASE("cone sphere moment matches 2-D closed form") {
    // n = 2, alpha = 1: integral of cos_+ over the circle = 2
    CHECK(cone_sphere_moment(2, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
    // n = 3, alpha = 1: 2 pi int_0^1 t dt = pi
    CHECK(cone_sphere_moment(3, 1.0) == doctest::Approx(std::acos(-1.0)).epsilon(1e-12));
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    std::vector<double> t, w;
    gauss_legendre(8, t, w);
    double acc = 0;
    for (std::size_t i = 0; i < t.size(); i++) acc += w[i] * std::pow(t[i], 10);
    CHECK(acc == doctest::Approx(2.0 / 11.0).epsilon(1e-13));
    gauss_legendre_on(8, 0.0, 1.0, t, w);
    acc = 0;
    for (std::size_t i = 0; i < t.size(); i++) acc += w[i] * t[i] * t[i];
    CHECK(acc == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("root finding and golden section") {
    double r = bisect_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-12);
    CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    double m = golden_max([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-10);
    CHECK(m == doctest::Approx(0.3).epsilon(1e-7));
}

TEST_CASE("rng reproduces streams and child seeds are stable") {
    Rng a(99), b(99);
    for (int i = 0; i < 100; i++) CHECK(a.uniform() == b.uniform());
    CHECK(a.normal() == b.normal());
    Rng c(99);
    CHECK(c.child_seed(3) == Rng(99).child_seed(3));
    CHECK(c.child_seed(3) != c.child_seed(4));
    Vec u = a.sphere_point(5);
    CHECK(norm(u) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rng normal moments are sane") {
    Rng rng(7);
    double s = 0, s2 = 0;
    const int N = 200000;
    for (int i = 0; i < N; i++) {
        double x = rng.normal();
        s += x;
        s2 += x * x;
    }
    CHECK(std::abs(s / N) < 0.01);
    CHECK(s2 / N == doctest::Approx(1.0).epsilon(0.02));
}
