#include "geomtomo/bodies.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace geomtomo;

namespace {
const double kPi = std::acos(-1.0);

Vec unit(std::initializer_list<double> xs) { return normalized(Vec(xs)); }
}  // namespace

TEST_CASE("radial function of catalog kinds") {
    CHECK(radial(BodySpec::ball(3, 1.0), unit({0, 1, 0})) == 1.0);
    CHECK(radial(BodySpec::box({1, 1, 1}), unit({1, 1, 1})) ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(radial(BodySpec::ellipsoid({1, 2}), unit({0, 1})) ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK(radial(BodySpec::cross_polytope(3, 1.0), unit({1, 1, 1})) ==
          doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK_THROWS(radial(BodySpec::ball(3, 1.0), Vec{2, 0, 0}));
}

TEST_CASE("support function of catalog kinds") {
    CHECK(support(BodySpec::box({1, 1, 1}), unit({1, 1, 1})) ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(support(BodySpec::ball(2, 2.0), unit({0.6, 0.8})) ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK(support(BodySpec::ellipsoid({1, 2}), unit({1, 0})) ==
          doctest::Approx(1.0).epsilon(1e-14));
    // lp dual norm: p = 1 gives the max norm
    CHECK(support(BodySpec::lp_ball(2, 1.0, 1.0), unit({1, 0})) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("h_polytope radial and support by facet arithmetic") {
    // centered square as an h-polytope
    BodySpec sq = BodySpec::h_polytope({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {1, 1, 1, 1});
    CHECK(radial(sq, unit({1, 0})) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(radial(sq, unit({1, 1})) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(support(sq, unit({1, 1})) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("boundary element on smooth points and facet interiors") {
    Vec u = unit({0.3, -0.5, 0.9});
    auto be = boundary_element(BodySpec::ball(3, 1.0), u);
    for (int i = 0; i < 3; i++) {
        CHECK(be.point[i] == doctest::Approx(u[i]).epsilon(1e-12));
        CHECK(be.normal[i] == doctest::Approx(u[i]).epsilon(1e-12));
    }
    CHECK(be.jacobian == doctest::Approx(1.0).epsilon(1e-12));

    auto be2 = boundary_element(BodySpec::ball(3, 2.0), u);
    CHECK(be2.jacobian == doctest::Approx(4.0).epsilon(1e-12));

    auto bf = boundary_element(BodySpec::box({1, 1, 1}), Vec{0, 0, 1});
    CHECK(bf.point[2] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bf.normal[2] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bf.jacobian == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(boundary_element(BodySpec::box({1, 1, 1}), unit({1, 1, 0})), RidgeHit);
}

TEST_CASE("finite difference boundary element agrees with the analytic path") {
    Rng rng(11);
    for (const auto& b : {BodySpec::ellipsoid({1, 2, 3}), BodySpec::lp_ball(3, 4.0, 1.0)}) {
        for (int i = 0; i < 20; i++) {
            Vec u = rng.sphere_point(3);
            auto a = boundary_element(b, u);
            auto f = boundary_element_fd(b, u);
            CHECK(std::abs(a.jacobian - f.jacobian) < 1e-4 * (1 + a.jacobian));
            for (int d = 0; d < 3; d++) CHECK(std::abs(a.normal[d] - f.normal[d]) < 1e-5);
        }
    }
}

TEST_CASE("radii of catalog kinds") {
    for (int n : {2, 3, 4}) {
        Radii rb = radii(BodySpec::box(Vec(n, 1.0)));
        CHECK(rb.inradius == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(rb.circumradius == doctest::Approx(std::sqrt(double(n))).epsilon(1e-10));
        Radii rc = radii(BodySpec::cross_polytope(n, 1.0));
        CHECK(rc.inradius == doctest::Approx(1.0 / std::sqrt(double(n))).epsilon(1e-10));
        CHECK(rc.circumradius == doctest::Approx(1.0).epsilon(1e-10));
    }
    Radii re = radii(BodySpec::ellipsoid({1, 2}));
    CHECK(re.inradius == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(re.circumradius == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("radial values sit between the radii") {
    Rng rng(5);
    for (const auto& b : {BodySpec::box({1, 0.5, 2}), BodySpec::ellipsoid({0.7, 1.1, 3}),
                          BodySpec::lp_ball(3, 3.0, 1.2), BodySpec::cross_polytope(3, 2.0)}) {
        Radii r = radii(b);
        for (int i = 0; i < 300; i++) {
            double rho = radial(b, rng.sphere_point(3));
            CHECK(rho >= r.inradius - 1e-9);
            CHECK(rho <= r.circumradius + 1e-9);
        }
    }
}

TEST_CASE("radial never exceeds support and the support identity holds") {
    Rng rng(17);
    for (const auto& b : {BodySpec::ball(3, 1.5), BodySpec::box({1, 2, 0.5}),
                          BodySpec::ellipsoid({1, 2, 3}), BodySpec::lp_ball(3, 3.0, 1.0),
                          BodySpec::cross_polytope(3, 1.0)}) {
        for (int i = 0; i < 1000; i++) {
            Vec u = rng.sphere_point(3);
            CHECK(radial(b, u) <= support(b, u) + 1e-10);
        }
        // first-order identity: the boundary point supports the body at its
        // own outer normal
        for (int i = 0; i < 200; i++) {
            Vec u = rng.sphere_point(3);
            try {
                auto be = boundary_element(b, u);
                CHECK(std::abs(dot(be.normal, be.point) - support(b, be.normal)) < 1e-8);
            } catch (const RidgeHit&) {
                continue;
            }
        }
    }
}

TEST_CASE("john normalization returns inradius-one bodies") {
    BodySpec b1 = john_normalize(BodySpec::box({2, 2, 2}));
    CHECK(b1.kind == BodyKind::box);
    for (double w : b1.half_widths) CHECK(w == doctest::Approx(1.0).epsilon(1e-14));

    BodySpec b2 = john_normalize(BodySpec::ball(3, 3.0));
    CHECK(b2.radius == doctest::Approx(1.0).epsilon(1e-14));

    BodySpec b3 = john_normalize(BodySpec::cross_polytope(2, 1.0));
    CHECK(b3.scale == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    for (const auto& b : {BodySpec::box({0.4, 3, 1}), BodySpec::ellipsoid({2, 5, 3}),
                          BodySpec::cross_polytope(3, 0.7), BodySpec::lp_ball(3, 3.0, 2.0)}) {
        CHECK(radii(john_normalize(b)).inradius == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("dilation scales radial functions and radii linearly") {
    BodySpec b = dilate(BodySpec::ball(3, 1.0), 2.0);
    CHECK(b.radius == doctest::Approx(2.0).epsilon(1e-14));
    BodySpec bx = dilate(BodySpec::box({1, 1}), 0.5);
    CHECK(bx.half_widths[0] == doctest::Approx(0.5).epsilon(1e-14));

    Rng rng(23);
    for (const auto& body : {BodySpec::ellipsoid({1, 2, 3}), BodySpec::cross_polytope(3, 1.0)}) {
        BodySpec big = dilate(body, 1.7);
        for (int i = 0; i < 100; i++) {
            Vec u = rng.sphere_point(3);
            CHECK(radial(big, u) == doctest::Approx(1.7 * radial(body, u)).epsilon(1e-12));
        }
        Radii r0 = radii(body), r1 = radii(big);
        CHECK(r1.inradius == doctest::Approx(1.7 * r0.inradius).epsilon(1e-9));
        CHECK(r1.circumradius == doctest::Approx(1.7 * r0.circumradius).epsilon(1e-9));
    }
}

TEST_CASE("vertex enumeration and facet decomposition of polytopes") {
    CHECK(vertex_enumeration(BodySpec::box({1, 1, 1})).size() == 8);
    CHECK(vertex_enumeration(BodySpec::cross_polytope(3, 1.0)).size() == 6);
    CHECK(vertex_enumeration(BodySpec::ball(3, 1.0)).empty());

    auto facets = facet_decomposition(BodySpec::box({1, 1, 1}));
    REQUIRE(facets.has_value());
    CHECK(facets->size() == 6);
    double total = 0;
    for (const auto& f : *facets) total += f.area;
    CHECK(total == doctest::Approx(24.0).epsilon(1e-12));

    auto cross = facet_decomposition(BodySpec::cross_polytope(3, 1.0));
    REQUIRE(cross.has_value());
    CHECK(cross->size() == 8);
    // each facet is a triangle of area sqrt(3)/2
    for (const auto& f : *cross) CHECK(f.area == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));

    // 4-D box facets carry a tensor quadrature that integrates affine
    // functions exactly
    auto f4 = facet_decomposition(BodySpec::box({1, 2, 0.5, 1.5}));
    REQUIRE(f4.has_value());
    CHECK(f4->size() == 8);
    std::vector<Vec> pts;
    std::vector<double> wts;
    facet_quadrature(f4->front(), 4, pts, wts);
    double mass = 0, lin = 0;
    for (std::size_t i = 0; i < pts.size(); i++) {
        mass += wts[i];
        lin += wts[i] * (pts[i][1] + 2 * pts[i][2]);
    }
    CHECK(mass == doctest::Approx(f4->front().area).epsilon(1e-12));
    CHECK(lin == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("frames lift orthonormal coordinates") {
    Frame h = Frame::hyperplane(unit({1, 1, 1}));
    CHECK(h.k == 2);
    REQUIRE(h.normal.size() == 3);
    for (const auto& b : h.basis) {
        CHECK(std::abs(dot(b, h.normal)) < 1e-12);
        CHECK(norm(b) == doctest::Approx(1.0).epsilon(1e-12));
    }
    Frame s = Frame::subspace(4, {{1, 0, 0, 0}, {0, 1, 1, 0}});
    CHECK(s.k == 2);
    Vec x = s.lift(std::vector<double>{1.0, 2.0});
    CHECK(norm(x) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("subspace restriction preserves the radial function") {
    Rng rng(31);
    for (const auto& b : {BodySpec::box({1, 2, 1.5}), BodySpec::cross_polytope(3, 1.0),
                          BodySpec::ball(3, 1.3)}) {
        Frame f = Frame::hyperplane(rng.sphere_point(3));
        auto slice = restrict_to_subspace(b, f);
        REQUIRE(slice.has_value());
        for (int i = 0; i < 50; i++) {
            Vec c = rng.sphere_point(2);
            Vec ambient = f.lift(c);
            CHECK(radial(*slice, c) == doctest::Approx(radial(b, ambient)).epsilon(1e-9));
        }
    }
}

TEST_CASE("distance to body matches the gauge oracle") {
    Rng rng(41);
    for (const auto& b : {BodySpec::ball(3, 1.0), BodySpec::box({1, 0.5, 2}),
                          BodySpec::cross_polytope(3, 1.0)}) {
        for (int i = 0; i < 100; i++) {
            Vec x = scaled(rng.sphere_point(3), rng.uniform(0.0, 3.0));
            double d = distance_to_body(b, x);
            CHECK(d >= -1e-12);
            if (oracles::inside(b, x)) CHECK(d == doctest::Approx(0.0).epsilon(1e-10));
            if (d > 1e-9) {
                bool outside = !oracles::inside(b, scaled(x, 1.0 - 1e-9)) ||
                               oracles::gauge(b, x) >= 1.0;
                CHECK(outside);
            }
        }
    }
}

TEST_CASE("body JSON round-trips exactly for rational parameters") {
    std::vector<BodySpec> bodies = {
        BodySpec::ball(3, 1.25), BodySpec::box({1, 0.5, 2}), BodySpec::ellipsoid({1, 2, 3}),
        BodySpec::lp_ball(3, 3.0, 1.5), BodySpec::lp_ball(2, HUGE_VAL, 1.0),
        BodySpec::cross_polytope(4, 0.75),
        BodySpec::h_polytope({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {1, 1, 2, 2})};
    for (const auto& b : bodies) {
        std::string once = b.to_json();
        CHECK(BodySpec::from_json(once).to_json() == once);
    }
    CHECK_THROWS_AS(BodySpec::from_json("{\"kind\":\"pyramid\",\"dim\":3,\"params\":{}}"),
                    std::invalid_argument);
}

TEST_CASE("corner angles cover 2-D polytope vertices") {
    auto angles = corner_angles(BodySpec::box({1, 1}));
    CHECK(angles.size() == 4);
    CHECK(corner_angles(BodySpec::ball(2, 1.0)).empty());
}
