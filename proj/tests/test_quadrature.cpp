#include "geomtomo/quadrature.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace geomtomo;

namespace {
const double kPi = std::acos(-1.0);

double node_sum(const QuadratureRule& r) {
    return pairwise_sum(r.weights);
}
}  // namespace

TEST_CASE("sphere rules integrate constants to the sphere area") {
    for (int n : {2, 3, 4}) {
        for (int level : {1, 2, 3}) {
            QuadratureRule rule = sphere_rule(n, level);
            CHECK(node_sum(rule) == doctest::Approx(sphere_area(n)).epsilon(1e-12));
            for (const auto& u : rule.nodes)
                CHECK(norm(u) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(*std::min_element(rule.weights.begin(), rule.weights.end()) > 0);
        }
    }
    auto r2 = sphere_rule(3, 2);
    auto one = integrate(r2, [](const Vec&) { return 1.0; });
    CHECK(one.value == doctest::Approx(4.0 * kPi).epsilon(1e-10));
}

TEST_CASE("first absolute moment of the sphere") {
    // integral of |<e1, u>| over S^{n-1} equals twice the unit-ball volume
    // one dimension down
    for (int n : {2, 3, 4}) {
        Vec e1(n, 0.0);
        e1[0] = 1.0;
        // the pole-aligned rule puts panel boundaries on the kink
        QuadratureRule rule = sphere_rule_about(e1, 3);
        auto got = integrate(rule, [&](const Vec& u) { return std::abs(u[0]); });
        CHECK(got.value == doctest::Approx(2.0 * unit_ball_volume(n - 1)).epsilon(1e-8));
    }
    // stochastic high dimension: within the reported three standard errors
    QuadratureRule r5 = sphere_rule(5, 3, 777);
    auto got = integrate(r5, [](const Vec& u) { return std::abs(u[0]); });
    CHECK(std::abs(got.value - 2.0 * unit_ball_volume(4)) <= got.error + 1e-12);
}

TEST_CASE("odd integrands cancel by antithetic symmetry") {
    for (int n : {2, 3, 4, 5}) {
        QuadratureRule rule = sphere_rule(n, 2, 31);
        auto got = integrate(rule, [](const Vec& u) { return u[0]; });
        CHECK(std::abs(got.value) < 1e-13);
    }
}

TEST_CASE("pole-aligned rules handle crease integrands") {
    Vec pole = normalized({1, 1, 1});
    QuadratureRule rule = sphere_rule_about(pole, 3);
    CHECK(node_sum(rule) == doctest::Approx(sphere_area(3)).epsilon(1e-12));
    auto got = integrate(rule, [&](const Vec& u) { return std::abs(dot(pole, u)); });
    CHECK(got.value == doctest::Approx(2.0 * kPi).epsilon(1e-10));
    QuadratureRule graded = sphere_rule_about(pole, 3, 3.0);
    CHECK(node_sum(graded) == doctest::Approx(sphere_area(3)).epsilon(1e-10));
}

TEST_CASE("subsphere rules cover the equator sphere") {
    Frame f3 = Frame::hyperplane(normalized({0.3, -0.2, 0.93}));
    QuadratureRule r3 = subsphere_rule(f3, 3);
    CHECK(node_sum(r3) == doctest::Approx(2.0 * kPi).epsilon(1e-10));
    for (const auto& u : r3.nodes) {
        CHECK(norm(u) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(dot(u, f3.normal)) < 1e-12);
    }

    Frame f4 = Frame::hyperplane(normalized({0.5, 0.5, 0.5, 0.5}));
    CHECK(node_sum(subsphere_rule(f4, 2)) == doctest::Approx(4.0 * kPi).epsilon(1e-10));

    // polar slice formula for the ball: the section area comes out of the
    // equator integral of rho^{n-1}/(n-1)
    auto section = integrate(r3, [](const Vec&) { return 1.0 / 2.0; });
    CHECK(section.value == doctest::Approx(kPi).epsilon(1e-10));
}

TEST_CASE("radial rules integrate monomials") {
    std::vector<double> t, w;
    radial_rule(3, t, w);
    CHECK(t.size() == 32);
    for (int n : {1, 2, 5, 30}) {
        double acc = 0;
        for (std::size_t i = 0; i < t.size(); i++) acc += w[i] * std::pow(t[i], n - 1);
        CHECK(acc == doctest::Approx(1.0 / n).epsilon(1e-13));
    }
    double mass = 0, half = 0;
    for (std::size_t i = 0; i < t.size(); i++) {
        mass += w[i];
        half += w[i] * std::sqrt(t[i]);
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(half == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("rules are bit-reproducible") {
    for (int n : {2, 3, 4}) {
        QuadratureRule a = sphere_rule(n, 3), b = sphere_rule(n, 3);
        REQUIRE(a.nodes.size() == b.nodes.size());
        for (std::size_t i = 0; i < a.nodes.size(); i++) {
            CHECK(a.nodes[i] == b.nodes[i]);
            CHECK(a.weights[i] == b.weights[i]);
        }
    }
    QuadratureRule s1 = sphere_rule(5, 2, 42), s2 = sphere_rule(5, 2, 42);
    REQUIRE(s1.nodes.size() == s2.nodes.size());
    for (std::size_t i = 0; i < s1.nodes.size(); i++) CHECK(s1.nodes[i] == s2.nodes[i]);
    QuadratureRule s3 = sphere_rule(5, 2, 43);
    bool same = s1.nodes.size() == s3.nodes.size();
    if (same) same = std::equal(s1.nodes.begin(), s1.nodes.end(), s3.nodes.begin());
    CHECK(!same);
}

TEST_CASE("random subspace frames are orthonormal") {
    Rng rng(7);
    for (auto [n, k] : std::vector<std::pair<int, int>>{{3, 2}, {4, 2}, {5, 3}}) {
        for (int rep = 0; rep < 20; rep++) {
            auto basis = grassmann_frame(rng, n, k);
            REQUIRE((int)basis.size() == k);
            for (int i = 0; i < k; i++)
                for (int j = 0; j <= i; j++)
                    CHECK(std::abs(dot(basis[i], basis[j]) - (i == j ? 1.0 : 0.0)) < 1e-12);
        }
    }
}

TEST_CASE("hyperplane normals of random frames are uniform on the sphere") {
    // Kolmogorov-Smirnov on <normal, e1>; in three dimensions the exact
    // marginal is uniform on [-1, 1]
    Rng rng(2024);
    const int N = 500;
    std::vector<double> xs;
    for (int i = 0; i < N; i++) {
        auto basis = grassmann_frame(rng, 3, 2);
        xs.push_back(basis[0][0]);
    }
    std::sort(xs.begin(), xs.end());
    double d = 0;
    for (int i = 0; i < N; i++) {
        double cdf = (xs[i] + 1.0) / 2.0;
        d = std::max(d, std::abs(cdf - double(i + 1) / N));
        d = std::max(d, std::abs(cdf - double(i) / N));
    }
    // 1% critical value of the one-sample KS statistic
    CHECK(d < 1.63 / std::sqrt(double(N)));
}

TEST_CASE("subspace averaging identity for sphere integrals") {
    // averaging integrals over random k-subsphere slices reproduces the
    // full-sphere integral, scaled by the sphere-area ratio
    struct Probe {
        const char* name;
        std::function<double(const Vec&)> f;
    };
    std::vector<Probe> probes = {{"constant", [](const Vec&) { return 1.0; }},
                                 {"square", [](const Vec& u) { return u[0] * u[0]; }},
                                 {"abs", [](const Vec& u) { return std::abs(u[0]); }}};
    for (auto [n, k] : std::vector<std::pair<int, int>>{{3, 2}, {4, 2}, {4, 3}, {5, 3}}) {
        QuadratureRule whole = sphere_rule(n, 3, 5);
        Rng rng(900 + n * 10 + k);
        for (const auto& probe : probes) {
            CAPTURE(n);
            CAPTURE(k);
            CAPTURE(probe.name);
            auto full = integrate(whole, probe.f);
            double target = full.value * sphere_area(k) / sphere_area(n);
            const int frames = 160;
            double acc = 0, acc2 = 0;
            for (int i = 0; i < frames; i++) {
                Frame f = Frame::subspace(n, grassmann_frame(rng, n, k));
                auto part = integrate(subsphere_rule(f, 2), probe.f);
                acc += part.value;
                acc2 += part.value * part.value;
            }
            double mean = acc / frames;
            double var = std::max(0.0, acc2 / frames - mean * mean);
            double se = std::sqrt(var / frames);
            CHECK(std::abs(mean - target) <= 3.0 * se + full.error + 1e-9);
        }
    }
}
