#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "pimc/errors.hpp"
#include "pimc/potential.hpp"
#include "pimc/rng.hpp"

using namespace pimc;

TEST_CASE("coulomb values") {
    const Potential v = Potential::coulomb();
    CHECK(v.value({1, 0, 0}) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(v.value({0, 0, 2}) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK_THROWS_AS(v.value({0, 0, 0}), SingularPoint);
}

TEST_CASE("effective potential adds the repulsive core") {
    const Potential v = Potential::effective(0.5, 0.1, 1.0);
    // -1/r + A tau^2 / (M r^4) at r = 1
    CHECK(v.value({1, 0, 0}) == doctest::Approx(-0.995).epsilon(1e-15));
    CHECK(v.value({0, 0, 0}) == std::numeric_limits<double>::infinity());
}

TEST_CASE("harmonic potential") {
    const Potential v = Potential::harmonic(1.0, 1.0);
    CHECK(v.value({0, 0, 0}) == 0.0);
    CHECK(v.value({1, 0, 0}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(v.value({0, 3, 4}) == doctest::Approx(12.5).epsilon(1e-15));  // r = 5
}

TEST_CASE("free potential vanishes everywhere") {
    const Potential v = Potential::free();
    CHECK(v.value({0, 0, 0}) == 0.0);
    CHECK(v.value({17, -3, 2}) == 0.0);
}

TEST_CASE("potential construction validates parameters") {
    CHECK_THROWS_AS(Potential::harmonic(0.0, 1.0), ConfigError);
    CHECK_THROWS_AS(Potential::effective(-0.5, 0.1, 1.0), ConfigError);
    CHECK_THROWS_AS(Potential::effective(0.5, 0.0, 1.0), ConfigError);
}

TEST_CASE("effective_min_radius closed form and derivative root") {
    const double r_star = effective_min_radius(0.5, 0.1, 1.0);
    CHECK(r_star == doctest::Approx(0.2714417616594907).epsilon(1e-14));

    // independent route: the derivative 1/r^2 - 4 A tau^2/(M r^5) changes sign at r*
    const auto dV = [](double r) { return 1.0 / (r * r) - 4.0 * 0.5 * 0.01 / std::pow(r, 5); };
    CHECK(dV(r_star * 0.999) < 0.0);
    CHECK(dV(r_star * 1.001) > 0.0);
    CHECK(std::abs(dV(r_star)) < 1e-10);

    CHECK_THROWS_AS(effective_min_radius(0.25, 0.0, 1.0), ConfigError);
}

TEST_CASE("doubling tau scales the minimum radius by 2^(2/3)") {
    Rng rng(3);
    for (int k = 0; k < 50; ++k) {
        const double a = rng.uniform(0.05, 5.0);
        const double tau = rng.uniform(0.001, 2.0);
        const double m = rng.uniform(0.2, 10.0);
        const double ratio = effective_min_radius(a, 2.0 * tau, m) / effective_min_radius(a, tau, m);
        CHECK(ratio == doctest::Approx(std::cbrt(4.0)).epsilon(1e-12));
    }
}

TEST_CASE("repulsive term is invariant under (tau, r) -> (l tau, sqrt(l) r)") {
    Rng rng(4);
    for (int k = 0; k < 100; ++k) {
        const double a = rng.uniform(0.05, 5.0);
        const double tau = rng.uniform(0.001, 2.0);
        const double m = rng.uniform(0.2, 10.0);
        const double r = rng.uniform(0.05, 8.0);
        const double l = rng.uniform(0.1, 10.0);
        const auto rep = [&](double t, double rad) { return a * t * t / (m * std::pow(rad, 4)); };
        CHECK(rep(l * tau, std::sqrt(l) * r) ==
              doctest::Approx(rep(tau, r)).epsilon(1e-12));
    }
}

TEST_CASE("effective dominates coulomb and converges to it as tau -> 0") {
    const Potential coul = Potential::coulomb();
    Rng rng(5);
    for (int k = 0; k < 200; ++k) {
        const Vec3 r{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(0.05, 3)};
        const double vc = coul.value(r);
        CHECK(Potential::effective(0.5, 0.2, 1.0).value(r) > vc);
        // pointwise convergence from above
        const double v_small = Potential::effective(0.5, 1e-6, 1.0).value(r);
        CHECK(v_small == doctest::Approx(vc).epsilon(1e-9));
    }
}

TEST_CASE("all variants are rotationally invariant") {
    // rotation by 90 degrees about z plus a generic axis-angle rotation
    const auto rot = [](const Vec3& r) {
        // Rodrigues rotation about normalized (1,2,2)/3 by 0.7 rad
        const Vec3 k{1.0 / 3, 2.0 / 3, 2.0 / 3};
        const double c = std::cos(0.7), s = std::sin(0.7);
        const Vec3 kxr{k.y * r.z - k.z * r.y, k.z * r.x - k.x * r.z, k.x * r.y - k.y * r.x};
        return r * c + kxr * s + k * (dot(k, r) * (1 - c));
    };
    const Potential pots[] = {Potential::coulomb(), Potential::harmonic(1.3, 2.0),
                              Potential::effective(0.5, 0.1, 1.0), Potential::free()};
    Rng rng(6);
    for (const auto& v : pots) {
        for (int k = 0; k < 50; ++k) {
            const Vec3 r{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(0.1, 2)};
            CHECK(v.value(rot(r)) == doctest::Approx(v.value(r)).epsilon(1e-12));
        }
    }
}
