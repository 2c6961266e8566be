#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "pimc/action.hpp"
#include "pimc/errors.hpp"
#include "pimc/rng.hpp"

using namespace pimc;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Path random_path(Rng& rng, std::size_t n, double r_lo, double r_hi) {
    return make_ring_path(n, InitSpec::shell(r_lo, r_hi), rng);
}

}  // namespace

TEST_CASE("link acceleration follows the endpoint potential drop") {
    const Potential coul = Potential::coulomb();
    const Vec3 a = link_acceleration({1, 0, 0}, {2, 0, 0}, coul, 1.0);
    CHECK(a.x == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(a.y == 0.0);
    CHECK(a.z == 0.0);

    // equal potentials on a sphere: no force component
    const Vec3 b = link_acceleration({1, 0, 0}, {0, 1, 0}, coul, 1.0);
    CHECK(norm(b) == doctest::Approx(0.0));

    // degenerate link convention
    const Vec3 c = link_acceleration({1, 0, 0}, {1, 0, 0}, coul, 1.0);
    CHECK(c == Vec3{0, 0, 0});
}

TEST_CASE("link velocity") {
    const Vec3 v = link_velocity({1, 0, 0}, {2, 0, 0}, 0.1, {-0.5, 0, 0});
    CHECK(v.x == doctest::Approx(10.05).epsilon(1e-15));
    CHECK(v.y == 0.0);

    // zero acceleration reduces to dr/tau
    const Vec3 w = link_velocity({0, 0, 1}, {0, 0, 3}, 0.5, {0, 0, 0});
    CHECK(w == Vec3{0, 0, 4});

    const Vec3 s = link_velocity({1, 1, 1}, {1, 1, 1}, 0.5, {0, 0, 0});
    CHECK(s == Vec3{0, 0, 0});
}

TEST_CASE("link energy") {
    const Potential coul = Potential::coulomb();
    // v = 10.05 along x, E = v^2/2 - 1
    CHECK(link_energy({1, 0, 0}, {2, 0, 0}, 0.1, coul, 1.0) ==
          doctest::Approx(49.50125).epsilon(1e-14));
    CHECK(link_energy({1, 0, 0}, {1, 0, 0}, 0.1, coul, 1.0) ==
          doctest::Approx(-1.0).epsilon(1e-15));
    const Potential harm = Potential::harmonic(1.0, 1.0);
    CHECK(link_energy({0, 0, 0}, {0, 0, 0}, 0.1, harm, 1.0) == 0.0);
}

TEST_CASE("classical trajectory hits both endpoints and the interior point") {
    const Vec3 r_i{1, 0, 0}, r_next{2, 0, 0}, a{-0.5, 0, 0};
    CHECK(classical_trajectory(r_i, r_next, 0.1, a, 0.0) == r_i);
    CHECK(classical_trajectory(r_i, r_next, 0.1, a, 1.0) == r_next);
    const Vec3 mid = classical_trajectory(r_i, r_next, 0.1, a, 0.5);
    CHECK(mid.x == doctest::Approx(1.50125).epsilon(1e-15));
    CHECK_THROWS_AS(classical_trajectory(r_i, r_next, 0.1, a, -0.01), std::domain_error);
    CHECK_THROWS_AS(classical_trajectory(r_i, r_next, 0.1, a, 1.01), std::domain_error);
}

TEST_CASE("the interpolating motion conserves its energy") {
    // The per-link motion solves a constant force field; along it,
    // M|v(s)|^2/2 plus the (linear in position) field potential is constant.
    // With the conventions used here the field's slope across the link is
    // twice the endpoint potential difference.
    Rng rng(17);
    const Potential pots[] = {Potential::coulomb(), Potential::harmonic(1.0, 1.0)};
    for (const Potential& pot : pots) {
        for (int k = 0; k < 500; ++k) {
            const Path p = random_path(rng, 2, 0.3, 3.0);
            const Vec3 r_i = p.at(0), r_next = p.at(1);
            if (norm(r_next - r_i) < 0.05) continue;
            const double tau = rng.uniform(0.02, 0.5);

            const Vec3 accel = link_acceleration(r_i, r_next, pot, 1.0);
            const Vec3 disp = r_next - r_i;
            const double len = norm(disp);
            const Vec3 unit = disp * (1.0 / len);
            const double dv = pot.value(r_next) - pot.value(r_i);

            const double e0 = link_energy(r_i, r_next, tau, pot, 1.0);
            for (int j = 0; j <= 10; ++j) {
                const double s = 0.1 * j;
                const Vec3 v = disp * (1.0 / tau) + accel * (tau * (2.0 * s - 1.0));
                const Vec3 pos = classical_trajectory(r_i, r_next, tau, accel, s);
                const double along = dot(unit, pos - r_i);
                const double field = pot.value(r_i) + 2.0 * dv * along / len;
                const double e = 0.5 * norm2(v) + field;
                CHECK(std::abs(e - e0) <= 1e-12 * std::abs(e0));
            }
        }
    }
}

TEST_CASE("squared velocity splits into its three terms") {
    Rng rng(23);
    const Potential coul = Potential::coulomb();
    for (int k = 0; k < 300; ++k) {
        const Path p = random_path(rng, 2, 0.3, 3.0);
        const Vec3 r_i = p.at(0), r_next = p.at(1);
        const double tau = rng.uniform(0.02, 0.5);
        const Vec3 a = link_acceleration(r_i, r_next, coul, 1.0);
        const Vec3 v = link_velocity(r_i, r_next, tau, a);
        const Vec3 dr = r_next - r_i;
        const double direct = norm2(v);
        const double split = norm2(dr) / (tau * tau) + tau * tau * norm2(a) - 2.0 * dot(a, dr);
        CHECK(direct == doctest::Approx(split).epsilon(1e-12));
    }
}

TEST_CASE("primitive action on hand-checked paths") {
    const Discretization disc{0.1, 1.0, 3};
    const Action s1(ActionKind::Primitive, Potential::coulomb(), disc);
    const Path constant({{1, 0, 0}, {1, 0, 0}, {1, 0, 0}});
    CHECK(s1.total(constant).total() == doctest::Approx(-0.3).epsilon(1e-14));

    const Action s1_2(ActionKind::Primitive, Potential::coulomb(), Discretization{0.1, 1.0, 2});
    const Path two({{0, 0, 1}, {0, 0, 2}});
    const ActionBreakdown b = s1_2.total(two);
    CHECK(b.spring == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(b.potential == doctest::Approx(-0.15).epsilon(1e-14));
    CHECK(b.total() == doctest::Approx(9.85).epsilon(1e-14));
}

TEST_CASE("simplified action on a hand-checked path") {
    const Discretization disc{0.1, 1.0, 2};
    const Action st(ActionKind::Simplified, Potential::effective(0.5, 0.1, 1.0), disc);
    const Path constant({{1, 0, 0}, {1, 0, 0}});
    CHECK(st.total(constant).total() == doctest::Approx(-0.199).epsilon(1e-14));
}

TEST_CASE("free particle constant path scores zero under every action") {
    const Discretization disc{0.1, 1.0, 4};
    const Path constant({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}, {1, 2, 3}});
    for (ActionKind kind :
         {ActionKind::Primitive, ActionKind::ConstantForce}) {
        const Action act(kind, Potential::free(), disc);
        CHECK(act.total(constant).total() == 0.0);
    }
}

TEST_CASE("simplified action requires the effective potential") {
    const Discretization disc{0.1, 1.0, 2};
    CHECK_THROWS_AS(Action(ActionKind::Simplified, Potential::coulomb(), disc), ConfigError);
    // mismatched tau between potential and discretization
    CHECK_THROWS_AS(Action(ActionKind::Simplified, Potential::effective(0.5, 0.2, 1.0), disc),
                    ConfigError);
}

TEST_CASE("origin handling: sentinel for simplified, error otherwise") {
    const Discretization disc{0.1, 1.0, 2};
    const Path at_origin({{0, 0, 0}, {1, 0, 0}});

    const Action st(ActionKind::Simplified, Potential::effective(0.5, 0.1, 1.0), disc);
    CHECK(st.total(at_origin).total() == kInf);

    const Action s1(ActionKind::Primitive, Potential::coulomb(), disc);
    CHECK_THROWS_AS(s1.total(at_origin), SingularPoint);
    const Action s2(ActionKind::ConstantForce, Potential::coulomb(), disc);
    CHECK_THROWS_AS(s2.total(at_origin), SingularPoint);
}

TEST_CASE("constant-force total equals tau times the summed link energies") {
    Rng rng(31);
    const Discretization disc{0.1, 1.0, 8};
    const Potential coul = Potential::coulomb();
    const Action s2(ActionKind::ConstantForce, coul, disc);
    for (int k = 0; k < 50; ++k) {
        const Path p = random_path(rng, 8, 0.3, 3.0);
        double sum = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i)
            sum += link_energy(p.at(i), p.at(p.next(i)), disc.tau, coul, disc.mass);
        const double total = s2.total(p).total();
        CHECK(total == doctest::Approx(disc.tau * sum).epsilon(1e-12));
    }
}

TEST_CASE("zero-acceleration reduction: S2 equals S1 bit for bit") {
    // paths built from sign flips share the exact same radius, so the
    // potential difference across every link is exactly zero
    const Discretization disc{0.07, 1.3, 4};
    const Vec3 base{0.8, -0.45, 1.1};
    const Path equi({base,
                     {-base.x, base.y, -base.z},
                     {base.x, -base.y, base.z},
                     {-base.x, -base.y, -base.z}});
    const Potential pots[] = {Potential::coulomb(), Potential::harmonic(0.9, 1.3),
                              Potential::free()};
    for (const Potential& pot : pots) {
        const Action s1(ActionKind::Primitive, pot, disc);
        const Action s2(ActionKind::ConstantForce, pot, disc);
        CHECK(s1.total(equi).total() == s2.total(equi).total());
        CHECK(s1.total(equi).spring == s2.total(equi).spring);
        CHECK(s1.total(equi).potential == s2.total(equi).potential);
    }
}

TEST_CASE("actions are invariant under a global rotation") {
    const auto rotate = [](const Vec3& r) {
        const Vec3 k{2.0 / 7, 3.0 / 7, 6.0 / 7};
        const double c = std::cos(1.1), s = std::sin(1.1);
        const Vec3 kxr{k.y * r.z - k.z * r.y, k.z * r.x - k.x * r.z, k.x * r.y - k.y * r.x};
        return r * c + kxr * s + k * (dot(k, r) * (1 - c));
    };
    Rng rng(37);
    const Discretization disc{0.1, 1.0, 6};
    const Action acts[] = {
        Action(ActionKind::Primitive, Potential::coulomb(), disc),
        Action(ActionKind::ConstantForce, Potential::coulomb(), disc),
        Action(ActionKind::Simplified, Potential::effective(0.5, 0.1, 1.0), disc)};
    for (int k = 0; k < 30; ++k) {
        const Path p = random_path(rng, 6, 0.3, 3.0);
        std::vector<Vec3> rotated;
        for (std::size_t i = 0; i < p.size(); ++i) rotated.push_back(rotate(p.at(i)));
        const Path q(rotated);
        for (const Action& act : acts)
            CHECK(act.total(q).total() ==
                  doctest::Approx(act.total(p).total()).epsilon(1e-10));
    }
}

TEST_CASE("spring term is translation invariant") {
    Rng rng(41);
    const Discretization disc{0.1, 1.0, 6};
    const Action s1(ActionKind::Primitive, Potential::free(), disc);
    for (int k = 0; k < 30; ++k) {
        const Path p = random_path(rng, 6, 0.3, 3.0);
        const Vec3 shift{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
        std::vector<Vec3> moved;
        for (std::size_t i = 0; i < p.size(); ++i) moved.push_back(p.at(i) + shift);
        const Path q(moved);
        CHECK(s1.total(q).spring == doctest::Approx(s1.total(p).spring).epsilon(1e-12));
    }
}

TEST_CASE("simplified exceeds primitive by the summed repulsive terms") {
    Rng rng(43);
    const Discretization disc{0.1, 1.0, 6};
    const Action s1(ActionKind::Primitive, Potential::coulomb(), disc);
    const Action st(ActionKind::Simplified, Potential::effective(0.5, 0.1, 1.0), disc);
    for (int k = 0; k < 50; ++k) {
        const Path p = random_path(rng, 6, 0.3, 3.0);
        const double diff = st.total(p).total() - s1.total(p).total();
        CHECK(diff > 0.0);
        double expected = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double r2 = norm2(p.at(i));
            expected += 0.5 * 0.01 / (r2 * r2);
        }
        expected *= disc.tau;
        CHECK(diff == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("local delta: identity move is exactly zero") {
    Rng rng(47);
    const Discretization disc{0.1, 1.0, 5};
    const Action acts[] = {
        Action(ActionKind::Primitive, Potential::coulomb(), disc),
        Action(ActionKind::ConstantForce, Potential::coulomb(), disc),
        Action(ActionKind::Simplified, Potential::effective(0.5, 0.1, 1.0), disc)};
    const Path p = random_path(rng, 5, 0.3, 3.0);
    for (const Action& act : acts)
        for (std::size_t i = 0; i < p.size(); ++i) CHECK(act.local_delta(p, i, p.at(i)) == 0.0);
}

TEST_CASE("local delta: stepping next to the origin is hugely repulsive") {
    const Discretization disc{0.1, 1.0, 4};
    const Action st(ActionKind::Simplified, Potential::effective(0.5, 0.1, 1.0), disc);
    Rng rng(53);
    const Path p = random_path(rng, 4, 0.5, 2.0);
    CHECK(st.local_delta(p, 1, {1e-6, 0, 0}) > 1e6);
    CHECK(st.local_delta(p, 1, {0, 0, 0}) == kInf);  // exactly at the origin
}

TEST_CASE("local delta matches the full recompute for all three actions") {
    Rng rng(59);
    const Discretization disc2{0.1, 1.0, 2};
    const Discretization disc8{0.1, 1.0, 8};
    for (const Discretization& disc : {disc2, disc8}) {
        const Action acts[] = {
            Action(ActionKind::Primitive, Potential::coulomb(), disc),
            Action(ActionKind::ConstantForce, Potential::coulomb(), disc),
            Action(ActionKind::Simplified, Potential::effective(0.5, disc.tau, 1.0), disc)};
        for (const Action& act : acts) {
            for (int k = 0; k < 400; ++k) {
                Path p = random_path(rng, disc.n_beads, 0.3, 3.0);
                const auto i = static_cast<std::size_t>(rng.uniform01() * static_cast<double>(p.size()));
                const Vec3 cand{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(0.05, 2)};
                const double before = act.total(p).total();
                const double delta = act.local_delta(p, i, cand);
                Path moved = p;
                moved.set(i, cand);
                const double after = act.total(moved).total();
                CHECK(std::abs(delta - (after - before)) < 1e-9);
            }
        }
    }
}
