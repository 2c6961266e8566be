#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "pimc/errors.hpp"
#include "pimc/path.hpp"

using namespace pimc;

TEST_CASE("constant initializer places every bead at the point") {
    Rng rng(1);
    const Path p = make_ring_path(3, InitSpec::constant({1, 0, 0}), rng);
    REQUIRE(p.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(p.at(i) == Vec3{1, 0, 0});

    const Path q = make_ring_path(2, InitSpec::constant({0, 0, 2}), rng);
    REQUIRE(q.size() == 2);
    CHECK(q.at(0) == Vec3{0, 0, 2});
    CHECK(q.at(1) == Vec3{0, 0, 2});
}

TEST_CASE("fewer than two beads is an invalid configuration") {
    Rng rng(1);
    CHECK_THROWS_AS(make_ring_path(1, InitSpec::constant({1, 0, 0}), rng), ConfigError);
    CHECK_THROWS_AS(make_ring_path(0, InitSpec::shell(0.5, 2.0), rng), ConfigError);
}

TEST_CASE("link displacement and cyclic wrap") {
    Path p({{0, 0, 1}, {0, 0, 2}});
    CHECK(link(p, 0) == Vec3{0, 0, 1});
    CHECK(link(p, 1) == Vec3{0, 0, -1});  // wraps to bead 0
    CHECK_THROWS_AS(link(p, 2), std::out_of_range);

    const Path c({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}});
    for (std::size_t i = 0; i < 3; ++i) CHECK(link(c, i) == Vec3{0, 0, 0});
}

TEST_CASE("links telescope to zero around the ring") {
    Rng rng(99);
    const Path p = make_ring_path(17, InitSpec::shell(0.5, 2.0), rng);
    Vec3 sum{};
    for (std::size_t i = 0; i < p.size(); ++i) sum += link(p, i);
    CHECK(std::abs(sum.x) < 1e-14);
    CHECK(std::abs(sum.y) < 1e-14);
    CHECK(std::abs(sum.z) < 1e-14);
}

TEST_CASE("shell initializer is reproducible and respects the radius bounds") {
    Rng a(123);
    Rng b(123);
    const Path pa = make_ring_path(64, InitSpec::shell(0.5, 2.0), a);
    const Path pb = make_ring_path(64, InitSpec::shell(0.5, 2.0), b);
    for (std::size_t i = 0; i < pa.size(); ++i) {
        CHECK(pa.at(i) == pb.at(i));  // bit-identical across runs
        const double r = norm(pa.at(i));
        CHECK(r >= 0.5);
        CHECK(r <= 2.0);
    }
}

TEST_CASE("shell initializer rejects a bad radius range") {
    Rng rng(5);
    CHECK_THROWS_AS(make_ring_path(4, InitSpec::shell(2.0, 0.5), rng), ConfigError);
    CHECK_THROWS_AS(make_ring_path(4, InitSpec::shell(-1.0, 0.5), rng), ConfigError);
}

TEST_CASE("discretization validation") {
    CHECK_THROWS_AS(validate(Discretization{-0.1, 1.0, 10}), ConfigError);
    CHECK_THROWS_AS(validate(Discretization{0.1, 0.0, 10}), ConfigError);
    CHECK_THROWS_AS(validate(Discretization{0.1, 1.0, 1}), ConfigError);
    CHECK_NOTHROW(validate(Discretization{0.1, 1.0, 2}));
    CHECK(Discretization{0.1, 1.0, 100}.beta() == doctest::Approx(10.0));
}

TEST_CASE("path snapshot csv") {
    Path p({{1, 0, 0}, {0, 0.5, -2}});
    std::ostringstream out;
    write_path_csv(p, out);
    CHECK(out.str() == "index,x,y,z\n0,1,0,0\n1,0,0.5,-2\n");
}
