#include "helpers.hpp"

#include <bellport/bellmix.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace bellport;
using namespace test_helpers;

namespace {
const double r2 = 1.0 / std::numbers::sqrt2;
const double pi = std::numbers::pi;
}

TEST_CASE("bell_state convention") {
    check_state(bell_state(0, 0), state_of({r2, 0, 0, r2}));
    check_state(bell_state(1, 0), state_of({r2, 0, 0, -r2}));
    check_state(bell_state(0, 1), state_of({0, r2, r2, 0}));
    check_state(bell_state(1, 1), state_of({0, r2, -r2, 0}));
    CHECK_THROWS_AS(bell_state(2, 0), ArgumentError);
}

TEST_CASE("resource_ideal limiting species") {
    check_state(resource_ideal(0.0), -bell_state(1, 0));
    check_state(resource_ideal(pi / 2), bell_state(0, 1));
    const auto mid = resource_ideal(pi / 4);
    check_state(mid, r2 * (bell_state(0, 1) - bell_state(1, 0)));
    CHECK(std::abs(mid.norm() - 1) <= 1e-12);
}

TEST_CASE("resource_distorted special points") {
    for (double th : {-1.3, 0.0, 0.4, pi / 3, 2.0}) {
        check_state(resource_distorted(th, 0.0), resource_ideal(th));
    }
    check_state(resource_distorted(pi / 2, 0.25), bell_state(0, 1));
    // nd = 1/4: e^{i pi/2} = i, cos(pi/2) = 0, sin(pi/2) = 1 -> i * i * beta00 = -beta00
    check_state(resource_distorted(0.0, 0.25), -bell_state(0, 0));
}

TEST_CASE("resource_distorted is normalized over the grid") {
    for (int i = 0; i <= 16; ++i)
        for (int k = 0; k <= 25; ++k) {
            const double th = i * pi / 32, nd = k * 0.01;
            CHECK(std::abs(resource_distorted(th, nd).norm() - 1) <= 1e-12);
        }
}

TEST_CASE("beta00 leakage weight") {
    const auto b00 = bell_state(0, 0);
    for (double th : {0.0, 0.3, 1.1, pi / 2})
        for (double nd : {0.0, 0.03, 0.1, 0.19, 0.25}) {
            const double w = std::norm(inner_product(b00, resource_distorted(th, nd)));
            CHECK(std::abs(w - std::pow(std::sin(2 * pi * nd) * std::cos(th), 2)) <= 1e-12);
        }
}

TEST_CASE("delta_from_physical") {
    // j = 1/2 exactly when B1 = B2
    CHECK(delta_from_physical(1.0, 0.3, 0.3, Rational{1, 2}) == 0.0);
    CHECK(delta_from_physical(2.5, -1.0, -1.0, 0.5) == 0.0);
    // j = 1/sqrt(4 + 4)
    CHECK(delta_from_physical(1.0, 2.0, 0.0, Rational{1, 2}) == doctest::Approx(-0.14644660940672627).epsilon(1e-14));
    // j = 1/sqrt(0.04 + 4); close to, but not equal to, the -B^2/(16 J^2) = -0.0025 expansion
    const double small = delta_from_physical(1.0, 0.2, 0.0, Rational{1, 2});
    CHECK(small == doctest::Approx(-0.002481404895005368).epsilon(1e-12));
    CHECK(std::abs(small - (-0.0025)) < 2e-5);

    CHECK_THROWS_AS(delta_from_physical(0.0, 1.0, 1.0, 0.5), ArgumentError);
    CHECK_THROWS_AS(delta_from_physical(1.0, 0.0, 0.0, Rational{1, 0}), ArgumentError);
}

TEST_CASE("coupling ratio stays in (0, 1/2] for positive J") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> j(1e-3, 5), b(-10, 10);
    for (int i = 0; i < 200; ++i) {
        const double r = coupling_ratio(j(rng), b(rng), b(rng));
        CHECK(r > 0);
        CHECK(r <= 0.5);
    }
}

TEST_CASE("delta is antisymmetric under Q -> 2j - Q") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 100; ++i) {
        const double J = u(rng), b1 = u(rng), b2 = u(rng), q = u(rng) / 6;
        const double jr = coupling_ratio(J, b1, b2);
        CHECK(std::abs(delta_from_physical(J, b1, b2, q) + delta_from_physical(J, b1, b2, 2 * jr - q)) <= 1e-12);
    }
}

TEST_CASE("ResourceParams from physical fields") {
    PhysicalSource<double> src{1.0, 0.2, 0.0, 12, Rational{1, 2}};
    const auto p = ResourceParams<double>::from_physical(0.3, src);
    CHECK(p.ndelta == doctest::Approx(12 * -0.002481404895005368).epsilon(1e-12));
    CHECK(p.consistent());

    auto bad = p;
    bad.ndelta += 1e-6;
    CHECK_FALSE(bad.consistent());

    const ResourceParams<double> plain{0.3, 0.1, std::nullopt};
    CHECK(plain.consistent());

    src.n = -1;
    CHECK_THROWS_AS(ResourceParams<double>::from_physical(0.3, src), ArgumentError);
}
