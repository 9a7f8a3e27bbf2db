#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "jgl/functions.hpp"
#include "jgl/quadrature.hpp"
#include "jgl/random.hpp"

using namespace jgl;
using Catch::Approx;

namespace {
constexpr double kHalfE2Minus1 = 3.1945280494653251;  // int_0^1 e^{2t}
}

TEST_CASE("adaptive simpson reproduces closed forms") {
    const QuadResult r = integrate_scalar([](double t) { return std::exp(2.0 * t); },
                                          {0.0, 1.0}, {}, 1e-10);
    CHECK(r.value == Approx(kHalfE2Minus1).margin(1e-10));
    CHECK(std::abs(r.value - kHalfE2Minus1) <= r.error_estimate + 1e-13);
    CHECK(r.subdivisions >= 1);
    CHECK(r.error_estimate >= 0.0);
}

TEST_CASE("breakpoint pre-splitting makes jumps exact") {
    const QuadResult r = integrate_scalar(
        [](double t) { return t < 0.5 ? -1.0 : 1.0; }, {0.0, 1.0}, {0.5}, 1e-10);
    CHECK(r.value == 0.0);
    CHECK(r.error_estimate == 0.0);
}

TEST_CASE("constants are exact") {
    const QuadResult r = integrate_scalar([](double) { return 1.0; }, {2.0, 5.0}, {}, 1e-10);
    CHECK(r.value == 3.0);
    CHECK(r.error_estimate == 0.0);
}

TEST_CASE("cubics are exact for the base rule") {
    const QuadResult r =
        integrate_scalar([](double t) { return t * t * t; }, {0.0, 2.0}, {}, 1e-12);
    CHECK(r.value == Approx(4.0).margin(1e-13));
}

TEST_CASE("non-integrable input exhausts the depth limit") {
    CHECK_THROWS_AS(
        integrate_scalar([](double t) { return 1.0 / t; }, {0.0, 1.0}, {}, 1e-10),
        MaxDepthExceeded);
}

TEST_CASE("invalid tolerance is rejected") {
    CHECK_THROWS_AS(integrate_scalar([](double) { return 1.0; }, {0.0, 1.0}, {}, 0.0),
                    InvalidArgument);
}

TEST_CASE("interval additivity") {
    Rng rng(303);
    const auto g = [](double t) { return std::sin(3.0 * t) + 0.2 * t * t; };
    for (int k = 0; k < 25; ++k) {
        const double a = rng.uniform(-2.0, 0.0);
        const double c = a + rng.uniform(0.5, 2.5);
        const double b = a + (c - a) * rng.uniform(0.05, 0.95);
        const double tol = 1e-10;
        const double whole = integrate_scalar(g, {a, c}, {}, tol).value;
        const double split = integrate_scalar(g, {a, b}, {}, tol).value +
                             integrate_scalar(g, {b, c}, {}, tol).value;
        CHECK(whole == Approx(split).margin(2.0 * tol));
    }
}

TEST_CASE("integrate_vector handles catalog discontinuities") {
    CHECK(integrate_vector(FunctionSpec::exponential(1.0), {0.0, 1.0})[0] ==
          Approx(1.7182818284590452).margin(1e-10));
    CHECK(integrate_vector(FunctionSpec::signum(0.5), {0.0, 1.0})[0] == 0.0);
    CHECK(integrate_vector(FunctionSpec::signum(0.5), {0.4, 1.0})[0] ==
          Approx(0.4).margin(1e-13));

    const FunctionSpec two = FunctionSpec::signum(0.5, {1.0, -2.0});
    const VecValue v = integrate_vector(two, {0.4, 1.0});
    CHECK(v[0] == Approx(0.4).margin(1e-13));
    CHECK(v[1] == Approx(-0.8).margin(1e-13));
}

TEST_CASE("integrate_phi on the catalog") {
    CHECK(integrate_phi(FunctionSpec::exponential(1.0), {0.0, 1.0}) ==
          Approx(kHalfE2Minus1).margin(1e-10));
    CHECK(integrate_phi(FunctionSpec::signum(0.5), {0.0, 1.0}) == 1.0);
    CHECK(integrate_phi(FunctionSpec::exponential(0.0), {0.0, 1.0}) == 1.0);
}

TEST_CASE("integrate_product uses one-sided limits at shared jumps") {
    const FunctionSpec sgn = FunctionSpec::signum(0.5);
    CHECK(integrate_product(sgn, sgn, {0.0, 1.0}) == 1.0);

    // jump of one factor against a smooth factor
    const FunctionSpec ramp = FunctionSpec::polynomial({{0.0, 1.0}});
    // int_0^1 sgn(t - 1/2) t dt = -1/8 + 3/8 = 1/4
    CHECK(integrate_product(sgn, ramp, {0.0, 1.0}) == Approx(0.25).margin(1e-12));
    CHECK_THROWS_AS(
        integrate_product(FunctionSpec::signum(0.5, {1.0, 1.0}), ramp, {0.0, 1.0}),
        DimensionMismatch);
}

TEST_CASE("error estimates bound the true error on the catalog") {
    Rng rng(404);
    for (int t = 0; t < 200; ++t) {
        const double alpha = rng.uniform(-2.0, 2.0);
        const double a = rng.uniform(-1.0, 0.5);
        const Interval I(a, a + rng.uniform(0.2, 1.5));
        const QuadResult r = integrate_scalar(
            [&](double s) { return std::exp(alpha * s); }, I, {}, 1e-10);
        const double truth =
            alpha != 0.0 ? (std::exp(alpha * I.b) - std::exp(alpha * I.a)) / alpha
                         : I.measure();
        CHECK(std::abs(r.value - truth) <=
              r.error_estimate + 1e-13 * std::max(1.0, std::abs(truth)));
    }
}
