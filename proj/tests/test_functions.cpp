#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "jgl/functions.hpp"
#include "jgl/gap.hpp"
#include "jgl/jgl.hpp"
#include "jgl/quadrature.hpp"
#include "jgl/random.hpp"
#include "test_support.hpp"

using namespace jgl;
using Catch::Approx;

namespace {

// Independent oracle constants, frozen from 30-digit evaluation of the
// closed forms.
constexpr double kE = 2.7182818284590452;
constexpr double kEMinus1 = 1.7182818284590452;          // int_0^1 e^t
constexpr double kHalfE2Minus1 = 3.1945280494653251;     // int_0^1 e^{2t}
constexpr double kHalfE2MinusE = 2.3353871352358025;     // int_{0.5}^1 e^{2t}
constexpr double kDerivSupExp100 = 5.1847055285870725e23;  // 100 e^{50}

FunctionSpec random_spec(Rng& rng) {
    switch (rng.uniform_int(0, 4)) {
        case 0:
            return FunctionSpec::exponential(rng.uniform(-3.0, 3.0));
        case 1:
            return FunctionSpec::signum(rng.uniform(-1.5, 1.5));
        case 2: {
            std::vector<std::vector<double>> coeffs(
                static_cast<std::size_t>(rng.uniform_int(1, 3)));
            for (auto& c : coeffs) {
                c.resize(static_cast<std::size_t>(rng.uniform_int(1, 6)));
                for (auto& v : c) v = rng.uniform(-2.0, 2.0);
            }
            return FunctionSpec::polynomial(std::move(coeffs));
        }
        case 3:
            return FunctionSpec::sine(rng.uniform(-8.0, 8.0), rng.uniform(0.0, 6.28));
        default: {
            const int knots = rng.uniform_int(2, 6);
            const int dim = rng.uniform_int(1, 3);
            std::vector<double> xs;
            double x = rng.uniform(-2.0, -1.0);
            for (int k = 0; k < knots; ++k) {
                xs.push_back(x);
                x += rng.uniform(0.2, 1.0);
            }
            std::vector<std::vector<double>> values(static_cast<std::size_t>(knots));
            for (auto& row : values) {
                row.resize(static_cast<std::size_t>(dim));
                for (auto& v : row) v = rng.uniform(-2.0, 2.0);
            }
            return FunctionSpec::piecewise_linear(xs, values);
        }
    }
}

}  // namespace

TEST_CASE("eval follows the catalog definitions") {
    CHECK(eval(FunctionSpec::exponential(1.0), 0.0)[0] == 1.0);
    CHECK(eval(FunctionSpec::exponential(2.0), 0.5)[0] == Approx(kE).epsilon(1e-15));

    const FunctionSpec sgn = FunctionSpec::signum(0.5);
    CHECK(eval(sgn, 0.25)[0] == -1.0);
    CHECK(eval(sgn, 0.5)[0] == 1.0);  // right limit at the jump
    CHECK(eval(sgn, 0.75)[0] == 1.0);
    CHECK(eval_left(sgn, 0.5)[0] == -1.0);

    const FunctionSpec sin_spec = FunctionSpec::sine(3.0, 0.25);
    CHECK(eval(sin_spec, 0.7)[0] == Approx(std::sin(3.0 * 0.7 + 0.25)).epsilon(1e-15));

    const FunctionSpec poly = FunctionSpec::polynomial({{1.0, -2.0, 0.5, 3.0}});
    const double t = 1.37;
    CHECK(eval(poly, t)[0] ==
          Approx(1.0 - 2.0 * t + 0.5 * t * t + 3.0 * t * t * t).epsilon(1e-15));
}

TEST_CASE("piecewise linear evaluation interpolates and clamps") {
    const FunctionSpec pwl = FunctionSpec::piecewise_linear(
        {0.0, 1.0, 3.0}, {{1.0, 0.0}, {3.0, 2.0}, {-1.0, 2.0}});
    CHECK(pwl.dimension() == 2);
    CHECK(eval(pwl, 0.5)[0] == Approx(2.0));
    CHECK(eval(pwl, 0.5)[1] == Approx(1.0));
    CHECK(eval(pwl, 1.0)[0] == 3.0);
    CHECK(eval(pwl, 2.0)[0] == Approx(1.0));
    CHECK(eval(pwl, -5.0)[0] == 1.0);   // clamped left
    CHECK(eval(pwl, 10.0)[0] == -1.0);  // clamped right

    CHECK_THROWS_AS(FunctionSpec::piecewise_linear({0.0, 0.0}, {{1.0}, {2.0}}),
                    NotIncreasing);
    CHECK_THROWS_AS(FunctionSpec::piecewise_linear({0.0}, {{1.0}}), InvalidArgument);
}

TEST_CASE("exact integrals of the catalog") {
    CHECK(exact_integral(FunctionSpec::exponential(1.0), {0.0, 1.0})[0] ==
          Approx(kEMinus1).epsilon(1e-14));
    CHECK(exact_integral(FunctionSpec::signum(0.5), {0.0, 1.0})[0] == 0.0);
    CHECK(exact_integral(FunctionSpec::exponential(2.0), {0.0, 1.0})[0] ==
          Approx(kHalfE2Minus1).epsilon(1e-14));
    // piecewise across the jump: -0.1 from [0.4, 0.5] plus 0.5 from [0.5, 1]
    CHECK(exact_integral(FunctionSpec::signum(0.5), {0.4, 1.0})[0] ==
          Approx(0.4).margin(1e-15));

    const FunctionSpec pwl = FunctionSpec::piecewise_linear({0.0, 2.0}, {{0.0}, {2.0}});
    CHECK(exact_integral(pwl, {0.0, 2.0})[0] == Approx(2.0));
    CHECK(exact_integral(pwl, {-1.0, 3.0})[0] == Approx(4.0));  // clamp adds 0 and 2
}

TEST_CASE("exact phi integrals of the catalog") {
    CHECK(exact_phi_integral(FunctionSpec::exponential(1.0), {0.0, 1.0}) ==
          Approx(kHalfE2Minus1).epsilon(1e-14));
    CHECK(exact_phi_integral(FunctionSpec::signum(0.5), {0.0, 1.0}) == 1.0);
    CHECK(exact_phi_integral(FunctionSpec::exponential(1.0), {0.5, 1.0}) ==
          Approx(kHalfE2MinusE).epsilon(1e-14));
    CHECK(exact_phi_integral(FunctionSpec::exponential(0.0), {0.0, 1.0}) == 1.0);
    // two components double the scalar value
    CHECK(exact_phi_integral(FunctionSpec::signum(0.5, {1.0, 1.0}), {0.0, 1.0}) == 2.0);
}

TEST_CASE("exact integrals agree with quadrature across the catalog") {
    Rng rng(101);
    for (int t = 0; t < 300; ++t) {
        const FunctionSpec f = random_spec(rng);
        const double a = rng.uniform(-2.0, 1.5);
        const Interval I(a, a + rng.uniform(0.1, 2.0));
        const VecValue ex = exact_integral(f, I);
        const VecValue q = integrate_vector(f, I, 1e-11);
        for (std::size_t c = 0; c < ex.size(); ++c) {
            CHECK(ex[c] == Approx(q[c]).margin(1e-10).epsilon(1e-12));
        }
        CHECK(exact_phi_integral(f, I) ==
              Approx(integrate_phi(f, I, 1e-11)).margin(1e-10).epsilon(1e-12));
    }
}

TEST_CASE("extrema on monotone, discontinuous and oscillating kinds") {
    const auto [m_exp, M_exp] = extrema(FunctionSpec::exponential(1.0), {0.0, 1.0});
    CHECK(m_exp[0] == 1.0);
    CHECK(M_exp[0] == Approx(kE).epsilon(1e-15));

    const FunctionSpec sgn = FunctionSpec::signum(0.5);
    const auto [m1v, M1v] = extrema(sgn, {0.0, 1.0});
    CHECK((m1v[0] == -1.0 && M1v[0] == 1.0));
    const auto [m2v, M2v] = extrema(sgn, {0.6, 1.0});
    CHECK((m2v[0] == 1.0 && M2v[0] == 1.0));
    // essential extrema: the right-limit value at the jump never leaks left
    const auto [m3v, M3v] = extrema(sgn, {0.0, 0.5});
    CHECK((m3v[0] == -1.0 && M3v[0] == -1.0));

    const double pi = std::numbers::pi;
    const auto [m_sin, M_sin] = extrema(FunctionSpec::sine(1.0, 0.0), {0.0, pi});
    CHECK(M_sin[0] == 1.0);  // interior peak detected
    CHECK(m_sin[0] == Approx(0.0).margin(1e-15));

    const auto [m_poly, M_poly] =
        extrema(FunctionSpec::polynomial({{0.0, -1.0, 1.0}}), {0.0, 1.0});
    CHECK(m_poly[0] == Approx(-0.25).margin(1e-12));
    CHECK(M_poly[0] == Approx(0.0).margin(1e-12));

    // negative amplitude flips the pair
    const auto [m_neg, M_neg] =
        extrema(FunctionSpec::exponential(1.0, {-2.0}), {0.0, 1.0});
    CHECK(m_neg[0] == Approx(-2.0 * kE).epsilon(1e-15));
    CHECK(M_neg[0] == -2.0);
}

TEST_CASE("extrema are attained on continuous kinds") {
    Rng rng(55);
    for (int t = 0; t < 120; ++t) {
        FunctionSpec f = random_spec(rng);
        while (f.kind() == FunctionKind::Signum) f = random_spec(rng);
        const double a = rng.uniform(-1.5, 1.0);
        const Interval I(a, a + rng.uniform(0.2, 1.5));
        const auto [lo, hi] = extrema(f, I);
        const auto [scan_lo, scan_hi] = testsupport::scan_extrema(f, I);
        for (std::size_t c = 0; c < lo.size(); ++c) {
            const double spread = hi[c] - lo[c];
            const double tol = 1e-6 * spread + 1e-12;
            CHECK(scan_lo[c] >= lo[c] - 1e-12);
            CHECK(scan_hi[c] <= hi[c] + 1e-12);
            CHECK(scan_lo[c] <= lo[c] + tol);
            CHECK(scan_hi[c] >= hi[c] - tol);
        }
    }
}

TEST_CASE("deriv_sup on the catalog") {
    CHECK(deriv_sup(FunctionSpec::exponential(1.0), {0.0, 1.0})[0] ==
          Approx(kE).epsilon(1e-15));
    CHECK(deriv_sup(FunctionSpec::exponential(100.0), {0.0, 0.5})[0] ==
          Approx(kDerivSupExp100).epsilon(1e-12));
    CHECK(deriv_sup(FunctionSpec::exponential(0.0), {0.0, 1.0})[0] == 0.0);

    CHECK_THROWS_AS(deriv_sup(FunctionSpec::signum(0.5), {0.0, 1.0}),
                    DiscontinuityInside);
    CHECK(deriv_sup(FunctionSpec::signum(0.5), {0.6, 1.0})[0] == 0.0);
    CHECK(deriv_sup(FunctionSpec::signum(0.5), {0.5, 1.0})[0] == 0.0);  // jump on edge

    const double pi = std::numbers::pi;
    CHECK(deriv_sup(FunctionSpec::sine(3.0, 0.0), {0.0, pi})[0] == 3.0);
    // narrow window away from the cosine peaks
    CHECK(deriv_sup(FunctionSpec::sine(1.0, 0.0), {pi / 3.0, pi / 2.5})[0] ==
          Approx(std::cos(pi / 3.0)).epsilon(1e-14));

    CHECK(deriv_sup(FunctionSpec::polynomial({{0.0, 0.0, 1.0}}), {0.0, 1.0})[0] ==
          Approx(2.0).margin(1e-12));

    // kink: supremum over the one-sided slopes
    const FunctionSpec pwl =
        FunctionSpec::piecewise_linear({0.0, 1.0, 2.0}, {{0.0}, {1.0}, {-3.0}});
    CHECK(deriv_sup(pwl, {0.0, 2.0})[0] == 4.0);
    CHECK(deriv_sup(pwl, {0.0, 1.0})[0] == 1.0);
    CHECK(deriv_sup(pwl, {-1.0, 0.5})[0] == 1.0);  // clamp region contributes slope 0
}

TEST_CASE("reduce_quadratic folds the factor into the spec") {
    const FunctionSpec f = FunctionSpec::exponential(1.0);
    const FunctionSpec same = reduce_quadratic(Mat::identity(1), f);
    CHECK(eval(same, 0.7)[0] == eval(f, 0.7)[0]);

    const FunctionSpec doubled = reduce_quadratic(Mat{{4.0}}, f);
    CHECK(eval(doubled, 0.3)[0] == Approx(2.0 * std::exp(0.3)).epsilon(1e-15));

    const FunctionSpec two = FunctionSpec::polynomial({{1.0, 1.0}, {2.0}});
    Mat q(2, 2);
    q(0, 0) = 1.0;
    q(1, 1) = 9.0;
    const FunctionSpec scaled = reduce_quadratic(q, two);
    CHECK(eval(scaled, 0.5)[0] == Approx(1.5));
    CHECK(eval(scaled, 0.5)[1] == Approx(6.0));

    CHECK_THROWS_AS(reduce_quadratic(Mat{{0.0, 1.0}, {1.0, 0.0}}, two),
                    NotPositiveDefinite);
    CHECK_THROWS_AS(reduce_quadratic(Mat::identity(3), two), DimensionMismatch);
}

TEST_CASE("reduce_quadratic preserves the weighted gap") {
    Rng rng(202);
    for (int t = 0; t < 60; ++t) {
        FunctionSpec f = random_spec(rng);
        while (f.kind() == FunctionKind::Signum) f = random_spec(rng);
        const int n = f.dimension();
        // diagonal plus rank one, positive definite by construction
        Mat q(n, n);
        std::vector<double> v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            q(i, i) = rng.uniform(0.5, 3.0);
            v[static_cast<std::size_t>(i)] = rng.uniform(-1.0, 1.0);
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                q(i, j) += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];

        const double a = rng.uniform(-1.0, 0.5);
        const Interval I(a, a + rng.uniform(0.3, 1.2));

        // phi_Q gap of the original, via quadrature of f^T Q f
        const double mu = I.measure();
        const double phi_q =
            integrate_scalar(
                [&](double s) {
                    const VecValue y = eval(f, s);
                    return quad_form(q, y);
                },
                I, f.discontinuities(), 1e-12)
                .value;
        const VecValue fi = exact_integral(f, I);
        const double weighted_gap = mu * phi_q - quad_form(q, fi);

        const FragmentGap reduced = fragment_gap(reduce_quadratic(q, f), I);
        CHECK(reduced.gap_unnormalized ==
              Approx(weighted_gap).epsilon(1e-9).margin(1e-10));
    }
}

TEST_CASE("umbrella header compiles and exposes the library") {
    jgl::Interval I(0.0, 1.0);
    CHECK(jgl::fragment_gap(jgl::FunctionSpec::signum(0.5), I).gap_unnormalized == 1.0);
}
