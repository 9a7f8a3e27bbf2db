#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "jgl/matrix.hpp"
#include "jgl/random.hpp"
#include "test_support.hpp"

using namespace jgl;
using testsupport::gauss_jordan_inverse;

TEST_CASE("cholesky on identity and scalars") {
    const Mat i3 = Mat::identity(3);
    const Mat l = cholesky(i3);
    CHECK(frobenius_norm(l - i3) == 0.0);

    const Mat s{{4.0}};
    CHECK(cholesky(s)(0, 0) == 2.0);
}

TEST_CASE("cholesky round-trips S = L^T L") {
    const Mat s{{2.0, 1.0}, {1.0, 2.0}};
    const Mat l = cholesky(s);
    CHECK(l(1, 0) == 0.0);  // upper triangular
    CHECK(l(0, 0) > 0.0);
    CHECK(l(1, 1) > 0.0);
    CHECK(frobenius_norm(transpose(l) * l - s) <= 1e-14);

    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        const Mat p = random_pd(rng, rng.uniform_int(1, 6));
        const Mat f = cholesky(p);
        CHECK(frobenius_norm(transpose(f) * f - p) <= 1e-12 * std::max(1.0, frobenius_norm(p)));
    }
}

TEST_CASE("cholesky rejects indefinite and asymmetric input") {
    CHECK_THROWS_AS(cholesky(Mat{{0.0, 1.0}, {1.0, 0.0}}), NotPositiveDefinite);
    CHECK_THROWS_AS(cholesky(Mat{{-1.0}}), NotPositiveDefinite);
    CHECK_THROWS_AS(cholesky(Mat{{1.0, 2.0}, {0.0, 1.0}}), InvalidArgument);
    CHECK_THROWS_AS(cholesky(Mat{{0.0}}), NotPositiveDefinite);
}

TEST_CASE("solve_spd matches the explicit inverse") {
    Rng rng(23);
    for (int t = 0; t < 30; ++t) {
        const int n = rng.uniform_int(1, 6);
        const Mat s = random_pd(rng, n);
        const Mat b = random_mat(rng, n, rng.uniform_int(1, 4));
        const Mat x = solve_spd(s, b);
        const Mat expected = gauss_jordan_inverse(s) * b;
        CHECK(frobenius_norm(x - expected) <= 1e-9 * std::max(1.0, frobenius_norm(expected)));
    }
}

TEST_CASE("min_eig on known spectra") {
    CHECK(min_eig(Mat{{3.0, 0.0, 0.0}, {0.0, -2.0, 0.0}, {0.0, 0.0, 5.0}}) ==
          Catch::Approx(-2.0).margin(1e-12));
    CHECK(min_eig(Mat::identity(4)) == Catch::Approx(1.0).margin(1e-12));
    CHECK(min_eig(Mat{{0.0, 1.0}, {1.0, 0.0}}) == Catch::Approx(-1.0).margin(1e-12));
}

TEST_CASE("min_eig recovers the spectrum of rotated diagonal matrices") {
    Rng rng(37);
    for (int t = 0; t < 40; ++t) {
        const int n = rng.uniform_int(2, 6);
        // assemble S = V D V^T from random Givens rotations: spectrum known
        Mat s(n, n);
        double lo = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = rng.uniform(-5.0, 5.0);
            s(i, i) = d;
            lo = i == 0 ? d : std::min(lo, d);
        }
        for (int rot = 0; rot < 3 * n; ++rot) {
            const int p = rng.uniform_int(0, n - 2);
            const int q = rng.uniform_int(p + 1, n - 1);
            const double c = std::cos(rng.uniform(0.0, 6.28));
            const double sn = std::sqrt(std::max(0.0, 1.0 - c * c));
            Mat g = Mat::identity(n);
            g(p, p) = c;
            g(q, q) = c;
            g(p, q) = sn;
            g(q, p) = -sn;
            s = symmetrize(transpose(g) * (s * g));
        }
        CHECK(min_eig(s) == Catch::Approx(lo).margin(1e-9 * std::max(1.0, frobenius_norm(s))));
    }
}

TEST_CASE("schur complement form on scalar triples") {
    const CompletionTriple t(Mat{{0.0}}, Mat{{1.0}}, Mat{{1.0}});
    CHECK(m1(t)(0, 0) == Catch::Approx(-1.0).margin(1e-15));
    CHECK(n_star(t)(0, 0) == Catch::Approx(-1.0).margin(1e-15));
    CHECK(m2(t, Mat{{-1.0}})(0, 0) == Catch::Approx(-1.0).margin(1e-15));
    CHECK(m2(t, Mat{{0.0}})(0, 0) == 0.0);

    const auto forms = residual(t, Mat{{1.0}});
    CHECK(forms.difference(0, 0) == Catch::Approx(4.0).margin(1e-12));
    CHECK(forms.completed_square(0, 0) == Catch::Approx(4.0).margin(1e-12));
}

TEST_CASE("m1 with zero B reduces to A, m2 with zero slack reduces to A") {
    Rng rng(5);
    const Mat a = random_symmetric(rng, 4);
    const CompletionTriple t(a, Mat::zero(3, 4), random_pd(rng, 3));
    CHECK(frobenius_norm(m1(t) - a) <= 1e-14);
    CHECK(frobenius_norm(m2(t, Mat::zero(3, 4)) - a) == 0.0);
    CHECK(frobenius_norm(n_star(t)) == 0.0);
}

TEST_CASE("m1 agrees with the explicit-inverse oracle") {
    Rng rng(41);
    for (int t = 0; t < 25; ++t) {
        const int n = 4, m = 4;
        const CompletionTriple triple(random_symmetric(rng, n), random_mat(rng, m, n),
                                 random_pd(rng, m));
        const Mat direct =
            triple.a - transpose(triple.b) * (gauss_jordan_inverse(triple.c) * triple.b);
        CHECK(frobenius_norm(m1(triple) - direct) <= 1e-10);
    }
}

TEST_CASE("minimizer attains the schur complement and residuals stay PSD") {
    Rng rng(7);
    for (int t = 0; t < 100; ++t) {
        const int n = rng.uniform_int(1, 6);
        const int m = rng.uniform_int(1, 6);
        const CompletionTriple triple(random_symmetric(rng, n), random_mat(rng, m, n),
                                 random_pd(rng, m));
        const Mat best = n_star(triple);
        CHECK(frobenius_norm(m2(triple, best) - m1(triple)) <= 1e-10);

        const Mat slack = random_mat(rng, m, n, -2.0, 2.0);  // 5 x 3 cases included
        const auto forms = residual(triple, slack);
        CHECK(min_eig(forms.difference) >= -1e-9);
        CHECK(frobenius_norm(forms.difference - forms.completed_square) <= 1e-9);
        CHECK(frobenius_norm(residual(triple, best).difference) <= 1e-10);
    }
}

TEST_CASE("definiteness transfers between both forms") {
    Rng rng(97);
    int negative_cases = 0;
    for (int t = 0; t < 200; ++t) {
        const int n = rng.uniform_int(1, 5);
        const int m = rng.uniform_int(1, 5);
        const CompletionTriple triple(random_symmetric(rng, n), random_mat(rng, m, n),
                                 random_pd(rng, m));
        const double eig1 = min_eig(m1(triple));
        if (eig1 < -1e-6) {
            ++negative_cases;
            CHECK(min_eig(m2(triple, n_star(triple))) < 0.0);
        }
        const Mat slack = random_mat(rng, m, n, -2.0, 2.0);
        if (min_eig(m2(triple, slack)) < 0.0) {
            // some slack certifies M2 < 0 only if M1 itself is not positive
            CHECK(eig1 < 1e-9);
        }
    }
    CHECK(negative_cases > 0);  // the sweep actually exercised the negative branch
}

TEST_CASE("shape validation") {
    CHECK_THROWS_AS(Mat({{1.0, 2.0}}) * Mat({{1.0, 2.0}}), DimensionMismatch);
    CHECK_THROWS_AS(CompletionTriple(Mat{{0.0, 1.0}, {2.0, 0.0}}, Mat{{1.0, 0.0}}, Mat{{1.0}}),
                    InvalidArgument);
    const CompletionTriple t(Mat{{0.0}}, Mat{{1.0}}, Mat{{1.0}});
    CHECK_THROWS_AS(m2(t, Mat::zero(2, 2)), DimensionMismatch);
    CHECK_THROWS_AS(CompletionTriple(Mat{{0.0}}, Mat{{1.0}}, Mat{{0.0}}), NotPositiveDefinite);
}
