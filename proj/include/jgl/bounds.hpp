#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "jgl/errors.hpp"
#include "jgl/functions.hpp"
#include "jgl/interval.hpp"
#include "jgl/matrix.hpp"
#include "jgl/quadrature.hpp"

namespace jgl {

// Data of the bound family for -int_U z^T R z ds with int_U z = M w:
// constraint matrix M (n x p), weight R (n x n, positive definite) and the
// measure mu of the integration interval.
struct BoundProblem {
    Mat m;
    Mat r;
    double mu = 0.0;

    BoundProblem(Mat m_, Mat r_, double mu_)
        : m(std::move(m_)), r(std::move(r_)), mu(mu_) {
        if (r.rows() != r.cols() || r.rows() != m.rows()) {
            throw DimensionMismatch("BoundProblem: M must be n x p with R n x n");
        }
        if (!is_symmetric(r)) throw InvalidArgument("BoundProblem: R not symmetric");
        if (mu < 0.0) throw InvalidArgument("BoundProblem: negative measure");
        cholesky(r);  // rejects R not positive definite
    }
};

// Classical Jensen form -(1/mu) M^T R M. Ill-posed at mu = 0 by construction;
// that failure mode is exactly what the affine family removes.
inline Mat rational_bound(const BoundProblem& p) {
    if (!(p.mu > 0.0)) {
        throw ZeroMeasure("rational_bound: measure must be positive");
    }
    return symmetrize((-1.0 / p.mu) * (transpose(p.m) * (p.r * p.m)));
}

// Slack form Q(N) = N^T M + M^T N + mu N^T R^-1 N, affine in mu and finite at
// mu = 0. The slack N is n x p.
inline Mat affine_bound(const BoundProblem& p, const Mat& slack) {
    if (slack.rows() != p.r.rows() || slack.cols() != p.m.cols()) {
        throw DimensionMismatch("affine_bound: slack must match M's shape");
    }
    const Mat ntm = transpose(slack) * p.m;
    Mat q = ntm + transpose(ntm);
    if (p.mu != 0.0) {
        const Mat rinv_n = solve_spd(p.r, slack);  // R^-1 N by triangular solves
        q = q + p.mu * (transpose(slack) * rinv_n);
    }
    return symmetrize(q);
}

// Minimizer of the slack form: N* = -(1/mu) R M, at which the affine bound
// collapses onto the rational one.
inline Mat optimal_slack(const BoundProblem& p) {
    if (!(p.mu > 0.0)) {
        throw ZeroMeasure("optimal_slack: measure must be positive");
    }
    return (-1.0 / p.mu) * (p.r * p.m);
}

// Evaluation of the bound chain on an actual trajectory x over I = [t_k, t]:
// z = x', w = col(x(t), x(t_k)), M = [I  -I] so that int z = M w. Contract:
// true_integral <= rational <= affine.
struct TrajectoryCheck {
    double true_integral = 0.0;  // -int_I x'(s)^T R x'(s) ds
    double rational = 0.0;       // w^T rational_bound w
    double affine = 0.0;         // w^T affine_bound(N) w
};

inline TrajectoryCheck trajectory_check(const FunctionSpec& x, const Mat& r, Interval I,
                                        const Mat& slack, double tol = 1e-10) {
    const int n = x.dimension();
    if (r.rows() != n || r.cols() != n) {
        throw DimensionMismatch("trajectory_check: R must match the trajectory dimension");
    }
    for (double d : x.discontinuities()) {
        if (I.strictly_inside(d)) {
            throw DiscontinuityInside("trajectory_check: trajectory not differentiable on I");
        }
    }
    if (!(I.measure() > 0.0)) throw ZeroMeasure("trajectory_check: empty interval");

    Mat m(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = 1.0;
        m(i, n + i) = -1.0;
    }
    Vec w(static_cast<std::size_t>(2 * n));
    const VecValue xt = eval(x, I.b);
    const VecValue xk = eval(x, I.a);
    for (int i = 0; i < n; ++i) {
        w[static_cast<std::size_t>(i)] = xt[static_cast<std::size_t>(i)];
        w[static_cast<std::size_t>(n + i)] = xk[static_cast<std::size_t>(i)];
    }

    auto deriv_quad = [&](auto&& get, double t) {
        Vec z(static_cast<std::size_t>(n));
        for (int c = 0; c < n; ++c) z[static_cast<std::size_t>(c)] = get(c, t);
        return quad_form(r, z);
    };
    auto cuts = detail::smoothness_breakpoints(x);
    const double integral =
        detail::integrate_spec_expr(
            [&](double t) {
                return deriv_quad([&](int c, double u) { return x.deriv_component(c, u); },
                                  t);
            },
            [&](double t) {
                return deriv_quad(
                    [&](int c, double u) { return x.deriv_component_left(c, u); }, t);
            },
            I, cuts, tol)
            .value;

    const BoundProblem p(m, r, I.measure());
    TrajectoryCheck out;
    out.true_integral = -integral;
    out.rational = quad_form(rational_bound(p), w);
    out.affine = quad_form(affine_bound(p, slack), w);
    return out;
}

// Frobenius norms of both bounds as the measure shrinks. The affine norm
// stays finite (it converges to |N^T M + M^T N|_F); the rational norm scales
// as 1/mu whenever M^T R M is nonzero. A zero measure is allowed: the
// rational entry is absent there.
struct SweepRow {
    double mu = 0.0;
    double affine_norm = 0.0;
    std::optional<double> rational_norm;
};

inline std::vector<SweepRow> wellposedness_sweep(const BoundProblem& base, const Mat& slack,
                                                 const std::vector<double>& mus) {
    std::vector<SweepRow> rows;
    rows.reserve(mus.size());
    for (double mu : mus) {
        if (mu < 0.0) throw InvalidArgument("wellposedness_sweep: negative measure");
        const BoundProblem p(base.m, base.r, mu);
        SweepRow row;
        row.mu = mu;
        row.affine_norm = frobenius_norm(affine_bound(p, slack));
        if (mu > 0.0) row.rational_norm = frobenius_norm(rational_bound(p));
        rows.push_back(row);
    }
    return rows;
}

// Shapes of the published bounds this family covers. SampledDifference fixes
// M = [I -I] (the constraint int z = x(t) - x(t_k)); the other two keep the
// caller's constraint matrix and only pin how the measure enters.
enum class BoundShape { SampledDifference, DelayIntegral, DiscreteSum };

inline BoundProblem bound_instance(BoundShape shape, int n, double mu, Mat r,
                                   std::optional<Mat> m = std::nullopt) {
    if (shape == BoundShape::SampledDifference) {
        Mat mm(n, 2 * n);
        for (int i = 0; i < n; ++i) {
            mm(i, i) = 1.0;
            mm(i, n + i) = -1.0;
        }
        return BoundProblem(std::move(mm), std::move(r), mu);
    }
    if (!m.has_value()) {
        throw InvalidArgument("bound_instance: this shape requires a constraint matrix");
    }
    return BoundProblem(std::move(*m), std::move(r), mu);
}

// Discrete counterpart on a finite sample sequence y with sum y = M w and the
// counting measure (mu = number of samples).
struct DiscreteTrajectoryCheck {
    double true_sum = 0.0;
    double rational = 0.0;
    double affine = 0.0;
};

inline DiscreteTrajectoryCheck discrete_trajectory_check(const std::vector<VecValue>& y,
                                                         const Mat& r, const Mat& m,
                                                         const VecValue& w,
                                                         const Mat& slack) {
    if (y.empty()) throw EmptySupport("discrete_trajectory_check: empty sample sequence");
    const int n = r.rows();
    Vec sum(static_cast<std::size_t>(n), 0.0);
    double quad_sum = 0.0;
    for (const auto& yi : y) {
        if (static_cast<int>(yi.size()) != n) {
            throw DimensionMismatch("discrete_trajectory_check: sample dimension mismatch");
        }
        for (int c = 0; c < n; ++c) sum[static_cast<std::size_t>(c)] += yi[static_cast<std::size_t>(c)];
        quad_sum += quad_form(r, yi);
    }
    const Vec mw = mat_vec(m, w);
    for (int c = 0; c < n; ++c) {
        if (std::abs(sum[static_cast<std::size_t>(c)] - mw[static_cast<std::size_t>(c)]) > 1e-10) {
            throw ConstraintViolated("discrete_trajectory_check: sum of samples != M w");
        }
    }
    const double h = static_cast<double>(y.size());
    const BoundProblem p(m, r, h);
    DiscreteTrajectoryCheck out;
    out.true_sum = -quad_sum;
    out.rational = quad_form(rational_bound(p), w);
    out.affine = quad_form(affine_bound(p, slack), w);
    return out;
}

}  // namespace jgl
