#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "jgl/errors.hpp"
#include "jgl/functions.hpp"
#include "jgl/interval.hpp"

namespace jgl {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;  // absolute, accumulated from Richardson terms
    long subdivisions = 0;        // leaf panel count
};

namespace detail {

constexpr int kMaxQuadDepth = 60;

template <class F>
double simpson_recurse(const F& g, double a, double fa, double b, double fb, double m,
                       double fm, double whole, double tol, int depth, double& err_acc,
                       long& leaves) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = g(lm);
    const double frm = g(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = (left + right - whole) / 15.0;
    // stop at the requested tolerance, or once the correction is dominated by
    // rounding noise of the panel sums (an absolute tol below that floor is
    // unreachable for large-magnitude integrands)
    const double rounding_floor = 64.0 * std::numeric_limits<double>::epsilon() *
                                  (std::abs(left) + std::abs(right));
    if (std::abs(err) <= tol || std::abs(err) <= rounding_floor) {
        err_acc += std::abs(err);
        leaves += 2;
        return left + right + err;  // Richardson extrapolation
    }
    if (depth <= 0) {
        throw MaxDepthExceeded("integrate: recursion depth limit reached");
    }
    return simpson_recurse(g, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, err_acc,
                           leaves) +
           simpson_recurse(g, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, err_acc,
                           leaves);
}

// One smooth panel with caller-supplied endpoint values, so the caller can
// substitute one-sided limits when the panel boundary is a jump point.
template <class F>
double adaptive_panel(const F& g, double a, double fa, double b, double fb, double tol,
                      double& err_acc, long& leaves) {
    const double m = 0.5 * (a + b);
    const double fm = g(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_recurse(g, a, fa, b, fb, m, fm, whole, tol, kMaxQuadDepth, err_acc,
                           leaves);
}

inline std::vector<double> interior_breakpoints(std::vector<double> pts, Interval I) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<double> out;
    for (double p : pts)
        if (I.strictly_inside(p)) out.push_back(p);
    return out;
}

}  // namespace detail

// Adaptive composite Simpson with Richardson error control. The interval is
// pre-split at the given breakpoints so the integrand is smooth on every
// panel; each panel receives the share of tol proportional to its length. At
// an interior breakpoint the panel-edge values are sampled one ulp inside the
// panel: the integrand may jump exactly there, and each panel must see its
// own one-sided limit.
template <class F>
QuadResult integrate_scalar(F&& g, Interval I, std::vector<double> breakpoints,
                            double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("integrate_scalar: tol must be positive");
    QuadResult r;
    if (I.measure() == 0.0) {
        r.subdivisions = 1;
        return r;
    }
    const auto cuts = detail::interior_breakpoints(std::move(breakpoints), I);
    std::vector<double> nodes{I.a};
    nodes.insert(nodes.end(), cuts.begin(), cuts.end());
    nodes.push_back(I.b);

    const double total = I.measure();
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double a = nodes[i];
        const double b = nodes[i + 1];
        const double fa = g(i == 0 ? a : std::nextafter(a, b));
        const double fb = g(i + 2 == nodes.size() ? b : std::nextafter(b, a));
        const double panel_tol = tol * ((b - a) / total);
        r.value += detail::adaptive_panel(g, a, fa, b, fb, panel_tol, r.error_estimate,
                                          r.subdivisions);
    }
    r.subdivisions = std::max(r.subdivisions, 1L);
    return r;
}

namespace detail {

// Breakpoints where a catalog function is not smooth: jumps and kinks.
inline std::vector<double> smoothness_breakpoints(const FunctionSpec& f) {
    std::vector<double> pts = f.discontinuities();
    const auto kinks = f.kink_points();
    pts.insert(pts.end(), kinks.begin(), kinks.end());
    return pts;
}

// Panel-based integration of a catalog-function expression, using the right
// limit at the left panel edge and the left limit at the right panel edge so
// that every closed panel sees a continuous integrand.
template <class EvalRight, class EvalLeft>
QuadResult integrate_spec_expr(const EvalRight& ev, const EvalLeft& ev_left, Interval I,
                               std::vector<double> breakpoints, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("integrate: tol must be positive");
    QuadResult r;
    if (I.measure() == 0.0) {
        r.subdivisions = 1;
        return r;
    }
    const auto cuts = interior_breakpoints(std::move(breakpoints), I);
    std::vector<double> nodes{I.a};
    nodes.insert(nodes.end(), cuts.begin(), cuts.end());
    nodes.push_back(I.b);
    const double total = I.measure();
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double a = nodes[i];
        const double b = nodes[i + 1];
        const double panel_tol = tol * ((b - a) / total);
        r.value += adaptive_panel(ev, a, ev(a), b, ev_left(b), panel_tol,
                                  r.error_estimate, r.subdivisions);
    }
    r.subdivisions = std::max(r.subdivisions, 1L);
    return r;
}

}  // namespace detail

// Componentwise integral of f over I; the declared discontinuities and kinks
// become panel boundaries, so every panel integrand is smooth.
inline VecValue integrate_vector(const FunctionSpec& f, Interval I, double tol = 1e-10) {
    const auto cuts = detail::smoothness_breakpoints(f);
    VecValue out(static_cast<std::size_t>(f.dimension()));
    for (int c = 0; c < f.dimension(); ++c) {
        out[static_cast<std::size_t>(c)] =
            detail::integrate_spec_expr([&](double t) { return f.eval_component(c, t); },
                                        [&](double t) { return f.eval_component_left(c, t); },
                                        I, cuts, tol)
                .value;
    }
    return out;
}

// Integral of phi(f(s)) = f(s)^T f(s) over I.
inline double integrate_phi(const FunctionSpec& f, Interval I, double tol = 1e-10) {
    const auto cuts = detail::smoothness_breakpoints(f);
    const int n = f.dimension();
    const auto sq = [n](const auto& get, double t) {
        double s = 0.0;
        for (int c = 0; c < n; ++c) {
            const double v = get(c, t);
            s += v * v;
        }
        return s;
    };
    return detail::integrate_spec_expr(
               [&](double t) {
                   return sq([&](int c, double u) { return f.eval_component(c, u); }, t);
               },
               [&](double t) {
                   return sq([&](int c, double u) { return f.eval_component_left(c, u); }, t);
               },
               I, cuts, tol)
        .value;
}

// Integral of the product of two scalar catalog functions over I.
inline double integrate_product(const FunctionSpec& f, const FunctionSpec& g, Interval I,
                                double tol = 1e-10) {
    if (f.dimension() != 1 || g.dimension() != 1) {
        throw DimensionMismatch("integrate_product: scalar functions required");
    }
    auto cuts = detail::smoothness_breakpoints(f);
    const auto more = detail::smoothness_breakpoints(g);
    cuts.insert(cuts.end(), more.begin(), more.end());
    return detail::integrate_spec_expr(
               [&](double t) { return f.eval_component(0, t) * g.eval_component(0, t); },
               [&](double t) {
                   return f.eval_component_left(0, t) * g.eval_component_left(0, t);
               },
               I, cuts, tol)
        .value;
}

}  // namespace jgl
