#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "jgl/errors.hpp"
#include "jgl/functions.hpp"
#include "jgl/interval.hpp"
#include "jgl/partition.hpp"
#include "jgl/quadrature.hpp"

namespace jgl {

// Exact Jensen data of one fragment U for phi(z) = z^T z:
//   gap_unnormalized = mu(U) * int_U phi(f) - phi(int_U f)  >=  0.
// jensen_term is the per-fragment lower bound J = -phi(int_U f)/mu(U) whose
// sum approaches the functional S(U) = -int_U phi(f) under refinement.
struct FragmentGap {
    Interval fragment;
    double phi_integral = 0.0;       // int_U phi(f)
    double integral_sq = 0.0;        // phi(int_U f)
    double gap_unnormalized = 0.0;   // mu * phi_integral - integral_sq
    double jensen_term = 0.0;        // -integral_sq / mu
};

struct GapReport {
    std::vector<FragmentGap> fragments;
    double total_gap = 0.0;              // sum of per-fragment unnormalized gaps
    double e1 = 0.0;                     // (1/4) sum_j mu_j^2 phi(M^j - m^j)
    std::optional<double> e2;            // (1/4) sum_j mu_j^4 phi(sup |f'|); absent if
                                         // some fragment has a jump strictly inside
    double normalized_jensen_sum = 0.0;  // sum of jensen_term
    double exact_functional = 0.0;       // S(U) = -int_U phi(f)
};

inline FragmentGap fragment_gap(const FunctionSpec& f, Interval I) {
    const double mu = I.measure();
    if (!(mu > 0.0)) throw ZeroMeasure("fragment_gap: interval has zero measure");
    FragmentGap g;
    g.fragment = I;
    g.phi_integral = exact_phi_integral(f, I);
    double isq = 0.0;
    for (double v : exact_integral(f, I)) isq += v * v;
    g.integral_sq = isq;
    g.gap_unnormalized = mu * g.phi_integral - isq;
    g.jensen_term = -isq / mu;
    return g;
}

// (mu^2 / 4) * phi(M - m), the oscillation bound on the unnormalized gap.
inline double oscillation_bound(const FunctionSpec& f, Interval I) {
    const double mu = I.measure();
    if (!(mu > 0.0)) throw ZeroMeasure("oscillation_bound: interval has zero measure");
    const auto [lo, hi] = extrema(f, I);
    double osc_sq = 0.0;
    for (std::size_t c = 0; c < lo.size(); ++c) {
        const double d = hi[c] - lo[c];
        osc_sq += d * d;
    }
    return 0.25 * mu * mu * osc_sq;
}

// (mu^4 / 4) * phi(sup |f'|), valid when f is differentiable a.e. on I.
inline double derivative_bound(const FunctionSpec& f, Interval I) {
    const double mu = I.measure();
    if (!(mu > 0.0)) throw ZeroMeasure("derivative_bound: interval has zero measure");
    const VecValue s = deriv_sup(f, I);
    double sum = 0.0;
    for (double v : s) sum += v * v;
    return 0.25 * mu * mu * mu * mu * sum;
}

namespace detail {

inline bool jump_strictly_inside(const FunctionSpec& f, Interval I) {
    for (double d : f.discontinuities()) {
        if (I.strictly_inside(d)) return true;
    }
    return false;
}

}  // namespace detail

// Per-fragment gaps plus the two aggregate upper bounds. e2 is reported as
// absent (not zero) when any fragment contains a jump strictly inside; the
// remaining fields are still filled in.
inline GapReport fragmented_report(const FunctionSpec& f, const Partition& p) {
    GapReport r;
    r.fragments.reserve(static_cast<std::size_t>(p.fragment_count()));
    double e2_sum = 0.0;
    bool e2_defined = true;
    for (int i = 0; i < p.fragment_count(); ++i) {
        const Interval u = p.fragment(i);
        FragmentGap g = fragment_gap(f, u);
        r.total_gap += g.gap_unnormalized;
        r.normalized_jensen_sum += g.jensen_term;
        r.exact_functional -= g.phi_integral;
        r.e1 += oscillation_bound(f, u);
        if (e2_defined) {
            if (detail::jump_strictly_inside(f, u)) {
                e2_defined = false;
            } else {
                e2_sum += derivative_bound(f, u);
            }
        }
        r.fragments.push_back(std::move(g));
    }
    if (e2_defined) r.e2 = e2_sum;
    return r;
}

// Uniform-fragmentation bound (mu^2 / 4N) * phi(theta) where theta_i is the
// largest per-fragment oscillation of component i over the N-fragment
// uniform partition.
inline double e1_uniform(const FunctionSpec& f, Interval I, int n) {
    const Partition p = Partition::uniform(I, n);
    VecValue theta(static_cast<std::size_t>(f.dimension()), 0.0);
    for (int j = 0; j < n; ++j) {
        const auto [lo, hi] = extrema(f, p.fragment(j));
        for (std::size_t c = 0; c < theta.size(); ++c) {
            theta[c] = std::max(theta[c], hi[c] - lo[c]);
        }
    }
    double phi = 0.0;
    for (double v : theta) phi += v * v;
    const double mu = I.measure();
    return mu * mu / (4.0 * n) * phi;
}

// (mu^4 / 4N^3) * phi(eta) with eta_i the largest per-fragment sup |f_i'|.
inline double e2_uniform(const FunctionSpec& f, Interval I, int n) {
    const Partition p = Partition::uniform(I, n);
    VecValue eta(static_cast<std::size_t>(f.dimension()), 0.0);
    for (int j = 0; j < n; ++j) {
        const VecValue s = deriv_sup(f, p.fragment(j));
        for (std::size_t c = 0; c < eta.size(); ++c) eta[c] = std::max(eta[c], s[c]);
    }
    double phi = 0.0;
    for (double v : eta) phi += v * v;
    const double mu = I.measure();
    const double n3 = static_cast<double>(n) * n * n;
    return mu * mu * mu * mu / (4.0 * n3) * phi;
}

// Variants with theta / eta frozen to their whole-interval values. These are
// the sequences that satisfy the exact recurrence factors (1 - 1/N) and
// ((N-1)/N)^3; the per-partition variants above tighten with N and do not.
inline double e1_uniform_global(const FunctionSpec& f, Interval I, int n) {
    if (n < 1) throw InvalidCount("e1_uniform_global: fragment count must be >= 1");
    return oscillation_bound(f, I) / n;
}

inline double e2_uniform_global(const FunctionSpec& f, Interval I, int n) {
    if (n < 1) throw InvalidCount("e2_uniform_global: fragment count must be >= 1");
    const double n3 = static_cast<double>(n) * n * n;
    return derivative_bound(f, I) / n3;
}

// One step of the bound recurrences: the predicted e(N) from e(N-1).
inline double e1_recurrence(int n, double previous) {
    if (n <= 1) throw InvalidCount("e1_recurrence: requires N > 1");
    return (1.0 - 1.0 / n) * previous;
}

inline double e2_recurrence(int n, double previous) {
    if (n <= 1) throw InvalidCount("e2_recurrence: requires N > 1");
    const double nn = static_cast<double>(n);
    return (1.0 + (-3.0 * nn * nn + 3.0 * nn - 1.0) / (nn * nn * nn)) * previous;
}

// Closed forms for f(t) = e^{alpha t} on [0, 1]:
//   exact      = -int_0^1 e^{2 alpha t} dt = (1 - e^{2 alpha}) / (2 alpha)
//   jensen_sum = -(1/h) sum_i (int_{ih}^{(i+1)h} e^{alpha t} dt)^2, h = 1/N
//              = -N (1 - e^{alpha/N})(1 - e^{2 alpha}) / (alpha^2 (1 + e^{alpha/N}))
// Both tend to -1 as alpha -> 0; alphas below 1e-8 in magnitude are mapped to
// that limit to avoid cancellation.
struct ExponentialClosedForms {
    double exact = 0.0;
    double jensen_sum = 0.0;
};

inline ExponentialClosedForms exponential_closed_forms(double alpha, int n) {
    if (n < 1) throw InvalidCount("exponential_closed_forms: fragment count must be >= 1");
    if (std::abs(alpha) < 1e-8) return {-1.0, -1.0};
    ExponentialClosedForms r;
    r.exact = (1.0 - std::exp(2.0 * alpha)) / (2.0 * alpha);
    const double q = std::exp(alpha / n);
    r.jensen_sum =
        -n * (1.0 - q) * (1.0 - std::exp(2.0 * alpha)) / (alpha * alpha * (1.0 + q));
    return r;
}

// Both sides of the Gruss inequality for scalar f, g on I:
//   lhs = | <f,g>/mu - <f,1><g,1>/mu^2 |,   rhs = (1/4) delta_f delta_g.
struct GrussResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack() const { return rhs - lhs; }
};

inline GrussResult gruss_check(const FunctionSpec& f, const FunctionSpec& g, Interval I,
                               double tol = 1e-12) {
    if (f.dimension() != 1 || g.dimension() != 1) {
        throw DimensionMismatch("gruss_check: scalar functions required");
    }
    const double mu = I.measure();
    if (!(mu > 0.0)) throw ZeroMeasure("gruss_check: interval has zero measure");
    const double fg = integrate_product(f, g, I, tol);
    const double fi = exact_integral(f, I)[0];
    const double gi = exact_integral(g, I)[0];
    GrussResult r;
    r.lhs = std::abs(fg / mu - fi * gi / (mu * mu));
    const auto [fm, fM] = extrema(f, I);
    const auto [gm, gM] = extrema(g, I);
    r.rhs = 0.25 * (fM[0] - fm[0]) * (gM[0] - gm[0]);
    return r;
}

// Discrete Jensen gap under a nonnegative weight sequence, with the direct
// two-point oscillation bound over the support.
struct DiscreteGap {
    double gap = 0.0;
    double bound = 0.0;
};

inline DiscreteGap discrete_gap(const std::vector<VecValue>& values,
                                const std::vector<double>& weights) {
    if (values.size() != weights.size()) {
        throw DimensionMismatch("discrete_gap: values/weights length mismatch");
    }
    double mu = 0.0;
    std::size_t support = 0;
    for (double w : weights) {
        if (w < 0.0) throw InvalidArgument("discrete_gap: negative weight");
        if (w > 0.0) ++support;
        mu += w;
    }
    if (support == 0) throw EmptySupport("discrete_gap: no positive weight");
    const std::size_t dim = values.front().size();
    VecValue sum(dim, 0.0), lo(dim, 0.0), hi(dim, 0.0);
    bool first = true;
    double phi_sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i].size() != dim) {
            throw DimensionMismatch("discrete_gap: ragged value dimensions");
        }
        const double w = weights[i];
        if (w == 0.0) continue;
        double sq = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
            const double v = values[i][c];
            sum[c] += v * w;
            sq += v * v;
            if (first) {
                lo[c] = hi[c] = v;
            } else {
                lo[c] = std::min(lo[c], v);
                hi[c] = std::max(hi[c], v);
            }
        }
        first = false;
        phi_sum += sq * w;
    }
    double mean_sq = 0.0, osc = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
        mean_sq += sum[c] * sum[c];
        const double d = hi[c] - lo[c];
        osc += d * d;
    }
    return {mu * phi_sum - mean_sq, 0.25 * mu * mu * osc};
}

enum class SchemeKind { Uniform, Geometric };

struct Scheme {
    SchemeKind kind = SchemeKind::Uniform;
    double eps = 1e-4;  // geometric decay parameter
};

struct ScanRow {
    int n = 0;
    double jensen_sum = 0.0;
    double exact = 0.0;
    double normalized = 0.0;  // jensen_sum / exact
    double gap = 0.0;
    double e1 = 0.0;
    std::optional<double> e2;
    std::optional<double> ratio_next;  // (J_{N+1} - J) / (J_N - J)
};

// Fragment count sweep N = 1..n_max under the requested scheme. Rows are
// ordered by N; ratio_next of the last row is absent.
inline std::vector<ScanRow> convergence_scan(const FunctionSpec& f, Interval I,
                                             Scheme scheme, int n_max) {
    if (n_max < 2) throw InvalidCount("convergence_scan: n_max must be >= 2");
    const double exact = -exact_phi_integral(f, I);
    std::vector<ScanRow> rows;
    rows.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        const Partition p = scheme.kind == SchemeKind::Uniform
                                ? Partition::uniform(I, n)
                                : Partition::geometric(I, n, scheme.eps);
        const GapReport rep = fragmented_report(f, p);
        ScanRow row;
        row.n = n;
        row.jensen_sum = rep.normalized_jensen_sum;
        row.exact = exact;
        row.normalized = rep.normalized_jensen_sum / exact;
        row.gap = rep.total_gap;
        row.e1 = rep.e1;
        row.e2 = rep.e2;
        rows.push_back(row);
    }
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        rows[i].ratio_next =
            (rows[i + 1].jensen_sum - exact) / (rows[i].jensen_sum - exact);
    }
    return rows;
}

}  // namespace jgl
