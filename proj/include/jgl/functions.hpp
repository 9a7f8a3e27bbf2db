#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "jgl/errors.hpp"
#include "jgl/interval.hpp"
#include "jgl/matrix.hpp"

namespace jgl {

using VecValue = std::vector<double>;

enum class FunctionKind { Exponential, Signum, Polynomial, Sine, PiecewiseLinear };

namespace detail {

inline double poly_eval(const std::vector<double>& c, double t) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i];
    return v;
}

inline std::vector<double> poly_derivative(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    return d;
}

inline std::vector<double> poly_antiderivative(const std::vector<double>& c) {
    std::vector<double> a(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) a[i + 1] = c[i] / static_cast<double>(i + 1);
    return a;
}

inline std::vector<double> poly_multiply(const std::vector<double>& x,
                                         const std::vector<double>& y) {
    std::vector<double> p(x.size() + y.size() - 1, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) p[i + j] += x[i] * y[j];
    return p;
}

inline int poly_degree(const std::vector<double>& c) {
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] != 0.0) return static_cast<int>(i);
    }
    return -1;  // zero polynomial
}

// Sign-crossing roots of a polynomial inside (lo, hi), found by recursing on
// the derivative: between consecutive critical points the polynomial is
// monotone, so bisection on each sign change finds every crossing. Roots
// where the polynomial touches zero without changing sign are not reported;
// they are never strict extrema of the antiderivative, which is all this
// routine is used for.
inline void poly_crossing_roots(const std::vector<double>& c, double lo, double hi,
                                std::vector<double>& out) {
    const int deg = poly_degree(c);
    if (deg <= 0 || !(lo < hi)) return;
    if (deg == 1) {
        const double r = -c[0] / c[1];
        if (r > lo && r < hi) out.push_back(r);
        return;
    }
    std::vector<double> nodes{lo};
    poly_crossing_roots(poly_derivative(c), lo, hi, nodes);
    nodes.push_back(hi);
    std::sort(nodes.begin(), nodes.end());
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        double x0 = nodes[i], x1 = nodes[i + 1];
        double v0 = poly_eval(c, x0), v1 = poly_eval(c, x1);
        if (v0 == 0.0) {
            if (x0 > lo) out.push_back(x0);
            continue;
        }
        if (v1 == 0.0 || v0 * v1 > 0.0) continue;
        for (int it = 0; it < 200 && x1 - x0 > 0.0; ++it) {
            const double xm = 0.5 * (x0 + x1);
            if (xm <= x0 || xm >= x1) break;
            const double vm = poly_eval(c, xm);
            if (vm == 0.0) {
                x0 = x1 = xm;
                break;
            }
            if (v0 * vm < 0.0) {
                x1 = xm;
            } else {
                x0 = xm;
                v0 = vm;
            }
        }
        out.push_back(0.5 * (x0 + x1));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

// min/max of a polynomial over [lo, hi] via endpoints and interior critical
// points (sign-crossing roots of the derivative).
inline std::pair<double, double> poly_range(const std::vector<double>& c, double lo,
                                            double hi) {
    std::vector<double> cand{lo, hi};
    poly_crossing_roots(poly_derivative(c), lo, hi, cand);
    double mn = poly_eval(c, cand[0]);
    double mx = mn;
    for (std::size_t i = 1; i < cand.size(); ++i) {
        const double v = poly_eval(c, cand[i]);
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    return {mn, mx};
}

}  // namespace detail

// A vector-valued test function f: R -> R^n from a fixed catalog, each kind
// carrying closed forms for the integral of f, the integral of |f|^2, the
// componentwise extrema and the componentwise sup |f'|. Exponential, Signum
// and Sine share one scalar profile scaled per component by an amplitude
// vector; Polynomial and PiecewiseLinear carry per-component data. The
// catalog is closed under left-multiplication by a matrix, which is what
// reduce_quadratic relies on.
//
// Convention at a jump: eval() returns the right limit. Integrals are
// unaffected (measure zero) and extrema are essential (almost-everywhere)
// extrema, so the jump-point value never leaks into any bound.
class FunctionSpec {
  public:
    static FunctionSpec exponential(double alpha, VecValue amplitudes = {1.0}) {
        FunctionSpec f(FunctionKind::Exponential, std::move(amplitudes));
        f.alpha_ = alpha;
        return f;
    }

    static FunctionSpec signum(double center, VecValue amplitudes = {1.0}) {
        FunctionSpec f(FunctionKind::Signum, std::move(amplitudes));
        f.center_ = center;
        f.discontinuities_ = {center};
        return f;
    }

    static FunctionSpec sine(double frequency, double phase, VecValue amplitudes = {1.0}) {
        FunctionSpec f(FunctionKind::Sine, std::move(amplitudes));
        f.omega_ = frequency;
        f.phase_ = phase;
        return f;
    }

    // coeffs[c] holds ascending coefficients of component c.
    static FunctionSpec polynomial(std::vector<std::vector<double>> coeffs) {
        if (coeffs.empty()) throw InvalidArgument("polynomial: no components");
        for (auto& c : coeffs) {
            if (c.empty()) c = {0.0};
        }
        FunctionSpec f(FunctionKind::Polynomial, {});
        f.coeffs_ = std::move(coeffs);
        return f;
    }

    // values_at_knots[k] is the vector value at knots[k]; the function is
    // linear between knots and constant outside their span.
    static FunctionSpec piecewise_linear(std::vector<double> knots,
                                         std::vector<std::vector<double>> values_at_knots) {
        if (knots.size() < 2) throw InvalidArgument("piecewise_linear: need >= 2 knots");
        if (values_at_knots.size() != knots.size()) {
            throw DimensionMismatch("piecewise_linear: one value row per knot required");
        }
        for (std::size_t i = 1; i < knots.size(); ++i) {
            if (!(knots[i] > knots[i - 1])) {
                throw NotIncreasing("piecewise_linear: knots must be strictly increasing");
            }
        }
        const std::size_t dim = values_at_knots.front().size();
        if (dim == 0) throw InvalidArgument("piecewise_linear: empty value rows");
        FunctionSpec f(FunctionKind::PiecewiseLinear, {});
        f.knots_ = std::move(knots);
        f.knot_values_.assign(dim, std::vector<double>(f.knots_.size()));
        for (std::size_t k = 0; k < values_at_knots.size(); ++k) {
            if (values_at_knots[k].size() != dim) {
                throw DimensionMismatch("piecewise_linear: ragged value rows");
            }
            for (std::size_t c = 0; c < dim; ++c) f.knot_values_[c][k] = values_at_knots[k][c];
        }
        return f;
    }

    static FunctionSpec constant(double value, int dimension = 1) {
        std::vector<std::vector<double>> coeffs(static_cast<std::size_t>(dimension), {value});
        return polynomial(std::move(coeffs));
    }

    FunctionKind kind() const { return kind_; }

    int dimension() const {
        switch (kind_) {
            case FunctionKind::Polynomial:
                return static_cast<int>(coeffs_.size());
            case FunctionKind::PiecewiseLinear:
                return static_cast<int>(knot_values_.size());
            default:
                return static_cast<int>(amplitudes_.size());
        }
    }

    const std::vector<double>& discontinuities() const { return discontinuities_; }

    // Weak-derivative points (kinks): the derivative jumps there but the
    // function itself is continuous.
    std::vector<double> kink_points() const {
        if (kind_ == FunctionKind::PiecewiseLinear) return knots_;
        return {};
    }

    double alpha() const { return alpha_; }
    double center() const { return center_; }
    double frequency() const { return omega_; }
    double phase() const { return phase_; }
    const VecValue& amplitudes() const { return amplitudes_; }
    const std::vector<std::vector<double>>& coefficients() const { return coeffs_; }
    const std::vector<double>& knots() const { return knots_; }
    const std::vector<std::vector<double>>& knot_values() const { return knot_values_; }

    double eval_component(int comp, double t) const {
        const auto c = static_cast<std::size_t>(comp);
        switch (kind_) {
            case FunctionKind::Exponential:
                return amplitudes_[c] * std::exp(alpha_ * t);
            case FunctionKind::Signum:
                return amplitudes_[c] * (t >= center_ ? 1.0 : -1.0);
            case FunctionKind::Sine:
                return amplitudes_[c] * std::sin(omega_ * t + phase_);
            case FunctionKind::Polynomial:
                return detail::poly_eval(coeffs_[c], t);
            case FunctionKind::PiecewiseLinear:
                return pwl_value(c, t);
        }
        return 0.0;
    }

    // Left limit; differs from eval_component only at a jump.
    double eval_component_left(int comp, double t) const {
        if (kind_ == FunctionKind::Signum) {
            return amplitudes_[static_cast<std::size_t>(comp)] * (t > center_ ? 1.0 : -1.0);
        }
        return eval_component(comp, t);
    }

    // Almost-everywhere derivative; right limit at kinks, zero at jumps.
    double deriv_component(int comp, double t) const {
        const auto c = static_cast<std::size_t>(comp);
        switch (kind_) {
            case FunctionKind::Exponential:
                return amplitudes_[c] * alpha_ * std::exp(alpha_ * t);
            case FunctionKind::Signum:
                return 0.0;
            case FunctionKind::Sine:
                return amplitudes_[c] * omega_ * std::cos(omega_ * t + phase_);
            case FunctionKind::Polynomial:
                return detail::poly_eval(detail::poly_derivative(coeffs_[c]), t);
            case FunctionKind::PiecewiseLinear:
                return pwl_slope_right(c, t);
        }
        return 0.0;
    }

    double deriv_component_left(int comp, double t) const {
        if (kind_ == FunctionKind::PiecewiseLinear) {
            return pwl_slope_left(static_cast<std::size_t>(comp), t);
        }
        return deriv_component(comp, t);
    }

  private:
    FunctionSpec(FunctionKind kind, VecValue amplitudes)
        : kind_(kind), amplitudes_(std::move(amplitudes)) {
        switch (kind_) {
            case FunctionKind::Exponential:
            case FunctionKind::Signum:
            case FunctionKind::Sine:
                if (amplitudes_.empty()) {
                    throw InvalidArgument("function spec: empty amplitude vector");
                }
                break;
            default:
                break;
        }
    }

    // Index of the segment whose left knot is at or before t (clamped).
    std::size_t pwl_segment(double t) const {
        const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
        if (it == knots_.begin()) return 0;
        const std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
        return std::min(i, knots_.size() - 2);
    }

    double pwl_value(std::size_t c, double t) const {
        const auto& y = knot_values_[c];
        if (t <= knots_.front()) return y.front();
        if (t >= knots_.back()) return y.back();
        const std::size_t i = pwl_segment(t);
        const double w = (t - knots_[i]) / (knots_[i + 1] - knots_[i]);
        return y[i] + w * (y[i + 1] - y[i]);
    }

    double pwl_slope(std::size_t c, std::size_t seg) const {
        const auto& y = knot_values_[c];
        return (y[seg + 1] - y[seg]) / (knots_[seg + 1] - knots_[seg]);
    }

    double pwl_slope_right(std::size_t c, double t) const {
        if (t < knots_.front() || t >= knots_.back()) return 0.0;
        return pwl_slope(c, pwl_segment(t));
    }

    double pwl_slope_left(std::size_t c, double t) const {
        if (t <= knots_.front() || t > knots_.back()) return 0.0;
        const auto it = std::lower_bound(knots_.begin(), knots_.end(), t);
        std::size_t i = static_cast<std::size_t>(it - knots_.begin());
        if (i >= 1) i -= 1;  // segment ending at or after t, approached from the left
        return pwl_slope(c, std::min(i, knots_.size() - 2));
    }

    friend FunctionSpec reduce_quadratic(const Mat&, const FunctionSpec&);
    friend VecValue exact_integral(const FunctionSpec&, Interval);
    friend double exact_phi_integral(const FunctionSpec&, Interval);
    friend std::pair<VecValue, VecValue> extrema(const FunctionSpec&, Interval);
    friend VecValue deriv_sup(const FunctionSpec&, Interval);

    FunctionKind kind_;
    double alpha_ = 0.0;
    double center_ = 0.0;
    double omega_ = 0.0;
    double phase_ = 0.0;
    VecValue amplitudes_;
    std::vector<std::vector<double>> coeffs_;
    std::vector<double> knots_;
    std::vector<std::vector<double>> knot_values_;  // [component][knot]
    std::vector<double> discontinuities_;
};

inline VecValue eval(const FunctionSpec& f, double t) {
    VecValue out(static_cast<std::size_t>(f.dimension()));
    for (int c = 0; c < f.dimension(); ++c) out[static_cast<std::size_t>(c)] = f.eval_component(c, t);
    return out;
}

inline VecValue eval_left(const FunctionSpec& f, double t) {
    VecValue out(static_cast<std::size_t>(f.dimension()));
    for (int c = 0; c < f.dimension(); ++c)
        out[static_cast<std::size_t>(c)] = f.eval_component_left(c, t);
    return out;
}

inline VecValue eval_derivative(const FunctionSpec& f, double t) {
    VecValue out(static_cast<std::size_t>(f.dimension()));
    for (int c = 0; c < f.dimension(); ++c)
        out[static_cast<std::size_t>(c)] = f.deriv_component(c, t);
    return out;
}

namespace detail {

// Antiderivative of the shared scalar profile of Exponential/Signum/Sine.
inline double profile_antiderivative(const FunctionSpec& f, double t) {
    switch (f.kind()) {
        case FunctionKind::Exponential:
            return f.alpha() != 0.0 ? std::exp(f.alpha() * t) / f.alpha() : t;
        case FunctionKind::Signum:
            return std::abs(t - f.center());
        case FunctionKind::Sine:
            return f.frequency() != 0.0
                       ? -std::cos(f.frequency() * t + f.phase()) / f.frequency()
                       : std::sin(f.phase()) * t;
        default:
            throw InvalidArgument("profile_antiderivative: kind has no scalar profile");
    }
}

// Antiderivative of the squared scalar profile.
inline double profile_sq_antiderivative(const FunctionSpec& f, double t) {
    switch (f.kind()) {
        case FunctionKind::Exponential:
            return f.alpha() != 0.0 ? std::exp(2.0 * f.alpha() * t) / (2.0 * f.alpha()) : t;
        case FunctionKind::Signum:
            return t;  // sgn^2 = 1 a.e.
        case FunctionKind::Sine: {
            const double w = f.frequency();
            if (w == 0.0) {
                const double s = std::sin(f.phase());
                return s * s * t;
            }
            // sin^2(u) = 1/2 - cos(2u)/2
            return 0.5 * t - std::sin(2.0 * (w * t + f.phase())) / (4.0 * w);
        }
        default:
            throw InvalidArgument("profile_sq_antiderivative: kind has no scalar profile");
    }
}

// Essential extrema of the scalar profile over [a, b].
inline std::pair<double, double> profile_range(const FunctionSpec& f, double a, double b) {
    switch (f.kind()) {
        case FunctionKind::Exponential: {
            const double va = std::exp(f.alpha() * a);
            const double vb = std::exp(f.alpha() * b);
            return {std::min(va, vb), std::max(va, vb)};
        }
        case FunctionKind::Signum: {
            const double c = f.center();
            if (b <= c) return {-1.0, -1.0};
            if (a >= c) return {1.0, 1.0};
            return {-1.0, 1.0};
        }
        case FunctionKind::Sine: {
            const double w = f.frequency();
            if (w == 0.0) {
                const double v = std::sin(f.phase());
                return {v, v};
            }
            double u1 = w * a + f.phase();
            double u2 = w * b + f.phase();
            if (u1 > u2) std::swap(u1, u2);
            const double pi = 3.14159265358979323846;
            double mx = std::max(std::sin(u1), std::sin(u2));
            double mn = std::min(std::sin(u1), std::sin(u2));
            // peak at pi/2 + 2k*pi inside [u1, u2]?
            if (std::ceil((u1 - 0.5 * pi) / (2.0 * pi)) <= std::floor((u2 - 0.5 * pi) / (2.0 * pi)))
                mx = 1.0;
            if (std::ceil((u1 + 0.5 * pi) / (2.0 * pi)) <= std::floor((u2 + 0.5 * pi) / (2.0 * pi)))
                mn = -1.0;
            return {mn, mx};
        }
        default:
            throw InvalidArgument("profile_range: kind has no scalar profile");
    }
}

// sup |profile'| over [a, b]; throws for a jump strictly inside.
inline double profile_deriv_sup(const FunctionSpec& f, double a, double b) {
    switch (f.kind()) {
        case FunctionKind::Exponential: {
            const double al = f.alpha();
            if (al == 0.0) return 0.0;
            return std::abs(al) * std::exp(al * (al > 0.0 ? b : a));
        }
        case FunctionKind::Signum:
            if (f.center() > a && f.center() < b) {
                throw DiscontinuityInside("deriv_sup: signum jump strictly inside interval");
            }
            return 0.0;  // constant a.e. on the interval
        case FunctionKind::Sine: {
            const double w = f.frequency();
            if (w == 0.0) return 0.0;
            double u1 = w * a + f.phase();
            double u2 = w * b + f.phase();
            if (u1 > u2) std::swap(u1, u2);
            const double pi = 3.14159265358979323846;
            double m = std::max(std::abs(std::cos(u1)), std::abs(std::cos(u2)));
            // |cos| peaks at multiples of pi
            if (std::ceil(u1 / pi) <= std::floor(u2 / pi)) m = 1.0;
            return std::abs(w) * m;
        }
        default:
            throw InvalidArgument("profile_deriv_sup: kind has no scalar profile");
    }
}

// Walk the smooth linear pieces of a pwl component restricted to [a, b],
// calling visit(p, q, value_at_p, slope) for each piece of positive length.
template <class Visit>
void pwl_walk(const std::vector<double>& knots, const std::vector<double>& y, double a,
              double b, Visit&& visit) {
    const double x0 = knots.front();
    const double xn = knots.back();
    if (a < std::min(b, x0)) visit(a, std::min(b, x0), y.front(), 0.0);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double p = std::max(a, knots[i]);
        const double q = std::min(b, knots[i + 1]);
        if (p >= q) continue;
        const double slope = (y[i + 1] - y[i]) / (knots[i + 1] - knots[i]);
        visit(p, q, y[i] + slope * (p - knots[i]), slope);
    }
    if (b > std::max(a, xn)) visit(std::max(a, xn), b, y.back(), 0.0);
}

}  // namespace detail

// Componentwise exact integral over I by antiderivative differences; the
// signum case goes through |t - center|, which handles the jump piecewise.
inline VecValue exact_integral(const FunctionSpec& f, Interval I) {
    const int n = f.dimension();
    VecValue out(static_cast<std::size_t>(n), 0.0);
    switch (f.kind()) {
        case FunctionKind::Exponential:
        case FunctionKind::Signum:
        case FunctionKind::Sine: {
            const double g = detail::profile_antiderivative(f, I.b) -
                             detail::profile_antiderivative(f, I.a);
            for (int c = 0; c < n; ++c) out[static_cast<std::size_t>(c)] = f.amplitudes_[static_cast<std::size_t>(c)] * g;
            return out;
        }
        case FunctionKind::Polynomial: {
            for (int c = 0; c < n; ++c) {
                const auto anti = detail::poly_antiderivative(f.coeffs_[static_cast<std::size_t>(c)]);
                out[static_cast<std::size_t>(c)] =
                    detail::poly_eval(anti, I.b) - detail::poly_eval(anti, I.a);
            }
            return out;
        }
        case FunctionKind::PiecewiseLinear: {
            for (int c = 0; c < n; ++c) {
                double acc = 0.0;
                detail::pwl_walk(f.knots_, f.knot_values_[static_cast<std::size_t>(c)], I.a, I.b,
                                 [&](double p, double q, double vp, double s) {
                                     const double len = q - p;
                                     acc += len * (vp + 0.5 * s * len);
                                 });
                out[static_cast<std::size_t>(c)] = acc;
            }
            return out;
        }
    }
    return out;
}

// Exact integral of phi(f(s)) = f(s)^T f(s) over I.
inline double exact_phi_integral(const FunctionSpec& f, Interval I) {
    switch (f.kind()) {
        case FunctionKind::Exponential:
        case FunctionKind::Signum:
        case FunctionKind::Sine: {
            double amp_sq = 0.0;
            for (double a : f.amplitudes_) amp_sq += a * a;
            return amp_sq * (detail::profile_sq_antiderivative(f, I.b) -
                             detail::profile_sq_antiderivative(f, I.a));
        }
        case FunctionKind::Polynomial: {
            double acc = 0.0;
            for (const auto& c : f.coeffs_) {
                const auto anti = detail::poly_antiderivative(detail::poly_multiply(c, c));
                acc += detail::poly_eval(anti, I.b) - detail::poly_eval(anti, I.a);
            }
            return acc;
        }
        case FunctionKind::PiecewiseLinear: {
            double acc = 0.0;
            for (const auto& y : f.knot_values_) {
                detail::pwl_walk(f.knots_, y, I.a, I.b,
                                 [&](double p, double q, double vp, double s) {
                                     const double len = q - p;
                                     acc += len * (vp * vp + s * vp * len +
                                                   s * s * len * len / 3.0);
                                 });
            }
            return acc;
        }
    }
    return 0.0;
}

// Componentwise essential infimum / supremum over I.
inline std::pair<VecValue, VecValue> extrema(const FunctionSpec& f, Interval I) {
    if (!(I.measure() > 0.0)) throw ZeroMeasure("extrema: interval has zero measure");
    const int n = f.dimension();
    VecValue lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
    switch (f.kind()) {
        case FunctionKind::Exponential:
        case FunctionKind::Signum:
        case FunctionKind::Sine: {
            const auto [gm, gM] = detail::profile_range(f, I.a, I.b);
            for (int c = 0; c < n; ++c) {
                const double a = f.amplitudes_[static_cast<std::size_t>(c)];
                lo[static_cast<std::size_t>(c)] = a >= 0.0 ? a * gm : a * gM;
                hi[static_cast<std::size_t>(c)] = a >= 0.0 ? a * gM : a * gm;
            }
            return {lo, hi};
        }
        case FunctionKind::Polynomial: {
            for (int c = 0; c < n; ++c) {
                const auto [mn, mx] =
                    detail::poly_range(f.coeffs_[static_cast<std::size_t>(c)], I.a, I.b);
                lo[static_cast<std::size_t>(c)] = mn;
                hi[static_cast<std::size_t>(c)] = mx;
            }
            return {lo, hi};
        }
        case FunctionKind::PiecewiseLinear: {
            std::vector<double> cand{I.a, I.b};
            for (double k : f.knots_)
                if (I.strictly_inside(k)) cand.push_back(k);
            for (int c = 0; c < n; ++c) {
                double mn = f.eval_component(c, cand[0]);
                double mx = mn;
                for (std::size_t i = 1; i < cand.size(); ++i) {
                    const double v = f.eval_component(c, cand[i]);
                    mn = std::min(mn, v);
                    mx = std::max(mx, v);
                }
                lo[static_cast<std::size_t>(c)] = mn;
                hi[static_cast<std::size_t>(c)] = mx;
            }
            return {lo, hi};
        }
    }
    return {lo, hi};
}

// Componentwise sup |f'| over I in the weak sense: at a kink the supremum is
// taken over both one-sided slopes. A jump strictly inside I is an error;
// the caller must fall back to the extrema-based bound.
inline VecValue deriv_sup(const FunctionSpec& f, Interval I) {
    const int n = f.dimension();
    VecValue out(static_cast<std::size_t>(n), 0.0);
    for (double d : f.discontinuities()) {
        if (I.strictly_inside(d)) {
            throw DiscontinuityInside("deriv_sup: jump strictly inside interval");
        }
    }
    switch (f.kind()) {
        case FunctionKind::Exponential:
        case FunctionKind::Signum:
        case FunctionKind::Sine: {
            const double g = detail::profile_deriv_sup(f, I.a, I.b);
            for (int c = 0; c < n; ++c)
                out[static_cast<std::size_t>(c)] = std::abs(f.amplitudes_[static_cast<std::size_t>(c)]) * g;
            return out;
        }
        case FunctionKind::Polynomial: {
            for (int c = 0; c < n; ++c) {
                const auto d = detail::poly_derivative(f.coeffs_[static_cast<std::size_t>(c)]);
                const auto [mn, mx] = detail::poly_range(d, I.a, I.b);
                out[static_cast<std::size_t>(c)] = std::max(std::abs(mn), std::abs(mx));
            }
            return out;
        }
        case FunctionKind::PiecewiseLinear: {
            for (int c = 0; c < n; ++c) {
                double m = 0.0;
                detail::pwl_walk(f.knots_, f.knot_values_[static_cast<std::size_t>(c)], I.a, I.b,
                                 [&](double, double, double, double s) {
                                     m = std::max(m, std::abs(s));
                                 });
                out[static_cast<std::size_t>(c)] = m;
            }
            return out;
        }
    }
    return out;
}

// Transform f into L f, where Q = L^T L is the triangular factorization of a
// symmetric positive definite Q. Gap computations of L f under phi(z) = z^T z
// equal gap computations of f under phi_Q(z) = z^T Q z, and every catalog
// kind absorbs the factor exactly (amplitudes, coefficients or knot values
// are linearly combined).
inline FunctionSpec reduce_quadratic(const Mat& q, const FunctionSpec& f) {
    if (q.rows() != f.dimension() || q.cols() != f.dimension()) {
        throw DimensionMismatch("reduce_quadratic: Q size does not match function dimension");
    }
    const Mat l = cholesky(q);
    FunctionSpec out = f;
    const std::size_t n = static_cast<std::size_t>(f.dimension());
    switch (f.kind()) {
        case FunctionKind::Exponential:
        case FunctionKind::Signum:
        case FunctionKind::Sine:
            out.amplitudes_ = mat_vec(l, f.amplitudes_);
            break;
        case FunctionKind::Polynomial: {
            std::size_t deg = 0;
            for (const auto& c : f.coeffs_) deg = std::max(deg, c.size());
            std::vector<std::vector<double>> mixed(n, std::vector<double>(deg, 0.0));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    const double lij = l(static_cast<int>(i), static_cast<int>(j));
                    if (lij == 0.0) continue;
                    for (std::size_t k = 0; k < f.coeffs_[j].size(); ++k)
                        mixed[i][k] += lij * f.coeffs_[j][k];
                }
            out.coeffs_ = std::move(mixed);
            break;
        }
        case FunctionKind::PiecewiseLinear: {
            std::vector<std::vector<double>> mixed(n,
                                                   std::vector<double>(f.knots_.size(), 0.0));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    const double lij = l(static_cast<int>(i), static_cast<int>(j));
                    if (lij == 0.0) continue;
                    for (std::size_t k = 0; k < f.knots_.size(); ++k)
                        mixed[i][k] += lij * f.knot_values_[j][k];
                }
            out.knot_values_ = std::move(mixed);
            break;
        }
    }
    return out;
}

}  // namespace jgl
