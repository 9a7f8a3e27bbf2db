#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "jgl/errors.hpp"
#include "jgl/interval.hpp"

namespace jgl {

// Ordered breakpoints t_1 < ... < t_{N+1} fragmenting [t_1, t_{N+1}] into N
// subintervals of positive measure.
class Partition {
  public:
    // N fragments of identical measure.
    static Partition uniform(Interval I, int n) {
        if (n < 1) throw InvalidCount("uniform partition: fragment count must be >= 1");
        if (!(I.measure() > 0.0)) throw ZeroMeasure("uniform partition: empty interval");
        std::vector<double> pts(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) {
            pts[static_cast<std::size_t>(i)] =
                I.a + I.measure() * (static_cast<double>(i) / n);
        }
        pts.front() = I.a;
        pts.back() = I.b;
        return Partition(std::move(pts));
    }

    // Breakpoints u_i = (1 - eps^((i-1)/N)) / (1 - eps) on the unit interval,
    // mapped affinely onto I. Fragment measures decay geometrically as
    // eps^(i/N) * kappa0, concentrating the fine fragments near I.b. The last
    // breakpoint is pinned to I.b exactly.
    static Partition geometric(Interval I, int n, double eps) {
        if (n < 1) throw InvalidCount("geometric partition: fragment count must be >= 1");
        if (!(eps > 0.0) || !(eps < 1.0)) {
            throw InvalidEpsilon("geometric partition: eps must lie in (0, 1)");
        }
        if (!(I.measure() > 0.0)) throw ZeroMeasure("geometric partition: empty interval");
        std::vector<double> pts(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) {
            const double u =
                (1.0 - std::pow(eps, static_cast<double>(i) / n)) / (1.0 - eps);
            pts[static_cast<std::size_t>(i)] = I.a + I.measure() * u;
        }
        pts.front() = I.a;
        pts.back() = I.b;
        return Partition(std::move(pts));
    }

    // Three fragments isolating a width-eps window around the midpoint.
    static Partition straddle(Interval I, double eps) {
        if (!(eps > 0.0) || !(eps < I.measure())) {
            throw InvalidEpsilon("straddle partition: eps must lie in (0, measure)");
        }
        return Partition({I.a, 0.5 * (I.a + I.b - eps), 0.5 * (I.a + I.b + eps), I.b});
    }

    static Partition custom(std::vector<double> points) {
        return Partition(std::move(points));
    }

    int fragment_count() const { return static_cast<int>(breakpoints_.size()) - 1; }

    Interval fragment(int i) const {
        return Interval(breakpoints_[static_cast<std::size_t>(i)],
                        breakpoints_[static_cast<std::size_t>(i) + 1]);
    }

    Interval hull() const { return Interval(breakpoints_.front(), breakpoints_.back()); }

    const std::vector<double>& breakpoints() const { return breakpoints_; }

    std::vector<double> measures() const {
        std::vector<double> m(breakpoints_.size() - 1);
        for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
            m[i] = breakpoints_[i + 1] - breakpoints_[i];
        }
        return m;
    }

  private:
    explicit Partition(std::vector<double> pts) : breakpoints_(std::move(pts)) {
        if (breakpoints_.size() < 2) {
            throw InvalidCount("partition: need at least two breakpoints");
        }
        for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
            if (!(breakpoints_[i] > breakpoints_[i - 1])) {
                throw NotIncreasing("partition: breakpoints must be strictly increasing");
            }
        }
    }

    std::vector<double> breakpoints_;
};

}  // namespace jgl
