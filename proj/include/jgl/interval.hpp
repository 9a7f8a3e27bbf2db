#pragma once

#include <cmath>

#include "jgl/errors.hpp"

namespace jgl {

// Closed bounded interval [a, b] with its Lebesgue measure b - a.
struct Interval {
    double a = 0.0;
    double b = 0.0;

    Interval() = default;
    Interval(double left, double right) : a(left), b(right) {
        if (!std::isfinite(a) || !std::isfinite(b)) {
            throw InvalidArgument("interval endpoints must be finite");
        }
        if (a > b) {
            throw InvalidArgument("interval requires a <= b");
        }
    }

    double measure() const { return b - a; }
    double midpoint() const { return 0.5 * (a + b); }

    bool contains(double t) const { return t >= a && t <= b; }
    bool strictly_inside(double t) const { return t > a && t < b; }
};

}  // namespace jgl
