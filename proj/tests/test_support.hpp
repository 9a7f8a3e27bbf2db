#pragma once

// Test-only helpers kept independent of the library code paths they check.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "jgl/functions.hpp"
#include "jgl/interval.hpp"
#include "jgl/matrix.hpp"

namespace testsupport {

// Plain Gauss-Jordan inversion with partial pivoting; deliberately a
// different algorithm from the library's factor-and-solve path.
inline jgl::Mat gauss_jordan_inverse(const jgl::Mat& a) {
    const int n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("inverse of non-square matrix");
    jgl::Mat work = a;
    jgl::Mat inv = jgl::Mat::identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(work(r, col)) > std::abs(work(pivot, col))) pivot = r;
        }
        if (work(pivot, col) == 0.0) throw std::invalid_argument("singular matrix");
        if (pivot != col) {
            for (int c = 0; c < n; ++c) {
                std::swap(work(pivot, c), work(col, c));
                std::swap(inv(pivot, c), inv(col, c));
            }
        }
        const double d = work(col, col);
        for (int c = 0; c < n; ++c) {
            work(col, c) /= d;
            inv(col, c) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = work(r, col);
            if (f == 0.0) continue;
            for (int c = 0; c < n; ++c) {
                work(r, c) -= f * work(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

// Dense-scan extrema oracle: componentwise min/max of f over `samples`
// equally spaced points of I plus the kink locations, with one local
// refinement pass around each per-component arg-extremum so smooth peaks are
// resolved well below the grid spacing.
inline std::pair<jgl::VecValue, jgl::VecValue> scan_extrema(const jgl::FunctionSpec& f,
                                                            jgl::Interval I,
                                                            int samples = 10000) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(samples) + 8);
    for (int s = 0; s <= samples; ++s) {
        grid.push_back(I.a + I.measure() * (static_cast<double>(s) / samples));
    }
    for (double k : f.kink_points()) {
        if (k > I.a && k < I.b) grid.push_back(k);
    }

    const std::size_t dim = static_cast<std::size_t>(f.dimension());
    jgl::VecValue lo(dim), hi(dim);
    std::vector<double> arg_lo(dim, I.a), arg_hi(dim, I.a);
    bool first = true;
    for (double t : grid) {
        const jgl::VecValue v = jgl::eval(f, t);
        for (std::size_t c = 0; c < dim; ++c) {
            if (first || v[c] < lo[c]) {
                lo[c] = v[c];
                arg_lo[c] = t;
            }
            if (first || v[c] > hi[c]) {
                hi[c] = v[c];
                arg_hi[c] = t;
            }
        }
        first = false;
    }

    const double step = I.measure() / samples;
    for (std::size_t c = 0; c < dim; ++c) {
        for (int which = 0; which < 2; ++which) {
            const double center = which == 0 ? arg_lo[c] : arg_hi[c];
            const double from = std::max(I.a, center - step);
            const double to = std::min(I.b, center + step);
            for (int s = 0; s <= 2000; ++s) {
                const double t = from + (to - from) * (static_cast<double>(s) / 2000);
                const double v = jgl::eval(f, t)[c];
                lo[c] = std::min(lo[c], v);
                hi[c] = std::max(hi[c], v);
            }
        }
    }
    return {lo, hi};
}

}  // namespace testsupport
