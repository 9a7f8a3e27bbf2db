#pragma once

#include <cstdint>
#include <random>

#include "jgl/matrix.hpp"

namespace jgl {

// Seeded generator with a fixed mapping to doubles, so randomized suites
// produce identical streams on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // uniform in [0, 1) from the top 53 bits
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [lo, hi]
    int uniform_int(int lo, int hi) {
        const int span = hi - lo + 1;
        int k = static_cast<int>(uniform() * span);
        if (k >= span) k = span - 1;
        return lo + k;
    }

  private:
    std::mt19937_64 gen_;
};

inline Mat random_mat(Rng& rng, int rows, int cols, double lo = -1.0, double hi = 1.0) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
    return m;
}

inline Mat random_symmetric(Rng& rng, int n, double lo = -1.0, double hi = 1.0) {
    return symmetrize(random_mat(rng, n, n, lo, hi));
}

// G^T G + ridge * I: positive definite with margin ridge.
inline Mat random_pd(Rng& rng, int n, double ridge = 0.1) {
    const Mat g = random_mat(rng, n, n);
    Mat s = transpose(g) * g;
    for (int i = 0; i < n; ++i) s(i, i) += ridge;
    return symmetrize(s);
}

}  // namespace jgl
