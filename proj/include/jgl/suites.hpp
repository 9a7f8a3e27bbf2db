#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "jgl/bounds.hpp"
#include "jgl/errors.hpp"
#include "jgl/matrix.hpp"
#include "jgl/random.hpp"

namespace jgl {

// Randomized certificate of the completion-of-squares equivalence. Each trial
// draws a triple (A symmetric, B, C = G^T G + 0.1 I) with dimensions up to
// max_dim and checks, for the minimizer and a batch of random slacks:
//   - M2(N*) equals M1,
//   - M2(N) - M1 is positive semidefinite,
//   - M2(N) - M1 equals the completed square (N - N*)^T C (N - N*).
struct CompletionSuiteResult {
    int trials = 0;
    double max_minimizer_gap = 0.0;     // max |M2(N*) - M1|_F
    double min_residual_eig = 0.0;      // min over slacks of min_eig(M2(N) - M1)
    double max_identity_error = 0.0;    // max |(M2(N)-M1) - (N-N*)^T C (N-N*)|_F

    bool pass(double tol = 1e-9) const {
        return trials > 0 && max_minimizer_gap <= tol && min_residual_eig >= -tol &&
               max_identity_error <= tol;
    }
};

inline CompletionSuiteResult completion_equivalence_suite(std::uint64_t seed, int trials,
                                                int max_dim, int slacks_per_trial = 10) {
    if (trials < 1) throw InvalidCount("completion_equivalence_suite: trials must be >= 1");
    if (max_dim < 1) throw InvalidCount("completion_equivalence_suite: max_dim must be >= 1");
    Rng rng(seed);
    CompletionSuiteResult res;
    res.trials = trials;
    for (int t = 0; t < trials; ++t) {
        const int n = rng.uniform_int(1, max_dim);
        const int m = rng.uniform_int(1, max_dim);
        const CompletionTriple triple(random_symmetric(rng, n), random_mat(rng, m, n),
                                 random_pd(rng, m));
        const Mat best = n_star(triple);
        const Mat schur = m1(triple);
        res.max_minimizer_gap =
            std::max(res.max_minimizer_gap, frobenius_norm(m2(triple, best) - schur));
        for (int s = 0; s < slacks_per_trial; ++s) {
            const Mat slack = random_mat(rng, m, n, -2.0, 2.0);
            const ResidualForms forms = residual(triple, slack);
            res.min_residual_eig =
                std::min(res.min_residual_eig, min_eig(forms.difference));
            res.max_identity_error =
                std::max(res.max_identity_error,
                         frobenius_norm(forms.difference - forms.completed_square));
        }
    }
    return res;
}

// Randomized certificate of the bound-family equivalence: on random problems
// (M, R, mu) the affine bound at the optimal slack equals the rational bound,
// dominates it at every other slack, and is affine in the measure.
struct FamilySuiteResult {
    int trials = 0;
    double max_optimal_gap = 0.0;    // |affine(N*) - rational|_F
    double min_ordering_eig = 0.0;   // min_eig(affine(N) - rational)
    double max_collinearity = 0.0;   // three-point affinity defect in mu

    bool pass(double equality_tol = 1e-10, double psd_tol = 1e-9,
              double affinity_tol = 1e-12) const {
        return trials > 0 && max_optimal_gap <= equality_tol &&
               min_ordering_eig >= -psd_tol && max_collinearity <= affinity_tol;
    }
};

inline FamilySuiteResult bound_family_suite(std::uint64_t seed, int trials, int max_dim,
                                            int slacks_per_trial = 5) {
    if (trials < 1) throw InvalidCount("bound_family_suite: trials must be >= 1");
    if (max_dim < 1) throw InvalidCount("bound_family_suite: max_dim must be >= 1");
    Rng rng(seed);
    FamilySuiteResult res;
    res.trials = trials;
    for (int t = 0; t < trials; ++t) {
        const int n = rng.uniform_int(1, max_dim);
        const int p = rng.uniform_int(1, max_dim);
        const Mat m = random_mat(rng, n, p, -2.0, 2.0);
        const Mat r = random_pd(rng, n);
        const double mu = rng.uniform(0.1, 2.0);
        const BoundProblem prob(m, r, mu);
        const Mat rat = rational_bound(prob);
        res.max_optimal_gap = std::max(
            res.max_optimal_gap, frobenius_norm(affine_bound(prob, optimal_slack(prob)) - rat));
        for (int s = 0; s < slacks_per_trial; ++s) {
            const Mat slack = random_mat(rng, n, p, -2.0, 2.0);
            res.min_ordering_eig =
                std::min(res.min_ordering_eig, min_eig(affine_bound(prob, slack) - rat));
            // affine in mu: the mu = 1 value must be the midpoint of mu = 0 and mu = 2
            const Mat a0 = affine_bound(BoundProblem(m, r, 0.0), slack);
            const Mat a1 = affine_bound(BoundProblem(m, r, 1.0), slack);
            const Mat a2 = affine_bound(BoundProblem(m, r, 2.0), slack);
            res.max_collinearity = std::max(
                res.max_collinearity, frobenius_norm(a1 - 0.5 * (a0 + a2)));
        }
    }
    return res;
}

}  // namespace jgl
