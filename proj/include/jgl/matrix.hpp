#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "jgl/errors.hpp"

namespace jgl {

using Vec = std::vector<double>;

// Dense row-major matrix. Small sizes only; everything is O(n^3) textbook
// code with no blocking.
class Mat {
  public:
    Mat() = default;
    Mat(int rows, int cols)
        : rows_(rows), cols_(cols), data_(check_size(rows, cols), 0.0) {}
    Mat(int rows, int cols, std::vector<double> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != check_size(rows, cols)) {
            throw DimensionMismatch("entry count does not match rows*cols");
        }
    }
    Mat(std::initializer_list<std::initializer_list<double>> rows) {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
        data_.reserve(static_cast<std::size_t>(rows_) * cols_);
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != cols_) {
                throw DimensionMismatch("ragged initializer list");
            }
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static Mat zero(int rows, int cols) { return Mat(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(int i, int j) {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }
    double operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }

    const std::vector<double>& data() const { return data_; }

  private:
    static std::size_t check_size(int rows, int cols) {
        if (rows < 0 || cols < 0) {
            throw InvalidArgument("negative matrix dimension");
        }
        return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

inline Mat operator+(const Mat& x, const Mat& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) {
        throw DimensionMismatch("matrix add: shape mismatch");
    }
    Mat out(x.rows(), x.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) out(i, j) = x(i, j) + y(i, j);
    return out;
}

inline Mat operator-(const Mat& x, const Mat& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) {
        throw DimensionMismatch("matrix subtract: shape mismatch");
    }
    Mat out(x.rows(), x.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) out(i, j) = x(i, j) - y(i, j);
    return out;
}

inline Mat operator*(double s, const Mat& x) {
    Mat out(x.rows(), x.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) out(i, j) = s * x(i, j);
    return out;
}

inline Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols() != y.rows()) {
        throw DimensionMismatch("matrix multiply: inner dimensions differ");
    }
    Mat out(x.rows(), y.cols());
    for (int i = 0; i < x.rows(); ++i) {
        for (int k = 0; k < x.cols(); ++k) {
            const double xik = x(i, k);
            if (xik == 0.0) continue;
            for (int j = 0; j < y.cols(); ++j) out(i, j) += xik * y(k, j);
        }
    }
    return out;
}

inline Mat transpose(const Mat& x) {
    Mat out(x.cols(), x.rows());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) out(j, i) = x(i, j);
    return out;
}

inline Mat symmetrize(const Mat& x) {
    if (x.rows() != x.cols()) {
        throw DimensionMismatch("symmetrize: matrix not square");
    }
    Mat out(x.rows(), x.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j)
            out(i, j) = 0.5 * (x(i, j) + x(j, i));
    return out;
}

inline double frobenius_norm(const Mat& x) {
    double sum = 0.0;
    for (double v : x.data()) sum += v * v;
    return std::sqrt(sum);
}

inline bool is_symmetric(const Mat& x, double rel_tol = 1e-12) {
    if (x.rows() != x.cols()) return false;
    double scale = 0.0;
    for (double v : x.data()) scale = std::max(scale, std::abs(v));
    const double tol = rel_tol * std::max(scale, 1.0);
    for (int i = 0; i < x.rows(); ++i)
        for (int j = i + 1; j < x.cols(); ++j)
            if (std::abs(x(i, j) - x(j, i)) > tol) return false;
    return true;
}

inline Vec mat_vec(const Mat& x, const Vec& v) {
    if (x.cols() != static_cast<int>(v.size())) {
        throw DimensionMismatch("matrix-vector multiply: shape mismatch");
    }
    Vec out(static_cast<std::size_t>(x.rows()), 0.0);
    for (int i = 0; i < x.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < x.cols(); ++j) s += x(i, j) * v[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = s;
    }
    return out;
}

// w^T S w
inline double quad_form(const Mat& s, const Vec& w) {
    if (s.rows() != s.cols() || s.rows() != static_cast<int>(w.size())) {
        throw DimensionMismatch("quadratic form: shape mismatch");
    }
    double acc = 0.0;
    for (int i = 0; i < s.rows(); ++i) {
        double row = 0.0;
        for (int j = 0; j < s.cols(); ++j) row += s(i, j) * w[static_cast<std::size_t>(j)];
        acc += w[static_cast<std::size_t>(i)] * row;
    }
    return acc;
}

// Upper-triangular factor L with positive diagonal such that S = L^T L.
// The pivot tolerance is scaled by the mean absolute diagonal, so near-zero
// and indefinite matrices are both rejected.
inline Mat cholesky(const Mat& s) {
    if (s.rows() != s.cols()) {
        throw DimensionMismatch("cholesky: matrix not square");
    }
    if (!is_symmetric(s)) {
        throw InvalidArgument("cholesky: matrix not symmetric");
    }
    const int n = s.rows();
    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale += std::abs(s(i, i));
    scale = n > 0 ? scale / n : 0.0;
    const double tol = 1e-12 * scale;

    Mat l(n, n);
    for (int i = 0; i < n; ++i) {
        double diag = s(i, i);
        for (int k = 0; k < i; ++k) diag -= l(k, i) * l(k, i);
        if (!(diag > tol)) {
            throw NotPositiveDefinite("cholesky: pivot below tolerance");
        }
        l(i, i) = std::sqrt(diag);
        for (int j = i + 1; j < n; ++j) {
            double v = s(i, j);
            for (int k = 0; k < i; ++k) v -= l(k, i) * l(k, j);
            l(i, j) = v / l(i, i);
        }
    }
    return l;
}

// Solve S X = B through the factor S = L^T L (forward then back substitution;
// no explicit inverse is ever formed).
inline Mat solve_with_factor(const Mat& l, const Mat& b) {
    const int n = l.rows();
    if (b.rows() != n) {
        throw DimensionMismatch("triangular solve: shape mismatch");
    }
    Mat x = b;
    // L^T y = b, L^T lower triangular.
    for (int c = 0; c < x.cols(); ++c) {
        for (int i = 0; i < n; ++i) {
            double v = x(i, c);
            for (int k = 0; k < i; ++k) v -= l(k, i) * x(k, c);
            x(i, c) = v / l(i, i);
        }
        // L x = y, L upper triangular.
        for (int i = n - 1; i >= 0; --i) {
            double v = x(i, c);
            for (int k = i + 1; k < n; ++k) v -= l(i, k) * x(k, c);
            x(i, c) = v / l(i, i);
        }
    }
    return x;
}

inline Mat solve_spd(const Mat& s, const Mat& b) {
    return solve_with_factor(cholesky(s), b);
}

// Smallest eigenvalue of a symmetric matrix by cyclic Jacobi rotations.
inline double min_eig(const Mat& s) {
    if (s.rows() != s.cols()) {
        throw DimensionMismatch("min_eig: matrix not square");
    }
    if (!is_symmetric(s)) {
        throw InvalidArgument("min_eig: matrix not symmetric");
    }
    const int n = s.rows();
    if (n == 0) return 0.0;
    Mat a = symmetrize(s);
    const double norm = frobenius_norm(a);
    const double stop = 1e-14 * std::max(norm, 1e-300);

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += 2.0 * a(p, q) * a(p, q);
        if (std::sqrt(off) <= stop) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }
    double lo = a(0, 0);
    for (int i = 1; i < n; ++i) lo = std::min(lo, a(i, i));
    return lo;
}

// The (A, B, C) data of the completion-of-squares identity
//   A - B^T C^-1 B  =  min_N { A + N^T B + B^T N + N^T C N },
// with unique minimizer N* = -C^-1 B. C must be symmetric positive definite
// and A symmetric.
struct CompletionTriple {
    Mat a;  // n x n symmetric
    Mat b;  // m x n
    Mat c;  // m x m symmetric positive definite

    CompletionTriple(Mat a_, Mat b_, Mat c_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
        if (!is_symmetric(a)) throw InvalidArgument("CompletionTriple: A not symmetric");
        if (!is_symmetric(c)) throw InvalidArgument("CompletionTriple: C not symmetric");
        if (b.rows() != c.rows() || b.cols() != a.rows()) {
            throw DimensionMismatch("CompletionTriple: B shape incompatible with A, C");
        }
        cholesky(c);  // rejects C not positive definite
    }
};

// Schur-complement form A - B^T C^-1 B, via the triangular factor of C.
inline Mat m1(const CompletionTriple& t) {
    const Mat x = solve_spd(t.c, t.b);  // C^-1 B
    return symmetrize(t.a - transpose(t.b) * x);
}

// Slack form A + N^T B + B^T N + N^T C N.
inline Mat m2(const CompletionTriple& t, const Mat& slack) {
    if (slack.rows() != t.c.rows() || slack.cols() != t.a.cols()) {
        throw DimensionMismatch("m2: slack shape incompatible with triple");
    }
    const Mat ntb = transpose(slack) * t.b;
    return symmetrize(t.a + ntb + transpose(ntb) + transpose(slack) * (t.c * slack));
}

// Global minimizer of the slack form: N* = -C^-1 B.
inline Mat n_star(const CompletionTriple& t) {
    return -1.0 * solve_spd(t.c, t.b);
}

// M2(N) - M1 computed two ways: as the direct difference and as the
// completed square (N - N*)^T C (N - N*). The two must agree; callers
// compare them as a consistency certificate.
struct ResidualForms {
    Mat difference;
    Mat completed_square;
};

inline ResidualForms residual(const CompletionTriple& t, const Mat& slack) {
    const Mat d = m2(t, slack) - m1(t);
    const Mat delta = slack - n_star(t);
    const Mat sq = symmetrize(transpose(delta) * (t.c * delta));
    return ResidualForms{d, sq};
}

}  // namespace jgl
