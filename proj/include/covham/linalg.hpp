#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "covham/dual.hpp"
#include "covham/errors.hpp"

namespace covham {

/// Dense square matrix, row-major. Sized for phase-space dimensions (m small),
/// templated so dual scalars can flow through determinants and inverses.
template <typename T>
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, scalar_of<T>(0.0)) {}

    int size() const noexcept { return n_; }

    T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    std::span<const T> data() const noexcept { return a_; }
    std::span<T> data() noexcept { return a_; }

private:
    int n_ = 0;
    std::vector<T> a_;
};

using Mat = SquareMatrix<double>;

/// Determinant via Gaussian elimination with partial pivoting on the primal
/// magnitude (valid pivot choice for dual scalars).
template <typename T>
T determinant(SquareMatrix<T> a) {
    const int n = a.size();
    T det = scalar_of<T>(1.0);
    double sign = 1.0;
    for (int c = 0; c < n; ++c) {
        int pivot = c;
        double best = std::abs(primal(a(c, c)));
        for (int r = c + 1; r < n; ++r) {
            double mag = std::abs(primal(a(r, c)));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best == 0.0)
            return scalar_of<T>(0.0);
        if (pivot != c) {
            for (int j = c; j < n; ++j)
                std::swap(a(c, j), a(pivot, j));
            sign = -sign;
        }
        det = det * a(c, c);
        for (int r = c + 1; r < n; ++r) {
            T factor = a(r, c) / a(c, c);
            for (int j = c; j < n; ++j)
                a(r, j) = a(r, j) - factor * a(c, j);
        }
    }
    return sign * det;
}

/// Gauss-Jordan inverse, primal-magnitude pivoting.
template <typename T>
SquareMatrix<T> inverse(SquareMatrix<T> a) {
    const int n = a.size();
    SquareMatrix<T> inv(n);
    for (int i = 0; i < n; ++i)
        inv(i, i) = scalar_of<T>(1.0);
    for (int c = 0; c < n; ++c) {
        int pivot = c;
        double best = std::abs(primal(a(c, c)));
        for (int r = c + 1; r < n; ++r) {
            double mag = std::abs(primal(a(r, c)));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best == 0.0)
            throw SingularMatrixError("matrix is singular");
        if (pivot != c) {
            for (int j = 0; j < n; ++j) {
                std::swap(a(c, j), a(pivot, j));
                std::swap(inv(c, j), inv(pivot, j));
            }
        }
        T diag = a(c, c);
        for (int j = 0; j < n; ++j) {
            a(c, j) = a(c, j) / diag;
            inv(c, j) = inv(c, j) / diag;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c)
                continue;
            T factor = a(r, c);
            if (primal(factor) == 0.0 && dual_depth_v<T> == 0)
                continue;
            for (int j = 0; j < n; ++j) {
                a(r, j) = a(r, j) - factor * a(c, j);
                inv(r, j) = inv(r, j) - factor * inv(c, j);
            }
        }
    }
    return inv;
}

/// Solve a*x = b for small dense systems (double only; used by Newton).
std::vector<double> solve_linear(Mat a, std::vector<double> b);

/// True when the symmetric matrix admits a Cholesky factorization, i.e. is
/// positive definite to working precision.
bool positive_definite(const Mat& a);

template <typename T>
std::vector<T> mat_vec(const SquareMatrix<T>& a, std::span<const T> x) {
    const int n = a.size();
    std::vector<T> y(static_cast<std::size_t>(n), scalar_of<T>(0.0));
    for (int i = 0; i < n; ++i) {
        T acc = scalar_of<T>(0.0);
        for (int j = 0; j < n; ++j)
            acc = acc + a(i, j) * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = acc;
    }
    return y;
}

inline double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

} // namespace covham
