#include "covham/linalg.hpp"

#include <cmath>

namespace covham {

std::vector<double> solve_linear(Mat a, std::vector<double> b) {
    const int n = a.size();
    for (int c = 0; c < n; ++c) {
        int pivot = c;
        double best = std::abs(a(c, c));
        for (int r = c + 1; r < n; ++r) {
            if (std::abs(a(r, c)) > best) {
                best = std::abs(a(r, c));
                pivot = r;
            }
        }
        if (best == 0.0)
            throw SingularMatrixError("singular linear system");
        if (pivot != c) {
            for (int j = c; j < n; ++j)
                std::swap(a(c, j), a(pivot, j));
            std::swap(b[static_cast<std::size_t>(c)], b[static_cast<std::size_t>(pivot)]);
        }
        for (int r = c + 1; r < n; ++r) {
            double factor = a(r, c) / a(c, c);
            if (factor == 0.0)
                continue;
            for (int j = c; j < n; ++j)
                a(r, j) -= factor * a(c, j);
            b[static_cast<std::size_t>(r)] -= factor * b[static_cast<std::size_t>(c)];
        }
    }
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int r = n - 1; r >= 0; --r) {
        double sum = b[static_cast<std::size_t>(r)];
        for (int j = r + 1; j < n; ++j)
            sum -= a(r, j) * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(r)] = sum / a(r, r);
    }
    return x;
}

bool positive_definite(const Mat& a) {
    const int n = a.size();
    Mat l(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = a(i, j);
            for (int k = 0; k < j; ++k)
                sum -= l(i, k) * l(j, k);
            if (i == j) {
                if (sum <= 0.0)
                    return false;
                l(i, i) = std::sqrt(sum);
            } else {
                l(i, j) = sum / l(j, j);
            }
        }
    }
    return true;
}

} // namespace covham
