#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace chemtime {

/// Row-major dense matrix, sized for the small systems this library solves.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    const double* row(int i) const { return a.data() + static_cast<std::size_t>(i) * cols; }
    double* row(int i) { return a.data() + static_cast<std::size_t>(i) * cols; }
};

/// y += M x
inline void matvec_add(const Matrix& m, const std::vector<double>& x, std::vector<double>& y) {
    for (int i = 0; i < m.rows; ++i) {
        const double* r = m.row(i);
        double acc = 0.0;
        for (int j = 0; j < m.cols; ++j) acc += r[j] * x[j];
        y[i] += acc;
    }
}

/// y += M^T x
inline void matvec_t_add(const Matrix& m, const std::vector<double>& x, std::vector<double>& y) {
    for (int i = 0; i < m.rows; ++i) {
        const double* r = m.row(i);
        const double xi = x[i];
        for (int j = 0; j < m.cols; ++j) y[j] += r[j] * xi;
    }
}

/// M += alpha * u v^T
inline void outer_add(Matrix& m, double alpha, const std::vector<double>& u,
                      const std::vector<double>& v) {
    for (int i = 0; i < m.rows; ++i) {
        double* r = m.row(i);
        const double s = alpha * u[i];
        for (int j = 0; j < m.cols; ++j) r[j] += s * v[j];
    }
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

/// Solves A x = b for symmetric positive-definite A by Cholesky. A is copied.
inline std::vector<double> cholesky_solve(Matrix a, std::vector<double> b) {
    const int n = a.rows;
    if (a.cols != n || static_cast<int>(b.size()) != n) {
        throw std::invalid_argument("cholesky_solve: shape mismatch");
    }
    // In-place lower factor.
    for (int j = 0; j < n; ++j) {
        double d = a(j, j);
        for (int k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
        if (!(d > 0.0)) throw std::runtime_error("cholesky_solve: matrix not positive definite");
        const double ljj = std::sqrt(d);
        a(j, j) = ljj;
        for (int i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
            a(i, j) = s / ljj;
        }
    }
    // Forward then back substitution.
    for (int i = 0; i < n; ++i) {
        double s = b[i];
        for (int k = 0; k < i; ++k) s -= a(i, k) * b[k];
        b[i] = s / a(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int k = i + 1; k < n; ++k) s -= a(k, i) * b[k];
        b[i] = s / a(i, i);
    }
    return b;
}

}  // namespace chemtime
