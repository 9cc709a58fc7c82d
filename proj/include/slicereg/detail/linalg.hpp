#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace slicereg::detail {

/// Column-major dense matrix, just big enough for the 32-dimensional
/// Clifford(5) case. Only what the library needs: LU determinant, linear
/// solve, and a spectral norm by power iteration.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}

    double& operator()(int r, int c) { return a_[static_cast<size_t>(c) * rows_ + r]; }
    double operator()(int r, int c) const { return a_[static_cast<size_t>(c) * rows_ + r]; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

/// LU with partial pivoting; returns false on (numerical) singularity.
inline bool lu_factor(Matrix& m, std::vector<int>& piv, double& det) {
    const int n = m.rows();
    piv.resize(n);
    det = 1.0;
    for (int i = 0; i < n; ++i) piv[i] = i;
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::fabs(m(k, k));
        for (int i = k + 1; i < n; ++i) {
            if (std::fabs(m(i, k)) > best) { best = std::fabs(m(i, k)); p = i; }
        }
        if (best == 0.0) { det = 0.0; return false; }
        if (p != k) {
            for (int c = 0; c < n; ++c) std::swap(m(p, c), m(k, c));
            std::swap(piv[p], piv[k]);
            det = -det;
        }
        det *= m(k, k);
        const double inv = 1.0 / m(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double f = m(i, k) * inv;
            m(i, k) = f;
            for (int c = k + 1; c < n; ++c) m(i, c) -= f * m(k, c);
        }
    }
    return true;
}

inline double determinant(Matrix m) {
    std::vector<int> piv;
    double det = 0.0;
    lu_factor(m, piv, det);
    return det;
}

/// Solve m x = b in place using a prefactored LU.
inline void lu_solve(const Matrix& lu, const std::vector<int>& piv, std::vector<double>& b) {
    const int n = lu.rows();
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[piv[i]];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
        x[i] /= lu(i, i);
    }
    b = x;
}

/// Largest singular value by power iteration on A^T A.
/// Deterministic start vector; tolerance loose enough to always terminate.
inline double spectral_norm(const Matrix& a, int max_iter = 200, double tol = 1e-14) {
    const int n = a.cols(), m = a.rows();
    std::vector<double> v(n), av(m), w(n);
    for (int i = 0; i < n; ++i) v[i] = 1.0 / (1.0 + i);
    double lambda = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        for (int r = 0; r < m; ++r) {
            double s = 0.0;
            for (int c = 0; c < n; ++c) s += a(r, c) * v[c];
            av[r] = s;
        }
        for (int c = 0; c < n; ++c) {
            double s = 0.0;
            for (int r = 0; r < m; ++r) s += a(r, c) * av[r];
            w[c] = s;
        }
        double norm = 0.0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        const double prev = lambda;
        lambda = norm;  // |A^T A v| with |v| = 1 -> sigma_max^2
        for (int c = 0; c < n; ++c) v[c] = w[c] / norm;
        if (it > 4 && std::fabs(lambda - prev) <= tol * lambda) break;
    }
    return std::sqrt(lambda);
}

/// Smallest singular value via inverse power iteration on A^T A (used for
/// the operator norm of a coordinate map, |M^{-1}|_2 = 1/sigma_min(M)).
inline double smallest_singular_value(const Matrix& a) {
    const int n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("smallest_singular_value: square only");
    Matrix ata(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int r = 0; r < n; ++r) s += a(r, i) * a(r, j);
            ata(i, j) = s;
        }
    Matrix lu = ata;
    std::vector<int> piv;
    double det = 0.0;
    if (!lu_factor(lu, piv, det)) return 0.0;
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = 1.0 / (1.0 + i);
    double mu = 0.0;
    for (int it = 0; it < 200; ++it) {
        lu_solve(lu, piv, v);
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        const double prev = mu;
        mu = norm;  // eigenvalue of (A^T A)^{-1}
        for (double& x : v) x /= norm;
        if (it > 4 && std::fabs(mu - prev) <= 1e-14 * mu) break;
    }
    return 1.0 / std::sqrt(mu);
}

}  // namespace slicereg::detail
