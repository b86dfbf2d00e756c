#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "reprbench/errors.hpp"

namespace reprbench {

// Dense row-major matrix of doubles.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> d;

    Mat() = default;
    Mat(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), d(r * c, fill) {}
    Mat(std::size_t r, std::size_t c, std::vector<double> data)
        : rows(r), cols(c), d(std::move(data)) {
        if (d.size() != rows * cols) throw ShapeMismatch("matrix data does not match rows*cols");
    }

    double& at(std::size_t r, std::size_t c) { return d[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return d[r * cols + c]; }
    const double* row(std::size_t r) const { return d.data() + r * cols; }
    double* row(std::size_t r) { return d.data() + r * cols; }
    bool empty() const { return d.empty(); }
};

// C[m,n] += A[m,k] * B[k,n], row-major. ikj order keeps the inner loop contiguous.
inline void gemm_acc(const double* A, const double* B, double* C, std::size_t m, std::size_t k,
                     std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = A + i * k;
        double* crow = C + i * n;
        for (std::size_t p = 0; p < k; ++p) {
            const double a = arow[p];
            if (a == 0.0) continue;
            const double* brow = B + p * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += a * brow[j];
        }
    }
}

inline double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

// Solves A x = b for symmetric positive definite A via Cholesky (LL^T).
// A is modified in place.
inline std::vector<double> cholesky_solve(Mat A, std::vector<double> b) {
    const std::size_t n = A.rows;
    if (A.cols != n || b.size() != n) throw ShapeMismatch("cholesky_solve: bad dimensions");
    for (std::size_t j = 0; j < n; ++j) {
        double diag = A.at(j, j) - dot(A.row(j), A.row(j), j);
        if (!(diag > 0.0)) throw Error("cholesky_solve: matrix not positive definite");
        diag = std::sqrt(diag);
        A.at(j, j) = diag;
        for (std::size_t i = j + 1; i < n; ++i)
            A.at(i, j) = (A.at(i, j) - dot(A.row(i), A.row(j), j)) / diag;
    }
    // forward substitution L y = b
    for (std::size_t i = 0; i < n; ++i)
        b[i] = (b[i] - dot(A.row(i), b.data(), i)) / A.at(i, i);
    // back substitution L^T x = y
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= A.at(j, i) * b[j];
        b[i] = s / A.at(i, i);
    }
    return b;
}

struct SymmetricEigen {
    std::vector<double> values;  // descending
    Mat vectors;                 // row i is the eigenvector of values[i]
};

// Cyclic Jacobi rotations for a symmetric matrix. Deterministic, accurate to
// machine precision for the small matrices used here.
inline SymmetricEigen jacobi_eigen(Mat A) {
    const std::size_t n = A.rows;
    if (A.cols != n) throw ShapeMismatch("jacobi_eigen: matrix must be square");
    Mat V(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) V.at(i, i) = 1.0;

    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += A.at(p, q) * A.at(p, q);
        if (off < 1e-300) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = A.at(p, q);
                if (std::fabs(apq) < 1e-300) continue;
                const double theta = (A.at(q, q) - A.at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = A.at(i, p), aiq = A.at(i, q);
                    A.at(i, p) = c * aip - s * aiq;
                    A.at(i, q) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double api = A.at(p, i), aqi = A.at(q, i);
                    A.at(p, i) = c * api - s * aqi;
                    A.at(q, i) = s * api + c * aqi;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = V.at(i, p), viq = V.at(i, q);
                    V.at(i, p) = c * vip - s * viq;
                    V.at(i, q) = s * vip + c * viq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (A.at(order[j], order[j]) > A.at(order[i], order[i])) std::swap(order[i], order[j]);

    SymmetricEigen out;
    out.values.resize(n);
    out.vectors = Mat(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out.values[i] = A.at(order[i], order[i]);
        for (std::size_t j = 0; j < n; ++j) out.vectors.at(i, j) = V.at(j, order[i]);
    }
    return out;
}

}  // namespace reprbench
