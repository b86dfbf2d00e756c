#pragma once

// Independent reference implementations used only by tests. Each one takes a
// different algorithmic route than the library code it checks.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "reprbench/linalg.hpp"

namespace oracles {

// Dense linear solve by Gauss-Jordan elimination with partial pivoting.
// Checks the Cholesky route used by the library's normal-equations fit.
inline std::vector<double> gauss_jordan_solve(reprbench::Mat a, std::vector<double> b) {
    const std::size_t n = a.rows;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a.at(r, col)) > std::fabs(a.at(pivot, col))) pivot = r;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a.at(col, c), a.at(pivot, c));
            std::swap(b[col], b[pivot]);
        }
        const double p = a.at(col, col);
        for (std::size_t c = 0; c < n; ++c) a.at(col, c) /= p;
        b[col] /= p;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a.at(r, col);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < n; ++c) a.at(r, c) -= f * a.at(col, c);
            b[r] -= f * b[col];
        }
    }
    return b;
}

// Normal-equations least squares with the same Tikhonov damping as the library
// (1e-8 on every diagonal except the intercept column 0), solved independently.
inline std::vector<double> least_squares_reference(const reprbench::Mat& design,
                                                   const std::vector<double>& y) {
    const std::size_t n = design.rows, k = design.cols;
    reprbench::Mat ata(k, k);
    std::vector<double> aty(k, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = 0; b < k; ++b) ata.at(a, b) += design.at(i, a) * design.at(i, b);
            aty[a] += design.at(i, a) * y[i];
        }
    for (std::size_t a = 1; a < k; ++a) ata.at(a, a) += 1e-8;
    return gauss_jordan_solve(std::move(ata), std::move(aty));
}

struct EigenPair {
    double value;
    std::vector<double> vector;
};

// Power iteration with Hotelling deflation on a symmetric matrix. Independent
// of the Jacobi sweep used by the library.
inline std::vector<EigenPair> power_iteration_eigen(reprbench::Mat a, std::size_t k,
                                                    std::size_t iters = 20000) {
    const std::size_t n = a.rows;
    std::vector<EigenPair> out;
    for (std::size_t comp = 0; comp < k; ++comp) {
        std::vector<double> v(n, 0.0);
        v[comp % n] = 1.0;
        v[(comp + 1) % n] = 0.5;  // deterministic, not an eigenvector of test inputs
        double lambda = 0.0;
        for (std::size_t it = 0; it < iters; ++it) {
            std::vector<double> w(n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) w[i] += a.at(i, j) * v[j];
            double norm = 0.0;
            for (double x : w) norm += x * x;
            norm = std::sqrt(norm);
            if (norm < 1e-300) break;
            for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
            lambda = norm;
        }
        // Rayleigh quotient for the sign of the eigenvalue
        std::vector<double> av(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) av[i] += a.at(i, j) * v[j];
        double rq = 0.0;
        for (std::size_t i = 0; i < n; ++i) rq += v[i] * av[i];
        out.push_back({rq, v});
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a.at(i, j) -= rq * v[i] * v[j];
    }
    return out;
}

inline double clustering_cost(const reprbench::Mat& points, const reprbench::Mat& centroids,
                              const std::vector<std::size_t>& assignment) {
    double cost = 0.0;
    for (std::size_t i = 0; i < points.rows; ++i)
        for (std::size_t j = 0; j < points.cols; ++j) {
            const double d = points.at(i, j) - centroids.at(assignment[i], j);
            cost += d * d;
        }
    return cost;
}

// Exhaustive search over all k-labelings; centroids are the label means.
// Feasible for the <= 8 point instances used in tests.
inline double optimal_kmeans_cost(const reprbench::Mat& points, std::size_t k) {
    const std::size_t n = points.rows;
    const std::size_t d = points.cols;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= k;
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> label(n);
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t i = 0; i < n; ++i) {
            label[i] = c % k;
            c /= k;
        }
        reprbench::Mat centroids(k, d);
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            ++counts[label[i]];
            for (std::size_t j = 0; j < d; ++j) centroids.at(label[i], j) += points.at(i, j);
        }
        bool any_empty = false;
        for (std::size_t c2 = 0; c2 < k; ++c2) {
            if (counts[c2] == 0) {
                any_empty = true;
                break;
            }
            for (std::size_t j = 0; j < d; ++j)
                centroids.at(c2, j) /= static_cast<double>(counts[c2]);
        }
        if (any_empty) continue;
        best = std::min(best, clustering_cost(points, centroids, label));
    }
    return best;
}

// Central finite difference of a scalar function with respect to one location.
inline double central_difference(const std::function<double()>& eval, double* location,
                                 double eps = 1e-5) {
    const double saved = *location;
    *location = saved + eps;
    const double up = eval();
    *location = saved - eps;
    const double down = eval();
    *location = saved;
    return (up - down) / (2.0 * eps);
}

// Gregorian Easter Sunday (anonymous computus): month/day pair.
inline std::pair<int, int> easter_sunday(int year) {
    const int a = year % 19;
    const int b = year / 100;
    const int c = year % 100;
    const int d = b / 4;
    const int e = b % 4;
    const int f = (b + 8) / 25;
    const int g = (b - f + 1) / 3;
    const int h = (19 * a + b - d - g + 15) % 30;
    const int i = c / 4;
    const int k = c % 4;
    const int l = (32 + 2 * e + 2 * i - h - k) % 7;
    const int m = (a + 11 * h + 22 * l) / 451;
    const int month = (h + l - 7 * m + 114) / 31;
    const int day = ((h + l - 7 * m + 114) % 31) + 1;
    return {month, day};
}

}  // namespace oracles
