#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "reprbench/errors.hpp"
#include "reprbench/linalg.hpp"
#include "reprbench/rng.hpp"
#include "reprbench/timeseries.hpp"

namespace reprbench {

// The four evaluated input layouts. Vector kinds carry a 168-hour history
// vector, matrix kinds the same data arranged as a 7x24 day-by-hour matrix.
enum class ReprKind {
    Naive,
    NaiveDifferences,
    Reshaped,
    ReshapedDifferences,
};

inline constexpr int kWindowHours = 168;
inline constexpr int kWindowDays = 7;
inline constexpr int kHoursPerDay = 24;

inline bool is_difference_kind(ReprKind k) {
    return k == ReprKind::NaiveDifferences || k == ReprKind::ReshapedDifferences;
}

inline bool is_matrix_kind(ReprKind k) {
    return k == ReprKind::Reshaped || k == ReprKind::ReshapedDifferences;
}

inline const char* repr_name(ReprKind k) {
    switch (k) {
        case ReprKind::Naive: return "naive";
        case ReprKind::NaiveDifferences: return "naive_differences";
        case ReprKind::Reshaped: return "reshaped";
        case ReprKind::ReshapedDifferences: return "reshaped_differences";
    }
    return "?";
}

inline ReprKind repr_from_name(const std::string& s) {
    if (s == "naive") return ReprKind::Naive;
    if (s == "naive_differences" || s == "naive-differences") return ReprKind::NaiveDifferences;
    if (s == "reshaped") return ReprKind::Reshaped;
    if (s == "reshaped_differences" || s == "reshaped-differences")
        return ReprKind::ReshapedDifferences;
    throw Error("unknown representation '" + s + "'");
}

// One model input. flat[0] corresponds to the forecast origin k; entries run
// backwards in time. Matrix kinds interpret flat row-major as 7x24, so the
// stored doubles are identical across the vector and matrix variants.
struct ReprInput {
    ReprKind kind = ReprKind::Naive;
    std::vector<double> flat;
    std::size_t origin_index = 0;
    int horizon = 0;

    bool is_matrix() const { return is_matrix_kind(kind); }
    std::size_t rows() const { return is_matrix() ? kWindowDays : 1; }
    std::size_t cols() const { return is_matrix() ? kHoursPerDay : flat.size(); }
    Mat as_matrix() const { return Mat(rows(), cols(), flat); }
};

// result[i] = x_{k-i}, newest first.
inline std::vector<double> window_naive(const TimeSeries& ts, std::size_t k,
                                        std::size_t length = kWindowHours) {
    if (k >= ts.size() || k + 1 < length)
        throw InsufficientHistory("window_naive: need " + std::to_string(length) +
                                  " observations up to index " + std::to_string(k));
    std::vector<double> out(length);
    for (std::size_t i = 0; i < length; ++i) out[i] = ts.values[k - i];
    return out;
}

// result[i] = x_{k-i} - x_{k-i-h}, newest first.
inline std::vector<double> window_differences(const TimeSeries& ts, std::size_t k, int h,
                                              std::size_t length = kWindowHours) {
    if (h <= 0) throw Error("window_differences: lag must be positive");
    const std::size_t lag = static_cast<std::size_t>(h);
    if (k >= ts.size() || k + 1 < length + lag)
        throw InsufficientHistory("window_differences: need " + std::to_string(length + lag) +
                                  " observations up to index " + std::to_string(k));
    std::vector<double> out(length);
    for (std::size_t i = 0; i < length; ++i) out[i] = ts.values[k - i] - ts.values[k - i - lag];
    return out;
}

// Row-major reshape: result[r][c] = v[r*cols + c].
inline Mat reshape(const std::vector<double>& v, std::size_t rows, std::size_t cols) {
    if (v.size() != rows * cols)
        throw ShapeMismatch("reshape: length " + std::to_string(v.size()) + " != " +
                            std::to_string(rows) + "x" + std::to_string(cols));
    return Mat(rows, cols, v);
}

inline std::vector<double> flatten(const Mat& m) { return m.d; }

inline ReprInput build_representation(const TimeSeries& ts, std::size_t k, ReprKind kind, int h) {
    ReprInput in;
    in.kind = kind;
    in.origin_index = k;
    in.horizon = h;
    const std::vector<double> window = is_difference_kind(kind)
                                           ? window_differences(ts, k, h)
                                           : window_naive(ts, k);
    in.flat = is_matrix_kind(kind) ? flatten(reshape(window, kWindowDays, kHoursPerDay)) : window;
    return in;
}

inline std::vector<double> select(const std::vector<double>& v,
                                  const std::vector<std::size_t>& indices) {
    std::vector<double> out;
    out.reserve(indices.size());
    for (std::size_t idx : indices) {
        if (idx >= v.size())
            throw IndexOutOfBounds("select: index " + std::to_string(idx) + " out of range for " +
                                   std::to_string(v.size()));
        out.push_back(v[idx]);
    }
    return out;
}

inline Mat select(const Mat& m, const std::vector<std::size_t>& row_indices,
                  const std::vector<std::size_t>& col_indices) {
    Mat out(row_indices.size(), col_indices.size());
    for (std::size_t r = 0; r < row_indices.size(); ++r) {
        if (row_indices[r] >= m.rows)
            throw IndexOutOfBounds("select: row " + std::to_string(row_indices[r]) +
                                   " out of range");
        for (std::size_t c = 0; c < col_indices.size(); ++c) {
            if (col_indices[c] >= m.cols)
                throw IndexOutOfBounds("select: col " + std::to_string(col_indices[c]) +
                                       " out of range");
            out.at(r, c) = m.at(row_indices[r], col_indices[c]);
        }
    }
    return out;
}

enum class Axis { Rows, Cols };
enum class AggFn { Mean, Sum, Min, Max };

// Axis::Rows reduces each row to one value (length-rows result),
// Axis::Cols reduces each column (length-cols result).
inline std::vector<double> aggregate(const Mat& m, Axis axis, AggFn fn) {
    if (m.empty()) throw EmptyInput("aggregate: empty matrix");
    const std::size_t groups = axis == Axis::Rows ? m.rows : m.cols;
    const std::size_t span = axis == Axis::Rows ? m.cols : m.rows;
    std::vector<double> out(groups);
    for (std::size_t g = 0; g < groups; ++g) {
        double acc = fn == AggFn::Min ? std::numeric_limits<double>::infinity()
                     : fn == AggFn::Max ? -std::numeric_limits<double>::infinity()
                                        : 0.0;
        for (std::size_t i = 0; i < span; ++i) {
            const double x = axis == Axis::Rows ? m.at(g, i) : m.at(i, g);
            switch (fn) {
                case AggFn::Mean:
                case AggFn::Sum: acc += x; break;
                case AggFn::Min: acc = std::min(acc, x); break;
                case AggFn::Max: acc = std::max(acc, x); break;
            }
        }
        out[g] = fn == AggFn::Mean ? acc / static_cast<double>(span) : acc;
    }
    return out;
}

// Valid cross-correlation, stride 1, no kernel flip.
inline std::vector<double> convolve(const std::vector<double>& v,
                                    const std::vector<double>& kernel) {
    if (kernel.empty() || kernel.size() > v.size())
        throw KernelTooLarge("convolve: kernel length " + std::to_string(kernel.size()) +
                             " vs input " + std::to_string(v.size()));
    std::vector<double> out(v.size() - kernel.size() + 1);
    for (std::size_t i = 0; i < out.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < kernel.size(); ++j) s += v[i + j] * kernel[j];
        out[i] = s;
    }
    return out;
}

inline Mat convolve(const Mat& m, const Mat& kernel) {
    if (kernel.empty() || kernel.rows > m.rows || kernel.cols > m.cols)
        throw KernelTooLarge("convolve: kernel exceeds input size");
    Mat out(m.rows - kernel.rows + 1, m.cols - kernel.cols + 1);
    for (std::size_t r = 0; r < out.rows; ++r)
        for (std::size_t c = 0; c < out.cols; ++c) {
            double s = 0.0;
            for (std::size_t kr = 0; kr < kernel.rows; ++kr)
                for (std::size_t kc = 0; kc < kernel.cols; ++kc)
                    s += m.at(r + kr, c + kc) * kernel.at(kr, kc);
            out.at(r, c) = s;
        }
    return out;
}

// Linear resampling onto n_out evenly spaced positions; endpoints are kept exactly.
inline std::vector<double> rescale_linear(const std::vector<double>& v, std::size_t n_out) {
    if (v.size() < 2) throw InputTooShort("rescale_linear: need at least 2 points");
    if (n_out < 2) throw InputTooShort("rescale_linear: need at least 2 output points");
    std::vector<double> out(n_out);
    out.front() = v.front();
    out.back() = v.back();
    for (std::size_t j = 1; j + 1 < n_out; ++j) {
        const double pos = static_cast<double>(j) * static_cast<double>(v.size() - 1) /
                           static_cast<double>(n_out - 1);
        const std::size_t i = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(i);
        out[j] = i + 1 < v.size() ? v[i] + frac * (v[i + 1] - v[i]) : v[i];
    }
    return out;
}

struct KMeansResult {
    Mat centroids;                     // k x d
    std::vector<std::size_t> assignments;
    double inertia = 0.0;              // sum of squared distances to assigned centroid
    std::vector<double> cost_history;  // inertia after each Lloyd iteration
};

namespace detail {
inline double sq_dist(const double* a, const double* b, std::size_t d) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double t = a[i] - b[i];
        s += t * t;
    }
    return s;
}
}  // namespace detail

// Lloyd's algorithm. Initial centroids are k distinct input points drawn with
// the seeded stream; nearest-centroid ties break toward the lowest index.
inline KMeansResult kmeans(const Mat& points, std::size_t k, std::uint64_t seed,
                           std::size_t max_iter = 100) {
    const std::size_t n = points.rows;
    const std::size_t d = points.cols;
    if (k < 1 || k > n)
        throw InvalidK("kmeans: k=" + std::to_string(k) + " with n=" + std::to_string(n));

    Rng rng(seed);
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    rng.shuffle(pool);

    KMeansResult res;
    res.centroids = Mat(k, d);
    std::size_t picked = 0;
    for (std::size_t i = 0; i < n && picked < k; ++i) {
        const double* cand = points.row(pool[i]);
        bool dup = false;
        for (std::size_t c = 0; c < picked && !dup; ++c)
            dup = detail::sq_dist(cand, res.centroids.row(c), d) == 0.0;
        if (!dup) {
            std::copy(cand, cand + d, res.centroids.row(picked));
            ++picked;
        }
    }
    // fewer distinct points than k: reuse arbitrary points for the remainder
    for (; picked < k; ++picked)
        std::copy(points.row(pool[picked % n]), points.row(pool[picked % n]) + d,
                  res.centroids.row(picked));

    res.assignments.assign(n, 0);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        bool changed = false;
        double cost = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            double best_d = detail::sq_dist(points.row(i), res.centroids.row(0), d);
            for (std::size_t c = 1; c < k; ++c) {
                const double dist = detail::sq_dist(points.row(i), res.centroids.row(c), d);
                if (dist < best_d) {
                    best_d = dist;
                    best = c;
                }
            }
            cost += best_d;
            if (res.assignments[i] != best) {
                res.assignments[i] = best;
                changed = true;
            }
        }
        res.cost_history.push_back(cost);
        res.inertia = cost;
        if (!changed && iter > 0) break;

        Mat sums(k, d);
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            double* srow = sums.row(res.assignments[i]);
            const double* p = points.row(i);
            for (std::size_t j = 0; j < d; ++j) srow[j] += p[j];
            ++counts[res.assignments[i]];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) continue;  // empty cluster keeps its centroid
            double* crow = res.centroids.row(c);
            for (std::size_t j = 0; j < d; ++j)
                crow[j] = sums.at(c, j) / static_cast<double>(counts[c]);
        }
        if (!changed) break;
    }
    return res;
}

struct PcaResult {
    Mat components;                         // n_components x d, unit rows
    std::vector<double> explained_variance; // descending eigenvalues
    Mat projected;                          // n x n_components
    std::vector<double> mean;               // column means of the input
};

// Principal components of the sample covariance (n-1 divisor). Each component
// is sign-fixed so its largest-magnitude entry is positive.
inline PcaResult pca(const Mat& points, std::size_t n_components) {
    const std::size_t n = points.rows;
    const std::size_t d = points.cols;
    if (n < 2) throw InvalidComponents("pca: need at least 2 points");
    if (n_components < 1 || n_components > std::min(n, d))
        throw InvalidComponents("pca: n_components=" + std::to_string(n_components) +
                                " out of range");

    PcaResult res;
    res.mean.assign(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) res.mean[j] += points.at(i, j);
    for (double& m : res.mean) m /= static_cast<double>(n);

    Mat centered(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) centered.at(i, j) = points.at(i, j) - res.mean[j];

    Mat cov(d, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b)
                cov.at(a, b) += centered.at(i, a) * centered.at(i, b);
    for (double& x : cov.d) x /= static_cast<double>(n - 1);

    const SymmetricEigen eig = jacobi_eigen(cov);

    res.components = Mat(n_components, d);
    res.explained_variance.resize(n_components);
    for (std::size_t c = 0; c < n_components; ++c) {
        res.explained_variance[c] = eig.values[c];
        std::size_t arg = 0;
        for (std::size_t j = 1; j < d; ++j)
            if (std::fabs(eig.vectors.at(c, j)) > std::fabs(eig.vectors.at(c, arg))) arg = j;
        const double sign = eig.vectors.at(c, arg) < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < d; ++j) res.components.at(c, j) = sign * eig.vectors.at(c, j);
    }

    res.projected = Mat(n, n_components);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < n_components; ++c)
            res.projected.at(i, c) = dot(centered.row(i), res.components.row(c), d);
    return res;
}

}  // namespace reprbench
