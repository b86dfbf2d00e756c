#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "reprbench/transforms.hpp"

using namespace reprbench;

TEST(KMeans, WellSeparatedOneD) {
    const Mat points(4, 1, {0.0, 0.1, 10.0, 10.1});
    const KMeansResult res = kmeans(points, 2, 42);
    std::vector<double> centers = {res.centroids.at(0, 0), res.centroids.at(1, 0)};
    std::sort(centers.begin(), centers.end());
    EXPECT_NEAR(centers[0], 0.05, 1e-12);
    EXPECT_NEAR(centers[1], 10.05, 1e-12);
    EXPECT_EQ(res.assignments[0], res.assignments[1]);
    EXPECT_EQ(res.assignments[2], res.assignments[3]);
    EXPECT_NE(res.assignments[0], res.assignments[2]);
}

TEST(KMeans, KEqualsNIsZeroCost) {
    const Mat points(3, 2, {0.0, 0.0, 5.0, 1.0, -2.0, 4.0});
    const KMeansResult res = kmeans(points, 3, 7);
    EXPECT_DOUBLE_EQ(res.inertia, 0.0);
    std::vector<std::size_t> sorted = res.assignments;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(KMeans, MatchesExhaustiveOptimumOnSixPoints) {
    const Mat points(6, 2,
                     {0.0, 0.0, 0.3, 0.1, 0.1, 0.4, 8.0, 8.0, 8.2, 7.9, 7.8, 8.3});
    const double optimal = oracles::optimal_kmeans_cost(points, 2);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const KMeansResult res = kmeans(points, 2, seed);
        EXPECT_NEAR(res.inertia, optimal, 1e-9) << "seed " << seed;
        EXPECT_NEAR(oracles::clustering_cost(points, res.centroids, res.assignments), optimal,
                    1e-9);
    }
}

TEST(KMeans, CostNonIncreasingAcrossIterations) {
    Rng rng(99);
    std::vector<double> data(40 * 3);
    for (double& v : data) v = rng.uniform(-5.0, 5.0);
    const Mat points(40, 3, data);
    const KMeansResult res = kmeans(points, 4, 11);
    for (std::size_t i = 1; i < res.cost_history.size(); ++i)
        EXPECT_LE(res.cost_history[i], res.cost_history[i - 1] + 1e-9);
}

TEST(KMeans, InvalidK) {
    const Mat points(3, 1, {0.0, 1.0, 2.0});
    EXPECT_THROW(kmeans(points, 0, 1), InvalidK);
    EXPECT_THROW(kmeans(points, 4, 1), InvalidK);
}

TEST(Pca, RankOneLine) {
    // points exactly on y = x
    const Mat points(5, 2, {0, 0, 1, 1, 2, 2, 3, 3, 4, 4});
    const PcaResult res = pca(points, 2);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(res.components.at(0, 0), inv_sqrt2, 1e-9);
    EXPECT_NEAR(res.components.at(0, 1), inv_sqrt2, 1e-9);
    const double total = res.explained_variance[0] + res.explained_variance[1];
    EXPECT_NEAR(res.explained_variance[0] / total, 1.0, 1e-9);
}

TEST(Pca, FullBasisReconstruction) {
    Rng rng(4);
    std::vector<double> data(6 * 3);
    for (double& v : data) v = rng.uniform(-2.0, 2.0);
    const Mat points(6, 3, data);
    const PcaResult res = pca(points, 3);
    for (std::size_t i = 0; i < points.rows; ++i)
        for (std::size_t j = 0; j < points.cols; ++j) {
            double rec = res.mean[j];
            for (std::size_t c = 0; c < 3; ++c)
                rec += res.projected.at(i, c) * res.components.at(c, j);
            EXPECT_NEAR(rec, points.at(i, j), 1e-9);
        }
}

TEST(Pca, MatchesPowerIterationOracle) {
    Rng rng(12);
    std::vector<double> data(5 * 3);
    for (double& v : data) v = rng.uniform(-1.0, 1.0);
    const Mat points(5, 3, data);

    // sample covariance of the centered data, built independently here
    std::vector<double> mean(3, 0.0);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 3; ++j) mean[j] += points.at(i, j) / 5.0;
    Mat cov(3, 3);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b)
                cov.at(a, b) += (points.at(i, a) - mean[a]) * (points.at(i, b) - mean[b]) / 4.0;

    const auto oracle = oracles::power_iteration_eigen(cov, 3);
    const PcaResult res = pca(points, 3);
    for (std::size_t c = 0; c < 3; ++c) {
        EXPECT_NEAR(res.explained_variance[c], oracle[c].value, 1e-8);
        // compare up to orientation; the library fixes sign separately
        double dot_abs = 0.0;
        for (std::size_t j = 0; j < 3; ++j) dot_abs += res.components.at(c, j) * oracle[c].vector[j];
        dot_abs = std::fabs(dot_abs);
        EXPECT_NEAR(dot_abs, 1.0, 1e-8);
    }
}

TEST(Pca, VariancesNonNegativeDescendingAndOrthonormal) {
    Rng rng(31);
    std::vector<double> data(12 * 4);
    for (double& v : data) v = rng.uniform(-3.0, 3.0);
    const Mat points(12, 4, data);
    const PcaResult res = pca(points, 4);
    for (std::size_t c = 0; c < 4; ++c) {
        EXPECT_GE(res.explained_variance[c], -1e-12);
        if (c > 0) EXPECT_LE(res.explained_variance[c], res.explained_variance[c - 1] + 1e-12);
        for (std::size_t c2 = 0; c2 < 4; ++c2) {
            const double d = dot(res.components.row(c), res.components.row(c2), 4);
            EXPECT_NEAR(d, c == c2 ? 1.0 : 0.0, 1e-9);
        }
    }
    // sign convention: largest-magnitude entry of each component is positive
    for (std::size_t c = 0; c < 4; ++c) {
        double best = 0.0;
        for (std::size_t j = 0; j < 4; ++j)
            if (std::fabs(res.components.at(c, j)) > std::fabs(best))
                best = res.components.at(c, j);
        EXPECT_GT(best, 0.0);
    }
}

TEST(Pca, InvalidComponents) {
    const Mat points(4, 2, std::vector<double>(8, 1.0));
    EXPECT_THROW(pca(points, 0), InvalidComponents);
    EXPECT_THROW(pca(points, 3), InvalidComponents);
    const Mat one(1, 2, {1.0, 2.0});
    EXPECT_THROW(pca(one, 1), InvalidComponents);
}
