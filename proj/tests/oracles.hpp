#pragma once

// Test-only reference implementations, kept independent of the library's
// solvers: exhaustive grid searches evaluate the objective functions directly.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <vector>

#include "salfuse/estimators.hpp"
#include "salfuse/rng.hpp"

namespace oracles {

// argmin over the [lo, hi]^2 grid (step `step`) of ||y - X b||^2.
inline Eigen::Vector2d grid_search_ls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                      double lo, double hi, double step) {
    const double yy = y.squaredNorm();
    const Eigen::Vector2d c = X.transpose() * y;
    const Eigen::Matrix2d G = X.transpose() * X;
    double best = 1e300;
    Eigen::Vector2d arg(0.0, 0.0);
    for (double b1 = lo; b1 <= hi + 1e-12; b1 += step)
        for (double b2 = lo; b2 <= hi + 1e-12; b2 += step) {
            const double rss = yy - 2.0 * (b1 * c[0] + b2 * c[1]) + b1 * b1 * G(0, 0) +
                               2.0 * b1 * b2 * G(0, 1) + b2 * b2 * G(1, 1);
            if (rss < best) {
                best = rss;
                arg << b1, b2;
            }
        }
    return arg;
}

// argmin over the grid of the lasso objective the library's descent solves,
// written in original coordinates:
//   (1/2n) || (y - ybar) - sum_j b_j (x_j - xbar_j) ||^2 + lambda * sum_j sd_j |b_j|
inline Eigen::Vector2d grid_search_lasso(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                         double lambda, double lo, double hi, double step) {
    const double n = static_cast<double>(y.size());
    Eigen::VectorXd yc = y.array() - y.mean();
    Eigen::MatrixXd Xc = X;
    Eigen::Vector2d sd;
    for (int j = 0; j < 2; ++j) {
        Xc.col(j).array() -= X.col(j).mean();
        sd[j] = std::sqrt(Xc.col(j).squaredNorm() / n);
    }
    const double yy = yc.squaredNorm();
    const Eigen::Vector2d c = Xc.transpose() * yc;
    const Eigen::Matrix2d G = Xc.transpose() * Xc;
    double best = 1e300;
    Eigen::Vector2d arg(0.0, 0.0);
    for (double b1 = lo; b1 <= hi + 1e-12; b1 += step)
        for (double b2 = lo; b2 <= hi + 1e-12; b2 += step) {
            const double rss = yy - 2.0 * (b1 * c[0] + b2 * c[1]) + b1 * b1 * G(0, 0) +
                               2.0 * b1 * b2 * G(0, 1) + b2 * b2 * G(1, 1);
            const double obj = rss / (2.0 * n) +
                               lambda * (sd[0] * std::abs(b1) + sd[1] * std::abs(b2));
            if (obj < best) {
                best = obj;
                arg << b1, b2;
            }
        }
    return arg;
}

// Random full-rank problem with exactly centered columns and response, so the
// no-intercept least-squares solution and the centered lasso limit coincide.
inline salfuse::RegressionProblem centered_problem(salfuse::Rng& rng, int n, int k,
                                                   double noise_scale, double beta_range = 0.8) {
    salfuse::RegressionProblem p;
    p.X.resize(n, k);
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < n; ++i) p.X(i, j) = rng.next_gaussian();
        p.X.col(j).array() -= p.X.col(j).mean();
        p.feature_names.push_back("f" + std::to_string(j));
    }
    Eigen::VectorXd beta(k);
    for (int j = 0; j < k; ++j) beta[j] = rng.next_range(-beta_range, beta_range);
    Eigen::VectorXd noise(n);
    for (int i = 0; i < n; ++i) noise[i] = noise_scale * rng.next_gaussian();
    p.y = p.X * beta + noise;
    p.y.array() -= p.y.mean();
    return p;
}

// Two Gaussian-blob pdf maps on a 4x4 grid plus a mixture response with a
// little positive noise; the kind of problem the pipeline produces.
inline salfuse::RegressionProblem blob_problem_4x4(salfuse::Rng& rng, double w1, double w2,
                                                   double noise_scale) {
    const salfuse::SceneGeometry g{4, 4, 4.0, 4.0, 25.0};
    auto blob = [&](double cx, double cy, double sigma) {
        std::vector<double> raw(16);
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < 4; ++x)
                raw[static_cast<std::size_t>(y) * 4 + x] =
                    std::exp(-((x - cx) * (x - cx) + (y - cy) * (y - cy)) / (2.0 * sigma * sigma));
        return salfuse::normalize_to_pdf(raw, g);
    };
    const salfuse::DensityMap m1 = blob(0.5 + rng.next_unit() * 0.6, 0.5 + rng.next_unit() * 0.6, 0.8);
    const salfuse::DensityMap m2 = blob(2.6 + rng.next_unit() * 0.6, 2.6 + rng.next_unit() * 0.6, 0.8);

    salfuse::RegressionProblem p;
    p.X.resize(16, 2);
    p.y.resize(16);
    for (int i = 0; i < 16; ++i) {
        p.X(i, 0) = m1.values[static_cast<std::size_t>(i)];
        p.X(i, 1) = m2.values[static_cast<std::size_t>(i)];
        p.y[i] = w1 * p.X(i, 0) + w2 * p.X(i, 1) + noise_scale * rng.next_gaussian();
    }
    p.feature_names = {"m1", "m2"};
    return p;
}

}  // namespace oracles
