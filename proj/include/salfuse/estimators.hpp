#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "salfuse/features.hpp"
#include "salfuse/gaze.hpp"
#include "salfuse/grid.hpp"

namespace salfuse {

// Pixel regression of an eye-position density map on K feature maps.
// Columns are pdf-normalized before any standardization.
struct RegressionProblem {
    Eigen::VectorXd y;               // n pixels
    Eigen::MatrixXd X;               // n x K, column j = flattened feature map j
    std::vector<std::string> feature_names;

    Eigen::Index n() const { return y.size(); }
    Eigen::Index k() const { return X.cols(); }
};

RegressionProblem make_problem(const DensityMap& target,
                               std::span<const DensityMap* const> maps,
                               std::vector<std::string> feature_names);

// Ordinary least squares (optionally nonnegative via Lawson-Hanson active
// set). Unconstrained fits on column-rank-deficient designs throw
// Error(RankDeficient); the active-set path handles them.
WeightVector least_squares_fit(const RegressionProblem& problem, bool nonnegative = false);

// Lasso solutions over a decreasing lambda grid with per-lambda BIC.
struct LassoPath {
    std::vector<double> lambdas;
    std::vector<WeightVector> betas;
    std::vector<double> bics;
    std::size_t selected_index = 0;  // argmin of bics (first minimum)

    const WeightVector& selected() const { return betas[selected_index]; }
};

// Coordinate descent with covariance updates and warm starts on internally
// standardized columns (centered, unit population sd); beta is reported back
// in the original column scale. The grid is n_lambda log-spaced values from
// the analytic lambda_max (smallest all-zero lambda) down to lambda_max*1e-4;
// append_zero adds an exact lambda = 0 endpoint. Zero-variance columns get
// beta = 0.
LassoPath lasso_path(const RegressionProblem& problem, int n_lambda = 100,
                     bool append_zero = false);

// Gaussian-residual BIC: n*ln(RSS/n) + k_active*ln(n) with k_active the
// number of nonzero coefficients. A perfect fit returns -infinity.
double bic_score(const RegressionProblem& problem, const WeightVector& beta);

struct LassoFit {
    WeightVector weights;
    LassoPath path;
};

// Runs the path and returns the minimum-BIC model.
LassoFit lasso_fit_bic(const RegressionProblem& problem, int n_lambda = 100);

// Mixture weights over fixed per-pixel densities, fitted on raw positions.
struct EmFit {
    std::vector<double> pi;
    std::vector<double> loglik_trace;  // initial value plus one per iteration
    int n_iter = 0;
    bool converged = false;
};

EmFit em_fit(std::span<const Point> positions, std::span<const DensityMap* const> maps,
             double tol = 1e-6, int max_iter = 500);

enum class FitMethod { LS, LassoBic, EM };

const char* fit_method_name(FitMethod m);
FitMethod fit_method_from_name(const std::string& name);

struct FitOptions {
    int downsample = 4;
    int n_lambda = 100;
    bool nonnegative_ls = false;
    double em_tol = 1e-6;
    int em_max_iter = 500;
    double kernel_sigma_deg = 1.0;
};

struct FrameFit {
    int frame_index = 0;
    FitMethod method = FitMethod::LS;
    WeightVector weights;
};

// Builds the frame's eye-position density and regression problem (or point
// set for EM) at the downsampled resolution and runs one estimator. Throws
// Error(NoGazeData) when the frame has no on-screen positions.
FrameFit fit_frame(int frame_index, const GazeTable& gaze, const std::string& video_id,
                   const FeatureStack& stack, FitMethod method, const FitOptions& options = {});

}  // namespace salfuse
