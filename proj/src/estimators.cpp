#include "salfuse/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace salfuse {

RegressionProblem make_problem(const DensityMap& target,
                               std::span<const DensityMap* const> maps,
                               std::vector<std::string> feature_names) {
    if (maps.empty() || maps.size() != feature_names.size())
        throw std::invalid_argument("make_problem: need one name per map");
    const auto n = static_cast<Eigen::Index>(target.size());
    RegressionProblem p;
    p.y.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) p.y[i] = target.values[static_cast<std::size_t>(i)];
    p.X.resize(n, static_cast<Eigen::Index>(maps.size()));
    for (std::size_t j = 0; j < maps.size(); ++j) {
        if (maps[j]->geometry != target.geometry)
            throw Error(Errc::GeometryMismatch, "feature map geometry differs from target");
        // Columns enter pdf-normalized even when the source map is a rounding
        // error off (e.g. loaded from 32-bit storage).
        const DensityMap col = normalize_to_pdf(*maps[j]);
        for (Eigen::Index i = 0; i < n; ++i)
            p.X(i, static_cast<Eigen::Index>(j)) = col.values[static_cast<std::size_t>(i)];
    }
    p.feature_names = std::move(feature_names);
    return p;
}

namespace {

// Lawson-Hanson active-set NNLS on the normal equations. K is small here
// (a handful of feature maps), so the repeated restricted solves are cheap.
Eigen::VectorXd nnls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    const Eigen::Index k = X.cols();
    const Eigen::MatrixXd G = X.transpose() * X;
    const Eigen::VectorXd c = X.transpose() * y;
    const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
    const double tol = 1e-12 * scale;

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(k);
    std::vector<bool> passive(static_cast<std::size_t>(k), false);

    auto solve_passive = [&](const std::vector<bool>& pset) {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index j = 0; j < k; ++j)
            if (pset[static_cast<std::size_t>(j)]) idx.push_back(j);
        Eigen::VectorXd z = Eigen::VectorXd::Zero(k);
        if (idx.empty()) return z;
        Eigen::MatrixXd Gp(idx.size(), idx.size());
        Eigen::VectorXd cp(idx.size());
        for (std::size_t a = 0; a < idx.size(); ++a) {
            cp[static_cast<Eigen::Index>(a)] = c[idx[a]];
            for (std::size_t b = 0; b < idx.size(); ++b)
                Gp(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = G(idx[a], idx[b]);
        }
        const Eigen::VectorXd zp = Gp.ldlt().solve(cp);
        for (std::size_t a = 0; a < idx.size(); ++a) z[idx[a]] = zp[static_cast<Eigen::Index>(a)];
        return z;
    };

    for (int outer = 0; outer < 4 * static_cast<int>(k) + 8; ++outer) {
        const Eigen::VectorXd w = c - G * beta;  // gradient of -0.5*RSS
        Eigen::Index best = -1;
        double best_w = tol;
        for (Eigen::Index j = 0; j < k; ++j) {
            if (!passive[static_cast<std::size_t>(j)] && w[j] > best_w) {
                best_w = w[j];
                best = j;
            }
        }
        if (best < 0) break;  // KKT satisfied
        passive[static_cast<std::size_t>(best)] = true;

        Eigen::VectorXd z = solve_passive(passive);
        while (true) {
            double alpha = 1.0;
            Eigen::Index blocker = -1;
            for (Eigen::Index j = 0; j < k; ++j) {
                if (!passive[static_cast<std::size_t>(j)] || z[j] > 0.0) continue;
                const double step = beta[j] / (beta[j] - z[j]);
                if (step < alpha) {
                    alpha = step;
                    blocker = j;
                }
            }
            if (blocker < 0) break;
            beta += alpha * (z - beta);
            for (Eigen::Index j = 0; j < k; ++j)
                if (passive[static_cast<std::size_t>(j)] && beta[j] <= tol) {
                    beta[j] = 0.0;
                    passive[static_cast<std::size_t>(j)] = false;
                }
            z = solve_passive(passive);
        }
        beta = z;
    }
    for (Eigen::Index j = 0; j < k; ++j)
        if (beta[j] < 0.0) beta[j] = 0.0;
    return beta;
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

WeightVector least_squares_fit(const RegressionProblem& problem, bool nonnegative) {
    if (problem.k() < 1) throw std::invalid_argument("least_squares_fit: empty problem");
    if (nonnegative)
        return make_weight_vector(problem.feature_names, to_std(nnls(problem.X, problem.y)));
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(problem.X);
    if (qr.rank() < problem.k())
        throw Error(Errc::RankDeficient, "design matrix has linearly dependent columns");
    return make_weight_vector(problem.feature_names, to_std(qr.solve(problem.y)));
}

double bic_score(const RegressionProblem& problem, const WeightVector& beta) {
    if (static_cast<Eigen::Index>(beta.beta.size()) != problem.k())
        throw std::invalid_argument("bic_score: beta length mismatch");
    Eigen::VectorXd b(problem.k());
    int k_active = 0;
    for (Eigen::Index j = 0; j < problem.k(); ++j) {
        b[j] = beta.beta[static_cast<std::size_t>(j)];
        if (b[j] != 0.0) ++k_active;
    }
    const double n = static_cast<double>(problem.n());
    const double rss = (problem.y - problem.X * b).squaredNorm();
    if (!(rss > 0.0))
        return -std::numeric_limits<double>::infinity();
    return n * std::log(rss / n) + k_active * std::log(n);
}

LassoPath lasso_path(const RegressionProblem& problem, int n_lambda, bool append_zero) {
    if (problem.k() < 1) throw std::invalid_argument("lasso_path: empty problem");
    if (n_lambda < 1) throw std::invalid_argument("lasso_path: n_lambda must be >= 1");
    const Eigen::Index n = problem.n();
    const Eigen::Index k = problem.k();
    const double nd = static_cast<double>(n);

    const double y_mean = problem.y.mean();
    Eigen::VectorXd yc = problem.y.array() - y_mean;
    const double y_sd = std::sqrt(yc.squaredNorm() / nd);

    // Standardize columns: centered, unit population sd. Zero-variance
    // columns are excluded from the descent and keep beta = 0.
    Eigen::MatrixXd Z(n, k);
    Eigen::VectorXd col_sd(k);
    std::vector<Eigen::Index> active_cols;
    for (Eigen::Index j = 0; j < k; ++j) {
        const double mean = problem.X.col(j).mean();
        Eigen::VectorXd cc = problem.X.col(j).array() - mean;
        const double sd = std::sqrt(cc.squaredNorm() / nd);
        col_sd[j] = sd;
        if (sd > 0.0) {
            Z.col(j) = cc / sd;
            active_cols.push_back(j);
        } else {
            Z.col(j).setZero();
        }
    }

    LassoPath path;

    auto emit = [&](double lambda, const Eigen::VectorXd& b_std) {
        std::vector<double> beta(static_cast<std::size_t>(k), 0.0);
        for (Eigen::Index j : active_cols)
            beta[static_cast<std::size_t>(j)] = b_std[j] / col_sd[j];
        path.lambdas.push_back(lambda);
        path.betas.push_back(make_weight_vector(problem.feature_names, std::move(beta)));
        path.bics.push_back(bic_score(problem, path.betas.back()));
    };

    // A constant response is fit exactly by a constant column when one
    // exists; there is nothing for the descent to do.
    if (y_sd == 0.0 || active_cols.empty()) {
        Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
        std::vector<double> beta(static_cast<std::size_t>(k), 0.0);
        if (y_sd == 0.0) {
            for (Eigen::Index j = 0; j < k; ++j) {
                const double v = problem.X(0, j);
                if (col_sd[j] == 0.0 && v != 0.0) {
                    beta[static_cast<std::size_t>(j)] = y_mean / v;
                    break;
                }
            }
        }
        path.lambdas.push_back(0.0);
        path.betas.push_back(make_weight_vector(problem.feature_names, std::move(beta)));
        path.bics.push_back(bic_score(problem, path.betas.back()));
        path.selected_index = 0;
        return path;
    }

    // Gram and correlation pieces for covariance updates, scaled by 1/n so
    // the objective is (1/2n)||yc - Z b||^2 + lambda*|b|_1.
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(k, k);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(k);
    for (Eigen::Index a : active_cols) {
        c[a] = Z.col(a).dot(yc) / nd;
        for (Eigen::Index b : active_cols) G(a, b) = Z.col(a).dot(Z.col(b)) / nd;
    }

    const double lambda_max = c.cwiseAbs().maxCoeff();
    std::vector<double> lambdas;
    if (n_lambda == 1) {
        lambdas.push_back(lambda_max);
    } else {
        const double ratio = 1e-4;
        for (int i = 0; i < n_lambda; ++i)
            lambdas.push_back(lambda_max *
                              std::pow(ratio, static_cast<double>(i) / (n_lambda - 1)));
    }
    if (append_zero) lambdas.push_back(0.0);

    const double conv_tol = 1e-7;
    const int max_sweeps = 10000;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(k);  // warm start across lambdas
    for (double lambda : lambdas) {
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            double max_delta = 0.0;
            for (Eigen::Index j : active_cols) {
                // Partial residual correlation with G(j,j) = 1.
                const double rho = c[j] - G.row(j).dot(b) + b[j];
                double bj = 0.0;
                if (rho > lambda) bj = rho - lambda;
                else if (rho < -lambda) bj = rho + lambda;
                const double delta = bj - b[j];
                if (delta != 0.0) {
                    b[j] = bj;
                    max_delta = std::max(max_delta, std::abs(delta));
                }
            }
            if (max_delta < conv_tol) break;
        }
        emit(lambda, b);
    }

    path.selected_index = static_cast<std::size_t>(
        std::min_element(path.bics.begin(), path.bics.end()) - path.bics.begin());
    return path;
}

LassoFit lasso_fit_bic(const RegressionProblem& problem, int n_lambda) {
    LassoFit fit;
    fit.path = lasso_path(problem, n_lambda);
    fit.weights = fit.path.selected();
    return fit;
}

EmFit em_fit(std::span<const Point> positions, std::span<const DensityMap* const> maps,
             double tol, int max_iter) {
    if (maps.empty()) throw std::invalid_argument("em_fit: no component maps");
    const SceneGeometry& g = maps[0]->geometry;
    for (const DensityMap* m : maps)
        if (m->geometry != g) throw Error(Errc::GeometryMismatch, "component maps disagree");

    const std::size_t k = maps.size();
    // Per-position component densities, nearest-pixel lookup.
    std::vector<double> dens;
    std::size_t n = 0;
    for (const Point& p : positions) {
        if (!on_screen(p, g)) continue;
        const int x = std::min(g.width_px - 1, std::max(0, static_cast<int>(std::lround(p.x))));
        const int y = std::min(g.height_px - 1, std::max(0, static_cast<int>(std::lround(p.y))));
        for (std::size_t j = 0; j < k; ++j) dens.push_back(maps[j]->at(x, y));
        ++n;
    }
    if (n == 0) throw Error(Errc::NoValidPositions, "all positions are off-screen");

    EmFit fit;
    fit.pi.assign(k, 1.0 / static_cast<double>(k));

    auto loglik = [&](const std::vector<double>& pi) {
        double ll = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double p = 0.0;
            for (std::size_t j = 0; j < k; ++j) p += pi[j] * dens[i * k + j];
            if (!(p > 0.0))
                throw Error(Errc::DegeneratePosition,
                            "a position has zero density under every component");
            ll += std::log(p);
        }
        return ll;
    };

    fit.loglik_trace.push_back(loglik(fit.pi));
    std::vector<double> resp_sum(k);
    for (int iter = 0; iter < max_iter; ++iter) {
        std::fill(resp_sum.begin(), resp_sum.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double p = 0.0;
            for (std::size_t j = 0; j < k; ++j) p += fit.pi[j] * dens[i * k + j];
            const double inv = 1.0 / p;
            for (std::size_t j = 0; j < k; ++j) resp_sum[j] += fit.pi[j] * dens[i * k + j] * inv;
        }
        for (std::size_t j = 0; j < k; ++j) fit.pi[j] = resp_sum[j] / static_cast<double>(n);

        const double ll = loglik(fit.pi);
        const double gain = ll - fit.loglik_trace.back();
        fit.loglik_trace.push_back(ll);
        ++fit.n_iter;
        if (gain < tol) {
            fit.converged = true;
            break;
        }
    }
    return fit;
}

const char* fit_method_name(FitMethod m) {
    switch (m) {
        case FitMethod::LS: return "LS";
        case FitMethod::LassoBic: return "LASSO_BIC";
        case FitMethod::EM: return "EM";
    }
    return "?";
}

FitMethod fit_method_from_name(const std::string& name) {
    if (name == "LS") return FitMethod::LS;
    if (name == "LASSO_BIC") return FitMethod::LassoBic;
    if (name == "EM") return FitMethod::EM;
    throw Error(Errc::BadInput, "unknown fit method `" + name + "`");
}

FrameFit fit_frame(int frame_index, const GazeTable& gaze, const std::string& video_id,
                   const FeatureStack& stack, FitMethod method, const FitOptions& options) {
    if (options.downsample < 1)
        throw std::invalid_argument("fit_frame: downsample must be >= 1");
    const std::vector<Point> positions = gaze.positions(video_id, frame_index);
    if (positions.empty())
        throw Error(Errc::NoGazeData, "no on-screen positions for frame " +
                                          std::to_string(frame_index));

    const int d = options.downsample;
    std::vector<DensityMap> low_maps;
    low_maps.reserve(static_cast<std::size_t>(stack.n_features()));
    for (int kf = 0; kf < stack.n_features(); ++kf)
        low_maps.push_back(block_downsample(normalize_to_pdf(stack.map(frame_index, kf)), d));
    std::vector<const DensityMap*> map_ptrs;
    for (const auto& m : low_maps) map_ptrs.push_back(&m);

    FrameFit out;
    out.frame_index = frame_index;
    out.method = method;

    if (method == FitMethod::EM) {
        std::vector<Point> scaled;
        scaled.reserve(positions.size());
        for (const Point& p : positions)
            scaled.push_back({p.x / d, p.y / d});
        const EmFit em = em_fit(scaled, map_ptrs, options.em_tol, options.em_max_iter);
        out.weights = make_weight_vector(stack.names(), em.pi);
        return out;
    }

    const DensityMap y_full =
        eye_position_density(positions, stack.geometry(), options.kernel_sigma_deg);
    const DensityMap y_low = block_downsample(y_full, d);
    const RegressionProblem problem = make_problem(y_low, map_ptrs, stack.names());
    if (method == FitMethod::LS)
        out.weights = least_squares_fit(problem, options.nonnegative_ls);
    else
        out.weights = lasso_fit_bic(problem, options.n_lambda).weights;
    return out;
}

}  // namespace salfuse
