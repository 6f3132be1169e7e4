#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "scsp/complex.hpp"
#include "scsp/spectral.hpp"

namespace scsp::filters {

/// Minimizer of ||out - y||^2 + alpha * out^T Q out, i.e. (I + alpha Q)^{-1} y.
/// Q must be symmetric PSD and alpha strictly positive. Solved by dense
/// Cholesky with a spectral fallback; the solve residual is checked against
/// 1e-10 relative.
Eigen::VectorXd denoise_tikhonov(const Eigen::MatrixXd& q, const Eigen::VectorXd& y,
                                 double alpha);

/// Exactly `steps` multiplications by (I - mu L). When mu >= 2 / lambda_max
/// (divergent regime) an explanatory note is appended to *warning, if given.
Eigen::VectorXd smooth_iterative(const Eigen::MatrixXd& l, const Eigen::VectorXd& y, double mu,
                                 int steps, std::string* warning = nullptr);

/// Horner evaluation of sum_k coeffs[k] G^k applied to s.
Eigen::VectorXd apply_polynomial(const Eigen::MatrixXd& g, const std::vector<double>& coeffs,
                                 const Eigen::VectorXd& s);

/// Per-eigenvalue gains diag(U^T H U) of a filter diagonalized by the basis.
/// Errors when H is not shift-invariant with respect to it, naming the largest
/// off-diagonal entry.
Eigen::VectorXd frequency_response_of(const Eigen::MatrixXd& h,
                                      const spectral::SpectralBasis& basis);

/// Power-iteration estimate of the largest eigenvalue of a symmetric PSD
/// matrix; used for divergence warnings.
double lambda_max_estimate(const Eigen::MatrixXd& m);

enum class EdgeRegularizer { Hodge, Edge, LineGraph };

/// Accepts "hodge", "edge", "line-graph"; anything else is an error.
EdgeRegularizer parse_regularizer(std::string_view name);
std::string regularizer_name(EdgeRegularizer r);

/// The quadratic-form matrix each regularizer denotes on the edge space.
Eigen::MatrixXd regularizer_matrix(const SimplicialComplex& x, EdgeRegularizer r);

/// Multi-trial denoising comparison: trial i draws y = truth + sigma * eps
/// with the generator seeded at seed + i, denoises under each regularizer,
/// and records the 2-norm error against the truth (column 0 holds the raw
/// noisy error). Rows are trials in seed order.
struct DenoiseExperimentReport {
    std::vector<EdgeRegularizer> regularizers;
    Eigen::MatrixXd errors;  // trials x (1 + regularizers)

    Eigen::VectorXd mean() const;
    Eigen::VectorXd standard_error() const;
};

DenoiseExperimentReport flow_denoise_experiment(const SimplicialComplex& x,
                                                const Eigen::VectorXd& truth, double sigma,
                                                std::uint64_t seed,
                                                const std::vector<EdgeRegularizer>& regularizers,
                                                double alpha, int trials = 1);

}  // namespace scsp::filters
