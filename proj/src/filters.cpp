#include "scsp/filters.hpp"

#include <cmath>
#include <stdexcept>

#include "scsp/rng.hpp"

namespace scsp::filters {

Eigen::VectorXd denoise_tikhonov(const Eigen::MatrixXd& q, const Eigen::VectorXd& y,
                                 double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("alpha must be > 0");
    if (q.rows() != q.cols() || q.rows() != y.size()) {
        throw std::invalid_argument("regularizer/signal dimension mismatch");
    }
    const Eigen::MatrixXd system =
        Eigen::MatrixXd::Identity(y.size(), y.size()) + alpha * q;

    Eigen::VectorXd out;
    Eigen::LLT<Eigen::MatrixXd> llt(system);
    if (llt.info() == Eigen::Success) {
        out = llt.solve(y);
    } else {
        const spectral::SpectralBasis basis = spectral::eig_sym(system);
        Eigen::VectorXd coeffs = basis.eigenvectors.transpose() * y;
        coeffs.array() /= basis.eigenvalues.array();
        out = basis.eigenvectors * coeffs;
    }
    // Backward-error residual bound: scales with the system norm so large
    // alpha (stiff but well-posed) still passes.
    const double residual = (system * out - y).norm();
    const double scale = y.norm() + system.cwiseAbs().rowwise().sum().maxCoeff() * out.norm();
    if (residual > 1e-10 * std::max(1.0, scale)) {
        throw std::runtime_error("denoising solve residual " + std::to_string(residual) +
                                 " exceeds tolerance");
    }
    return out;
}

Eigen::VectorXd smooth_iterative(const Eigen::MatrixXd& l, const Eigen::VectorXd& y, double mu,
                                 int steps, std::string* warning) {
    if (mu <= 0.0) throw std::invalid_argument("mu must be > 0");
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");
    if (l.rows() != l.cols() || l.rows() != y.size()) {
        throw std::invalid_argument("operator/signal dimension mismatch");
    }
    if (warning != nullptr) {
        const double lmax = lambda_max_estimate(l);
        if (lmax > 0.0 && mu >= 2.0 / lmax) {
            *warning += "mu = " + std::to_string(mu) + " is in the divergent regime (>= 2/" +
                        std::to_string(lmax) + ")";
        }
    }
    Eigen::VectorXd out = y;
    for (int k = 0; k < steps; ++k) {
        out = out - mu * (l * out);
    }
    return out;
}

Eigen::VectorXd apply_polynomial(const Eigen::MatrixXd& g, const std::vector<double>& coeffs,
                                 const Eigen::VectorXd& s) {
    if (coeffs.empty()) throw std::invalid_argument("coefficient list must be non-empty");
    if (g.rows() != g.cols() || g.rows() != s.size()) {
        throw std::invalid_argument("operator/signal dimension mismatch");
    }
    Eigen::VectorXd out = coeffs.back() * s;
    for (auto it = std::next(coeffs.rbegin()); it != coeffs.rend(); ++it) {
        out = g * out + *it * s;
    }
    return out;
}

Eigen::VectorXd frequency_response_of(const Eigen::MatrixXd& h,
                                      const spectral::SpectralBasis& basis) {
    if (h.rows() != h.cols() || h.rows() != basis.size()) {
        throw std::invalid_argument("filter/basis dimension mismatch");
    }
    const Eigen::MatrixXd d = basis.eigenvectors.transpose() * h * basis.eigenvectors;
    double off = 0.0;
    Eigen::Index oi = 0, oj = 0;
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
        for (Eigen::Index j = 0; j < d.cols(); ++j) {
            if (i != j && std::abs(d(i, j)) > off) {
                off = std::abs(d(i, j));
                oi = i;
                oj = j;
            }
        }
    }
    const double tol = 1e-6 * std::max(1.0, h.cwiseAbs().maxCoeff());
    if (off > tol) {
        throw std::invalid_argument(
            "filter is not diagonalized by the basis: off-diagonal entry (" +
            std::to_string(oi) + "," + std::to_string(oj) + ") = " + std::to_string(off));
    }
    return d.diagonal();
}

double lambda_max_estimate(const Eigen::MatrixXd& m) {
    const Eigen::Index n = m.rows();
    if (n == 0) return 0.0;
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v(i) = 1.0 + 1e-3 * static_cast<double>(i);
    }
    v.normalize();
    for (int it = 0; it < 200; ++it) {
        Eigen::VectorXd w = m * v;
        const double norm = w.norm();
        if (norm < 1e-300) return 0.0;
        v = w / norm;
    }
    return v.dot(m * v);
}

EdgeRegularizer parse_regularizer(std::string_view name) {
    if (name == "hodge") return EdgeRegularizer::Hodge;
    if (name == "edge") return EdgeRegularizer::Edge;
    if (name == "line-graph") return EdgeRegularizer::LineGraph;
    throw std::invalid_argument("unknown regularizer '" + std::string(name) +
                                "' (expected hodge, edge, or line-graph)");
}

std::string regularizer_name(EdgeRegularizer r) {
    switch (r) {
        case EdgeRegularizer::Hodge: return "hodge";
        case EdgeRegularizer::Edge: return "edge";
        case EdgeRegularizer::LineGraph: return "line-graph";
    }
    return "?";
}

Eigen::MatrixXd regularizer_matrix(const SimplicialComplex& x, EdgeRegularizer r) {
    switch (r) {
        case EdgeRegularizer::Hodge:
            return x.hodge_laplacian(1);
        case EdgeRegularizer::Edge: {
            const Eigen::MatrixXd b1 = x.boundary_matrix(1).dense();
            return b1.transpose() * b1;
        }
        case EdgeRegularizer::LineGraph:
            return x.line_graph_laplacian();
    }
    throw std::invalid_argument("unknown regularizer");
}

Eigen::VectorXd DenoiseExperimentReport::mean() const {
    return errors.colwise().mean();
}

Eigen::VectorXd DenoiseExperimentReport::standard_error() const {
    const Eigen::Index t = errors.rows();
    if (t < 2) return Eigen::VectorXd::Zero(errors.cols());
    const Eigen::VectorXd mu = mean();
    Eigen::VectorXd var = Eigen::VectorXd::Zero(errors.cols());
    for (Eigen::Index i = 0; i < t; ++i) {
        var += (errors.row(i).transpose() - mu).array().square().matrix();
    }
    var /= static_cast<double>(t - 1);
    return (var / static_cast<double>(t)).cwiseSqrt();
}

DenoiseExperimentReport flow_denoise_experiment(
    const SimplicialComplex& x, const Eigen::VectorXd& truth, double sigma, std::uint64_t seed,
    const std::vector<EdgeRegularizer>& regularizers, double alpha, int trials) {
    const Eigen::Index m = x.count(1);
    if (truth.size() != m) throw std::invalid_argument("truth length does not match edge count");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");

    std::vector<Eigen::MatrixXd> qs;
    qs.reserve(regularizers.size());
    for (EdgeRegularizer r : regularizers) qs.push_back(regularizer_matrix(x, r));

    DenoiseExperimentReport report;
    report.regularizers = regularizers;
    report.errors.resize(trials, 1 + static_cast<Eigen::Index>(regularizers.size()));
    for (int trial = 0; trial < trials; ++trial) {
        SeededRng rng(seed + static_cast<std::uint64_t>(trial));
        Eigen::VectorXd noisy = truth;
        for (Eigen::Index i = 0; i < m; ++i) noisy(i) += sigma * rng.gaussian();
        report.errors(trial, 0) = (noisy - truth).norm();
        for (std::size_t r = 0; r < qs.size(); ++r) {
            const Eigen::VectorXd denoised = denoise_tikhonov(qs[r], noisy, alpha);
            report.errors(trial, 1 + static_cast<Eigen::Index>(r)) = (denoised - truth).norm();
        }
    }
    return report;
}

}  // namespace scsp::filters
