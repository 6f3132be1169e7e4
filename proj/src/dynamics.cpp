#include "scsp/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "scsp/filters.hpp"
#include "scsp/rng.hpp"
#include "scsp/spectral.hpp"

namespace scsp::dynamics {

namespace {

Eigen::VectorXd make_grid(double dt, double t_max) {
    if (dt <= 0.0) throw std::invalid_argument("dt must be > 0");
    if (t_max < 0.0) throw std::invalid_argument("t_max must be >= 0");
    const auto steps = static_cast<Eigen::Index>(std::floor(t_max / dt + 1e-9));
    Eigen::VectorXd times(steps + 1);
    for (Eigen::Index i = 0; i <= steps; ++i) times(i) = static_cast<double>(i) * dt;
    return times;
}

void warn_if_divergent(const Eigen::MatrixXd& l, double dt, std::string* warning) {
    if (warning == nullptr) return;
    const double lmax = filters::lambda_max_estimate(l);
    if (lmax > 0.0 && dt >= 2.0 / lmax) {
        *warning += "dt = " + std::to_string(dt) + " is at or beyond the Euler stability "
                    "limit 2/lambda_max = " + std::to_string(2.0 / lmax);
    }
}

void check_odd(const Nonlinearity& g) {
    for (double x : {0.1, 0.37, 0.9, 1.7, 3.0, 7.5}) {
        if (std::abs(g.fn(x) + g.fn(-x)) > 1e-10) {
            throw std::invalid_argument("nonlinearity '" + g.name + "' is not odd at x = " +
                                        std::to_string(x));
        }
    }
}

}  // namespace

Method parse_method(std::string_view name) {
    if (name == "spectral") return Method::ExactSpectral;
    if (name == "euler") return Method::Euler;
    throw std::invalid_argument("unknown method '" + std::string(name) +
                                "' (expected spectral or euler)");
}

Nonlinearity Nonlinearity::identity() {
    return {"identity", [](double v) { return v; }};
}

Nonlinearity Nonlinearity::tanh() {
    return {"tanh", [](double v) { return std::tanh(v); }};
}

Nonlinearity Nonlinearity::custom(std::string name, std::function<double(double)> fn) {
    return {std::move(name), std::move(fn)};
}

Nonlinearity parse_nonlinearity(std::string_view name) {
    if (name == "identity") return Nonlinearity::identity();
    if (name == "tanh") return Nonlinearity::tanh();
    throw std::invalid_argument("unknown nonlinearity '" + std::string(name) +
                                "' (expected identity or tanh)");
}

Trajectory simulate_consensus(const Eigen::MatrixXd& l, const Eigen::VectorXd& s0, double dt,
                              double t_max, Method method, std::string* warning) {
    if (l.rows() != l.cols() || l.rows() != s0.size()) {
        throw std::invalid_argument("operator/state dimension mismatch");
    }
    Trajectory traj;
    traj.order = 0;
    traj.times = make_grid(dt, t_max);
    traj.states.reserve(static_cast<std::size_t>(traj.times.size()));

    if (method == Method::ExactSpectral) {
        const spectral::SpectralBasis basis = spectral::eig_sym(l);
        const Eigen::VectorXd coeffs = basis.eigenvectors.transpose() * s0;
        for (Eigen::Index i = 0; i < traj.times.size(); ++i) {
            const Eigen::ArrayXd damped =
                (-basis.eigenvalues.array() * traj.times(i)).exp() * coeffs.array();
            traj.states.push_back(basis.eigenvectors * damped.matrix());
        }
    } else {
        warn_if_divergent(l, dt, warning);
        Eigen::VectorXd s = s0;
        traj.states.push_back(s);
        for (Eigen::Index i = 1; i < traj.times.size(); ++i) {
            s = s - dt * (l * s);
            traj.states.push_back(s);
        }
    }
    return traj;
}

namespace {

// Shared Euler stepper for the split boundary form; the linear flow is the
// identity-nonlinearity case.
Trajectory euler_split(const SimplicialComplex& x, int k, const Eigen::VectorXd& w0,
                       const Nonlinearity& g, double dt, double t_max) {
    const Eigen::Index n = x.count(k);
    if (w0.size() != n) throw std::invalid_argument("state dimension mismatch");

    const Eigen::MatrixXd b_low =
        k >= 1 ? x.boundary_matrix(k).dense() : Eigen::MatrixXd(0, n);
    const Eigen::MatrixXd b_up = (k + 1 <= x.max_order() && x.count(k + 1) > 0)
                                     ? x.boundary_matrix(k + 1).dense()
                                     : Eigen::MatrixXd(n, 0);

    auto apply = [&g](Eigen::VectorXd v) {
        for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = g.fn(v(i));
        return v;
    };

    Trajectory traj;
    traj.order = k;
    traj.times = make_grid(dt, t_max);
    traj.states.reserve(static_cast<std::size_t>(traj.times.size()));
    Eigen::VectorXd w = w0;
    traj.states.push_back(w);
    for (Eigen::Index i = 1; i < traj.times.size(); ++i) {
        Eigen::VectorXd rate = Eigen::VectorXd::Zero(n);
        if (b_up.cols() > 0) rate += b_up * apply(b_up.transpose() * w);
        if (b_low.rows() > 0) rate += b_low.transpose() * apply(b_low * w);
        w = w - dt * rate;
        traj.states.push_back(w);
    }
    return traj;
}

}  // namespace

Trajectory simulate_hodge_flow(const SimplicialComplex& x, int k, const Eigen::VectorXd& w0,
                               double dt, double t_max, Method method, std::string* warning) {
    if (k < 0 || k > x.max_order()) {
        throw std::invalid_argument("complex has no simplices of order " + std::to_string(k));
    }
    if (method == Method::Euler) {
        if (warning != nullptr) warn_if_divergent(x.hodge_laplacian(k), dt, warning);
        return euler_split(x, k, w0, Nonlinearity::identity(), dt, t_max);
    }
    Trajectory traj = simulate_consensus(x.hodge_laplacian(k), w0, dt, t_max, method, warning);
    traj.order = k;
    return traj;
}

Trajectory simulate_nonlinear(const SimplicialComplex& x, int k, const Eigen::VectorXd& w0,
                              const Nonlinearity& g, double dt, double t_max) {
    if (k < 0 || k > x.max_order()) {
        throw std::invalid_argument("complex has no simplices of order " + std::to_string(k));
    }
    check_odd(g);
    return euler_split(x, k, w0, g, dt, t_max);
}

Eigen::Index detect_holes(const SimplicialComplex& x, int k, int trials, std::uint64_t seed,
                          double dt, double t_max) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const Eigen::Index n = x.count(k);
    Eigen::MatrixXd finals(n, trials);
    for (int t = 0; t < trials; ++t) {
        SeededRng rng(seed + static_cast<std::uint64_t>(t));
        Eigen::VectorXd w0(n);
        for (Eigen::Index i = 0; i < n; ++i) w0(i) = rng.gaussian();
        finals.col(t) =
            simulate_hodge_flow(x, k, w0, dt, t_max, Method::ExactSpectral).final_state();
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(finals);
    if (svd.singularValues().size() == 0) return 0;
    // The relative cutoff needs an absolute floor so an all-decayed state
    // matrix (trivial homology) reads as rank 0.
    const double cut = 1e-6 * std::max(svd.singularValues()(0), 1e-3);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()(i) > cut) ++rank;
    }
    return rank;
}

}  // namespace scsp::dynamics
