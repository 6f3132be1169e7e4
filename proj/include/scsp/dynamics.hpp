#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "scsp/complex.hpp"

namespace scsp::dynamics {

enum class Method { ExactSpectral, Euler };
Method parse_method(std::string_view name);  // "spectral" | "euler"

/// States sampled on the uniform grid t_i = i * dt, i = 0..floor(t_max/dt).
struct Trajectory {
    Eigen::VectorXd times;
    std::vector<Eigen::VectorXd> states;
    int order = 0;

    const Eigen::VectorXd& final_state() const { return states.back(); }
};

/// Componentwise scalar nonlinearity; must be odd (checked on sampled points).
struct Nonlinearity {
    std::string name;
    std::function<double(double)> fn;

    static Nonlinearity identity();
    static Nonlinearity tanh();
    static Nonlinearity custom(std::string name, std::function<double(double)> fn);
};
Nonlinearity parse_nonlinearity(std::string_view name);  // "identity" | "tanh"

/// Averaging dynamics ds/dt = -L s. ExactSpectral evaluates U exp(-Lambda t)
/// U^T s0 on the grid; Euler iterates s -= dt * L s. A note is appended to
/// *warning when dt >= 2/lambda_max under Euler.
Trajectory simulate_consensus(const Eigen::MatrixXd& l, const Eigen::VectorXd& s0, double dt,
                              double t_max, Method method, std::string* warning = nullptr);

/// Higher-order analog dw/dt = -L_k w; converges to the harmonic projection
/// of the initial condition. The Euler path applies the boundary operators in
/// split form (upper term then lower term), matching simulate_nonlinear with
/// the identity nonlinearity bit for bit.
Trajectory simulate_hodge_flow(const SimplicialComplex& x, int k, const Eigen::VectorXd& w0,
                               double dt, double t_max, Method method,
                               std::string* warning = nullptr);

/// Explicit Euler for dw/dt = -(B_{k+1} g(B_{k+1}^T w) + B_k^T g(B_k w)).
Trajectory simulate_nonlinear(const SimplicialComplex& x, int k, const Eigen::VectorXd& w0,
                              const Nonlinearity& g, double dt, double t_max);

/// Decentralized homology estimate: run `trials` seeded random initial
/// conditions to their asymptotic harmonic states and return the numerical
/// rank of the stacked final states (singular values below 1e-6 of the
/// largest count as zero).
Eigen::Index detect_holes(const SimplicialComplex& x, int k, int trials, std::uint64_t seed,
                          double dt, double t_max);

}  // namespace scsp::dynamics
