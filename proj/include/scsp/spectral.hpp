#pragma once

#include <vector>

#include <Eigen/Dense>

#include "scsp/complex.hpp"

namespace scsp::spectral {

/// Eigendecomposition of a symmetric operator: eigenvalues ascending,
/// eigenvectors orthonormal in matching columns, and each eigenvector
/// sign-fixed so its first component above 1e-12 in magnitude is positive
/// (reproducible across runs and platforms).
struct SpectralBasis {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;

    Eigen::Index size() const { return eigenvalues.size(); }
};

/// Cyclic Jacobi eigensolver for symmetric matrices. The input must be
/// symmetric within 1e-10 (relative); it is symmetrized as (M + M^T)/2
/// before sweeping. Convergence: max off-diagonal magnitude <= 1e-12 times
/// the Frobenius norm, capped at 100 sweeps.
SpectralBasis eig_sym(const Eigen::MatrixXd& m);

/// Forward / inverse transform in the basis: s_tilde = U^T s and s = U s_tilde.
Eigen::VectorXd gft(const SpectralBasis& basis, const Eigen::VectorXd& s);
Eigen::VectorXd igft(const SpectralBasis& basis, const Eigen::VectorXd& s_tilde);

/// Threshold below which an eigenvalue counts as zero: rel_tol * max(1, lambda_max).
double kernel_threshold(const SpectralBasis& basis, double rel_tol = 1e-8);

/// Pseudo-inverse application x = U diag(1/lambda) U^T b, dropping eigenvalues
/// at or below the cutoff.
Eigen::VectorXd pinv_apply(const SpectralBasis& basis, const Eigen::VectorXd& b,
                           double cutoff = 1e-10);

/// Orthogonal split of an edge flow into gradient, curl, and harmonic parts,
/// with the minimum-norm potentials that generate the first two.
struct HodgeDecomposition {
    Eigen::VectorXd gradient;   // B_1^T node_potential
    Eigen::VectorXd curl;       // B_2 triangle_potential
    Eigen::VectorXd harmonic;   // flow - gradient - curl
    Eigen::VectorXd node_potential;
    Eigen::VectorXd triangle_potential;
};

HodgeDecomposition hodge_decompose(const SimplicialComplex& x, const Eigen::VectorXd& flow);

/// Orthonormal basis of ker(L_k); betti(x, k) is its dimension.
Eigen::MatrixXd harmonic_basis(const SimplicialComplex& x, int k, double kernel_tol = 1e-8);
Eigen::Index betti(const SimplicialComplex& x, int k, double kernel_tol = 1e-8);

/// Eigenvector lifts into the edge space: each nonzero eigenpair (lambda, v)
/// of L_0 yields the L_1 eigenpair (lambda, B_1^T v); each nonzero eigenpair
/// (theta, t) of B_2^T B_2 yields (theta, B_2 t). Together with ker(L_1) these
/// span the whole edge space.
struct Lift {
    double eigenvalue;
    Eigen::VectorXd vector;
};
std::vector<Lift> lift_gradient_eigenvectors(const SimplicialComplex& x);
std::vector<Lift> lift_curl_eigenvectors(const SimplicialComplex& x);

}  // namespace scsp::spectral
