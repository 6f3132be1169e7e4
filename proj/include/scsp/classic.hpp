#pragma once

#include <Eigen/Dense>

namespace scsp::classic {

/// Unitary DFT matrix F[j,k] = omega^{jk} / sqrt(n), omega = exp(-2*pi*i/n).
Eigen::MatrixXcd dft_matrix(Eigen::Index n);

/// Time-invariant filter as a circulant matrix, H[i,j] = c[(i-j) mod n].
Eigen::MatrixXd circulant_filter(const Eigen::VectorXd& coeffs);

/// Cyclic shift operator S: the circulant of (0,1,0,...,0); the state
/// transition of a linear diffusion on the directed cycle.
Eigen::MatrixXd cyclic_shift(Eigen::Index n);

/// Filter eigenvalues (frequency response) sqrt(n) * F * c.
Eigen::VectorXcd frequency_response(const Eigen::VectorXd& coeffs);

/// The same filtering output by four routes, used to cross-validate each
/// other: dense circulant product, cyclic convolution, a sum of shift-operator
/// powers, and state-space iteration (shift the state, accumulate c_t x(t)).
Eigen::VectorXd apply_filter_matrix(const Eigen::VectorXd& coeffs, const Eigen::VectorXd& s);
Eigen::VectorXd apply_filter_convolution(const Eigen::VectorXd& coeffs,
                                         const Eigen::VectorXd& s);
Eigen::VectorXd apply_filter_shift_form(const Eigen::VectorXd& coeffs,
                                        const Eigen::VectorXd& s);
Eigen::VectorXd apply_filter_state_space(const Eigen::VectorXd& coeffs,
                                         const Eigen::VectorXd& s);

/// Spectral route F^* diag(lambda) F s for a real input; verifies the
/// imaginary residue is below 1e-10 before dropping it.
Eigen::VectorXd apply_filter_spectral(const Eigen::VectorXd& coeffs, const Eigen::VectorXd& s);

}  // namespace scsp::classic
