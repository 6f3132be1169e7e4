#include "scsp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace scsp::spectral {

namespace {

void fix_signs(Eigen::MatrixXd& u) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
        for (Eigen::Index r = 0; r < u.rows(); ++r) {
            if (std::abs(u(r, c)) > 1e-12) {
                if (u(r, c) < 0) u.col(c) = -u.col(c);
                break;
            }
        }
    }
}

}  // namespace

SpectralBasis eig_sym(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix is not square");
    const Eigen::Index n = m.rows();
    if (n == 0) return {Eigen::VectorXd(0), Eigen::MatrixXd(0, 0)};

    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw std::invalid_argument("matrix is not symmetric within 1e-10");
    }

    Eigen::MatrixXd a = 0.5 * (m + m.transpose());
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
    const double tol = 1e-12 * a.norm();

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                off = std::max(off, std::abs(a(p, q)));
            }
        }
        if (off <= tol) break;

        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= tol) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // Rotate rows/columns p and q of A, columns p and q of V.
                for (Eigen::Index i = 0; i < n; ++i) {
                    const double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (Eigen::Index i = 0; i < n; ++i) {
                    const double api = a(p, i), aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = s * api + c * aqi;
                }
                for (Eigen::Index i = 0; i < n; ++i) {
                    const double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
    }

    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&a](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

    SpectralBasis basis;
    basis.eigenvalues.resize(n);
    basis.eigenvectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        basis.eigenvalues(i) = a(perm[static_cast<std::size_t>(i)],
                                 perm[static_cast<std::size_t>(i)]);
        basis.eigenvectors.col(i) = v.col(perm[static_cast<std::size_t>(i)]);
    }
    fix_signs(basis.eigenvectors);
    return basis;
}

Eigen::VectorXd gft(const SpectralBasis& basis, const Eigen::VectorXd& s) {
    if (s.size() != basis.size()) throw std::invalid_argument("signal/basis dimension mismatch");
    return basis.eigenvectors.transpose() * s;
}

Eigen::VectorXd igft(const SpectralBasis& basis, const Eigen::VectorXd& s_tilde) {
    if (s_tilde.size() != basis.size()) {
        throw std::invalid_argument("signal/basis dimension mismatch");
    }
    return basis.eigenvectors * s_tilde;
}

double kernel_threshold(const SpectralBasis& basis, double rel_tol) {
    const double lambda_max = basis.size() > 0 ? basis.eigenvalues.maxCoeff() : 0.0;
    return rel_tol * std::max(1.0, lambda_max);
}

Eigen::VectorXd pinv_apply(const SpectralBasis& basis, const Eigen::VectorXd& b,
                           double cutoff) {
    if (b.size() != basis.size()) throw std::invalid_argument("rhs/basis dimension mismatch");
    Eigen::VectorXd coeffs = basis.eigenvectors.transpose() * b;
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
        coeffs(i) = basis.eigenvalues(i) > cutoff ? coeffs(i) / basis.eigenvalues(i) : 0.0;
    }
    return basis.eigenvectors * coeffs;
}

HodgeDecomposition hodge_decompose(const SimplicialComplex& x, const Eigen::VectorXd& flow) {
    const Eigen::Index m = x.count(1);
    if (flow.size() != m) {
        throw std::invalid_argument("flow length " + std::to_string(flow.size()) +
                                    " does not match edge count " + std::to_string(m));
    }
    const Eigen::MatrixXd b1 = x.boundary_matrix(1).dense();
    const Eigen::MatrixXd b2 = x.boundary_matrix(2).dense();

    HodgeDecomposition d;
    // Minimum-norm v solving B_1 B_1^T v = B_1 f, via the spectral
    // pseudo-inverse of L_0 (rank-deficient: potentials are defined up to a
    // constant shift per component).
    const SpectralBasis l0 = eig_sym(b1 * b1.transpose());
    d.node_potential = pinv_apply(l0, b1 * flow);
    d.gradient = b1.transpose() * d.node_potential;

    if (b2.cols() > 0) {
        const SpectralBasis t = eig_sym(b2.transpose() * b2);
        d.triangle_potential = pinv_apply(t, b2.transpose() * flow);
        d.curl = b2 * d.triangle_potential;
    } else {
        d.triangle_potential = Eigen::VectorXd(0);
        d.curl = Eigen::VectorXd::Zero(m);
    }
    d.harmonic = flow - d.gradient - d.curl;
    return d;
}

Eigen::MatrixXd harmonic_basis(const SimplicialComplex& x, int k, double kernel_tol) {
    const SpectralBasis basis = eig_sym(x.hodge_laplacian(k));
    const double thresh = kernel_threshold(basis, kernel_tol);
    Eigen::Index dim = 0;
    while (dim < basis.size() && basis.eigenvalues(dim) < thresh) ++dim;
    return basis.eigenvectors.leftCols(dim);
}

Eigen::Index betti(const SimplicialComplex& x, int k, double kernel_tol) {
    return harmonic_basis(x, k, kernel_tol).cols();
}

std::vector<Lift> lift_gradient_eigenvectors(const SimplicialComplex& x) {
    if (x.count(1) == 0) throw std::invalid_argument("complex has no edges");
    const Eigen::MatrixXd b1 = x.boundary_matrix(1).dense();
    const SpectralBasis l0 = eig_sym(b1 * b1.transpose());
    const double thresh = kernel_threshold(l0);
    std::vector<Lift> lifts;
    for (Eigen::Index i = 0; i < l0.size(); ++i) {
        if (l0.eigenvalues(i) > thresh) {
            lifts.push_back({l0.eigenvalues(i), b1.transpose() * l0.eigenvectors.col(i)});
        }
    }
    return lifts;
}

std::vector<Lift> lift_curl_eigenvectors(const SimplicialComplex& x) {
    if (x.count(1) == 0) throw std::invalid_argument("complex has no edges");
    std::vector<Lift> lifts;
    const Eigen::MatrixXd b2 = x.boundary_matrix(2).dense();
    if (b2.cols() == 0) return lifts;
    const SpectralBasis t = eig_sym(b2.transpose() * b2);
    const double thresh = kernel_threshold(t);
    for (Eigen::Index i = 0; i < t.size(); ++i) {
        if (t.eigenvalues(i) > thresh) {
            lifts.push_back({t.eigenvalues(i), b2 * t.eigenvectors.col(i)});
        }
    }
    return lifts;
}

}  // namespace scsp::spectral
