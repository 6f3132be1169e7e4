#include "scsp/classic.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace scsp::classic {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_lengths(const Eigen::VectorXd& coeffs, const Eigen::VectorXd& s) {
    if (coeffs.size() != s.size()) {
        throw std::invalid_argument("coefficient and signal lengths differ");
    }
    if (coeffs.size() == 0) throw std::invalid_argument("signal length must be >= 1");
}

}  // namespace

Eigen::MatrixXcd dft_matrix(Eigen::Index n) {
    if (n < 1) throw std::invalid_argument("DFT size must be >= 1");
    Eigen::MatrixXcd f(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            // omega^(jk) with the exponent reduced mod n to keep the argument small
            const double e = static_cast<double>((j * k) % n);
            const double a = -2.0 * kPi * e / static_cast<double>(n);
            f(j, k) = scale * std::complex<double>(std::cos(a), std::sin(a));
        }
    }
    return f;
}

Eigen::MatrixXd circulant_filter(const Eigen::VectorXd& coeffs) {
    const Eigen::Index n = coeffs.size();
    if (n == 0) throw std::invalid_argument("empty coefficient vector");
    Eigen::MatrixXd h(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            h(i, j) = coeffs(((i - j) % n + n) % n);
        }
    }
    return h;
}

Eigen::MatrixXd cyclic_shift(Eigen::Index n) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
    if (n == 1) {
        c(0) = 1.0;
    } else {
        c(1) = 1.0;
    }
    return circulant_filter(c);
}

Eigen::VectorXcd frequency_response(const Eigen::VectorXd& coeffs) {
    const Eigen::Index n = coeffs.size();
    if (n == 0) throw std::invalid_argument("empty coefficient vector");
    return std::sqrt(static_cast<double>(n)) *
           (dft_matrix(n) * coeffs.cast<std::complex<double>>());
}

Eigen::VectorXd apply_filter_matrix(const Eigen::VectorXd& coeffs, const Eigen::VectorXd& s) {
    check_lengths(coeffs, s);
    return circulant_filter(coeffs) * s;
}

Eigen::VectorXd apply_filter_convolution(const Eigen::VectorXd& coeffs,
                                         const Eigen::VectorXd& s) {
    check_lengths(coeffs, s);
    const Eigen::Index n = s.size();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (Eigen::Index t = 0; t < n; ++t) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            acc += coeffs(i) * s(((t - i) % n + n) % n);
        }
        out(t) = acc;
    }
    return out;
}

Eigen::VectorXd apply_filter_shift_form(const Eigen::VectorXd& coeffs,
                                        const Eigen::VectorXd& s) {
    check_lengths(coeffs, s);
    const Eigen::Index n = s.size();
    const Eigen::MatrixXd shift = cyclic_shift(n);
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd filt = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        filt += coeffs(k) * power;
        power = shift * power;
    }
    return filt * s;
}

Eigen::VectorXd apply_filter_state_space(const Eigen::VectorXd& coeffs,
                                         const Eigen::VectorXd& s) {
    check_lengths(coeffs, s);
    const Eigen::Index n = s.size();
    const Eigen::MatrixXd shift = cyclic_shift(n);
    Eigen::VectorXd state = s;
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (Eigen::Index t = 0; t < n; ++t) {
        out += coeffs(t) * state;
        state = shift * state;
    }
    return out;
}

Eigen::VectorXd apply_filter_spectral(const Eigen::VectorXd& coeffs,
                                      const Eigen::VectorXd& s) {
    check_lengths(coeffs, s);
    const Eigen::Index n = s.size();
    const Eigen::MatrixXcd f = dft_matrix(n);
    const Eigen::VectorXcd response = frequency_response(coeffs);
    const Eigen::VectorXcd out =
        f.adjoint() * response.asDiagonal() * (f * s.cast<std::complex<double>>());
    const double imag_residue = out.imag().cwiseAbs().maxCoeff();
    if (imag_residue > 1e-10) {
        throw std::runtime_error("spectral filter output has imaginary residue " +
                                 std::to_string(imag_residue));
    }
    return out.real();
}

}  // namespace scsp::classic
