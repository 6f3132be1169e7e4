#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "scsp/complex.hpp"

namespace scsp::snn {

enum class Activation { Identity, Tanh, Relu };
Activation parse_activation(std::string_view name);
std::string activation_name(Activation a);
bool activation_is_odd(Activation a);

/// How each layer's shift operator is built from the order-k Hodge Laplacian
/// parts L_low = B_k^T B_k and L_up = B_{k+1} B_{k+1}^T:
///  - HodgePolynomial: one shared H = sum_i coeffs[i] (L_low + L_up)^i.
///    Empty coeffs mean the default H = I - mu L with mu = 1/lambda_max.
///  - SplitGains: per-layer H_l = I + a_l L_low + b_l L_up with the gains
///    (a_l, b_l) trained alongside the weights.
enum class ShiftKind { HodgePolynomial, SplitGains };

struct LayerParams {
    Eigen::MatrixXd weights;  // input features x output features
    double lower_gain = -0.1;
    double upper_gain = -0.1;
};

struct SNNModel {
    int order = 1;
    Activation activation = Activation::Identity;
    ShiftKind shift_kind = ShiftKind::HodgePolynomial;
    std::vector<double> shift_coeffs;  // empty => default I - mu L_k
    std::vector<LayerParams> layers;

    Eigen::Index depth() const { return static_cast<Eigen::Index>(layers.size()); }
    std::vector<Eigen::Index> feature_dims() const;
};

/// Fresh model with weights drawn uniformly from
/// [-1/sqrt(fan_in), +1/sqrt(fan_in)] using the seeded generator.
SNNModel make_model(int order, Activation activation, ShiftKind kind,
                    std::vector<double> shift_coeffs,
                    const std::vector<Eigen::Index>& feature_dims, std::uint64_t seed);

/// Model description as JSON: order, activation, feature_dims, seed, and an
/// optional shift object ({"kind":"hodge","coeffs":[...]} or
/// {"kind":"split","lower_gain":g,"upper_gain":g}).
SNNModel model_from_json(const std::string& text);
SNNModel model_from_json_file(const std::string& path);

/// Layer-by-layer forward pass Y <- sigma(H Y W).
Eigen::MatrixXd forward(const SNNModel& model, const SimplicialComplex& x,
                        const Eigen::MatrixXd& y0);

/// Weight-tied fixed-point iteration of the first layer, stopping when the
/// update falls below tol (relative); reports divergence (non-finite values
/// or no convergence within max_iters) as an error.
Eigen::MatrixXd forward_recurrent(const SNNModel& model, const SimplicialComplex& x,
                                  const Eigen::MatrixXd& y0, int max_iters = 1000,
                                  double tol = 1e-8);

/// Orientation flip of the chosen order-k simplices: D carries -1 on the
/// flipped ones, and the boundary operators become B_k D and D B_{k+1}.
struct OrientationFlip {
    Eigen::VectorXd diag;
    Eigen::MatrixXd b_lower;  // B_k D
    Eigen::MatrixXd b_upper;  // D B_{k+1}
};
OrientationFlip orientation_flip(const SimplicialComplex& x, int order,
                                 const std::vector<Eigen::Index>& flip_set);

/// Runs the model on D*Y0 with operators rebuilt from the flipped orientation
/// and compares against D*forward(Y0). Odd activations must commute (max
/// deviation <= 1e-10); relu generally does not.
struct EquivarianceReport {
    double max_deviation = 0.0;
};
EquivarianceReport check_equivariance(const SNNModel& model, const SimplicialComplex& x,
                                      const Eigen::MatrixXd& y0,
                                      const std::vector<Eigen::Index>& flip_set);

struct Sample {
    Eigen::MatrixXd input;
    Eigen::MatrixXd target;
};

/// Mean-squared-error loss over the dataset and its analytic gradients with
/// respect to every trainable parameter.
struct Gradients {
    std::vector<Eigen::MatrixXd> weights;
    std::vector<double> lower_gains;
    std::vector<double> upper_gains;
};
std::pair<double, Gradients> loss_and_gradients(const SNNModel& model,
                                                const SimplicialComplex& x,
                                                const std::vector<Sample>& dataset);

/// Full-batch gradient descent; the input model is left untouched. The loss
/// curve records the loss at the start of each epoch. Non-finite loss is
/// reported as an error (divergence; retry with a halved learning rate).
struct TrainResult {
    SNNModel model;
    std::vector<double> loss_curve;
};
TrainResult train(const SNNModel& model, const SimplicialComplex& x,
                  const std::vector<Sample>& dataset, double lr, int epochs);

}  // namespace scsp::snn
