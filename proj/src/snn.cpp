#include "scsp/snn.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "scsp/rng.hpp"
#include "scsp/spectral.hpp"

namespace scsp::snn {

namespace {

struct Operators {
    Eigen::MatrixXd l_low;  // B_k^T B_k
    Eigen::MatrixXd l_up;   // B_{k+1} B_{k+1}^T
};

Operators build_operators(const SimplicialComplex& x, int k) {
    if (k < 0 || k > x.max_order()) {
        throw std::invalid_argument("complex has no simplices of order " + std::to_string(k));
    }
    const Eigen::Index n = x.count(k);
    Operators ops;
    ops.l_low = Eigen::MatrixXd::Zero(n, n);
    ops.l_up = Eigen::MatrixXd::Zero(n, n);
    if (k >= 1) {
        const Eigen::MatrixXd b = x.boundary_matrix(k).dense();
        ops.l_low = b.transpose() * b;
    }
    if (k + 1 <= x.max_order() && x.count(k + 1) > 0) {
        const Eigen::MatrixXd b = x.boundary_matrix(k + 1).dense();
        ops.l_up = b * b.transpose();
    }
    return ops;
}

// Shared shift for the HodgePolynomial kind.
Eigen::MatrixXd hodge_shift(const SNNModel& model, const Operators& ops) {
    const Eigen::MatrixXd l = ops.l_low + ops.l_up;
    std::vector<double> coeffs = model.shift_coeffs;
    if (coeffs.empty()) {
        const spectral::SpectralBasis basis = spectral::eig_sym(l);
        const double lmax = basis.size() > 0 ? basis.eigenvalues.maxCoeff() : 0.0;
        coeffs = {1.0, lmax > 1e-12 ? -1.0 / lmax : 0.0};
    }
    const Eigen::Index n = l.rows();
    Eigen::MatrixXd h = coeffs.back() * Eigen::MatrixXd::Identity(n, n);
    for (auto it = std::next(coeffs.rbegin()); it != coeffs.rend(); ++it) {
        h = l * h + *it * Eigen::MatrixXd::Identity(n, n);
    }
    return h;
}

Eigen::MatrixXd layer_shift(const SNNModel& model, const Operators& ops,
                            const Eigen::MatrixXd& shared, std::size_t layer) {
    if (model.shift_kind == ShiftKind::HodgePolynomial) return shared;
    const auto& lp = model.layers[layer];
    return Eigen::MatrixXd::Identity(ops.l_low.rows(), ops.l_low.cols()) +
           lp.lower_gain * ops.l_low + lp.upper_gain * ops.l_up;
}

double activate(Activation a, double z) {
    switch (a) {
        case Activation::Identity: return z;
        case Activation::Tanh: return std::tanh(z);
        case Activation::Relu: return z > 0.0 ? z : 0.0;
    }
    return z;
}

double activate_grad(Activation a, double z) {
    switch (a) {
        case Activation::Identity: return 1.0;
        case Activation::Tanh: {
            const double t = std::tanh(z);
            return 1.0 - t * t;
        }
        case Activation::Relu: return z > 0.0 ? 1.0 : 0.0;
    }
    return 1.0;
}

Eigen::MatrixXd activate(Activation a, Eigen::MatrixXd z) {
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = activate(a, z(i));
    return z;
}

struct LayerCache {
    Eigen::MatrixXd input;   // Y_{l-1}
    Eigen::MatrixXd mixed;   // Y_{l-1} W_l
    Eigen::MatrixXd pre;     // H_l (Y_{l-1} W_l)
};

Eigen::MatrixXd forward_with_ops(const SNNModel& model, const Operators& ops,
                                 const Eigen::MatrixXd& y0,
                                 std::vector<LayerCache>* caches) {
    if (model.layers.empty()) throw std::invalid_argument("model has no layers");
    const std::vector<Eigen::Index> dims = model.feature_dims();
    if (y0.rows() != ops.l_low.rows()) {
        throw std::invalid_argument("feature rows do not match the simplex count");
    }
    if (y0.cols() != dims.front()) {
        throw std::invalid_argument("feature columns do not match the first layer");
    }
    const Eigen::MatrixXd shared = model.shift_kind == ShiftKind::HodgePolynomial
                                       ? hodge_shift(model, ops)
                                       : Eigen::MatrixXd();
    Eigen::MatrixXd y = y0;
    for (std::size_t l = 0; l < model.layers.size(); ++l) {
        const auto& lp = model.layers[l];
        if (y.cols() != lp.weights.rows()) {
            throw std::invalid_argument("dimension chain mismatch at layer " +
                                        std::to_string(l));
        }
        const Eigen::MatrixXd h = layer_shift(model, ops, shared, l);
        LayerCache cache;
        cache.input = y;
        cache.mixed = y * lp.weights;
        cache.pre = h * cache.mixed;
        y = activate(model.activation, cache.pre);
        if (caches != nullptr) caches->push_back(std::move(cache));
    }
    return y;
}

nlohmann::json parse_json(const std::string& text) {
    return nlohmann::json::parse(text);
}

}  // namespace

Activation parse_activation(std::string_view name) {
    if (name == "identity") return Activation::Identity;
    if (name == "tanh") return Activation::Tanh;
    if (name == "relu") return Activation::Relu;
    throw std::invalid_argument("unknown activation '" + std::string(name) + "'");
}

std::string activation_name(Activation a) {
    switch (a) {
        case Activation::Identity: return "identity";
        case Activation::Tanh: return "tanh";
        case Activation::Relu: return "relu";
    }
    return "?";
}

bool activation_is_odd(Activation a) { return a != Activation::Relu; }

std::vector<Eigen::Index> SNNModel::feature_dims() const {
    std::vector<Eigen::Index> dims;
    if (layers.empty()) return dims;
    dims.push_back(layers.front().weights.rows());
    for (const auto& l : layers) dims.push_back(l.weights.cols());
    return dims;
}

SNNModel make_model(int order, Activation activation, ShiftKind kind,
                    std::vector<double> shift_coeffs,
                    const std::vector<Eigen::Index>& feature_dims, std::uint64_t seed) {
    if (feature_dims.size() < 2) {
        throw std::invalid_argument("need at least input and output feature dimensions");
    }
    SNNModel model;
    model.order = order;
    model.activation = activation;
    model.shift_kind = kind;
    model.shift_coeffs = std::move(shift_coeffs);
    SeededRng rng(seed);
    for (std::size_t l = 0; l + 1 < feature_dims.size(); ++l) {
        LayerParams lp;
        const Eigen::Index fan_in = feature_dims[l];
        const Eigen::Index fan_out = feature_dims[l + 1];
        if (fan_in < 1 || fan_out < 1) throw std::invalid_argument("feature dims must be >= 1");
        const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
        lp.weights.resize(fan_in, fan_out);
        for (Eigen::Index i = 0; i < fan_in; ++i) {
            for (Eigen::Index j = 0; j < fan_out; ++j) {
                lp.weights(i, j) = rng.uniform(-bound, bound);
            }
        }
        model.layers.push_back(std::move(lp));
    }
    return model;
}

SNNModel model_from_json(const std::string& text) {
    const nlohmann::json j = parse_json(text);
    const int order = j.value("order", 1);
    const Activation act = parse_activation(j.value("activation", "identity"));
    const auto seed = j.value("seed", std::uint64_t{0});
    if (!j.contains("feature_dims")) {
        throw std::invalid_argument("model spec needs feature_dims");
    }
    std::vector<Eigen::Index> dims;
    for (const auto& d : j.at("feature_dims")) dims.push_back(d.get<Eigen::Index>());

    ShiftKind kind = ShiftKind::HodgePolynomial;
    std::vector<double> coeffs;
    double lower_gain = -0.1, upper_gain = -0.1;
    if (j.contains("shift")) {
        const auto& s = j.at("shift");
        const std::string kind_name = s.value("kind", "hodge");
        if (kind_name == "hodge") {
            kind = ShiftKind::HodgePolynomial;
            if (s.contains("coeffs")) {
                for (const auto& c : s.at("coeffs")) coeffs.push_back(c.get<double>());
            }
        } else if (kind_name == "split") {
            kind = ShiftKind::SplitGains;
            lower_gain = s.value("lower_gain", -0.1);
            upper_gain = s.value("upper_gain", -0.1);
        } else {
            throw std::invalid_argument("unknown shift kind '" + kind_name + "'");
        }
    }
    SNNModel model = make_model(order, act, kind, std::move(coeffs), dims, seed);
    for (auto& l : model.layers) {
        l.lower_gain = lower_gain;
        l.upper_gain = upper_gain;
    }
    return model;
}

SNNModel model_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model spec: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json(buf.str());
}

Eigen::MatrixXd forward(const SNNModel& model, const SimplicialComplex& x,
                        const Eigen::MatrixXd& y0) {
    return forward_with_ops(model, build_operators(x, model.order), y0, nullptr);
}

Eigen::MatrixXd forward_recurrent(const SNNModel& model, const SimplicialComplex& x,
                                  const Eigen::MatrixXd& y0, int max_iters, double tol) {
    if (model.layers.empty()) throw std::invalid_argument("model has no layers");
    const auto& w = model.layers.front().weights;
    if (w.rows() != w.cols()) {
        throw std::invalid_argument("recurrent iteration needs square weights");
    }
    const Operators ops = build_operators(x, model.order);
    const Eigen::MatrixXd shared = model.shift_kind == ShiftKind::HodgePolynomial
                                       ? hodge_shift(model, ops)
                                       : Eigen::MatrixXd();
    const Eigen::MatrixXd h = layer_shift(model, ops, shared, 0);
    Eigen::MatrixXd y = y0;
    for (int it = 0; it < max_iters; ++it) {
        Eigen::MatrixXd next = activate(model.activation, h * (y * w));
        if (!next.allFinite()) {
            throw std::runtime_error("recurrent iteration diverged (non-finite state)");
        }
        const double delta = (next - y).cwiseAbs().maxCoeff();
        y = std::move(next);
        if (delta <= tol * (1.0 + y.cwiseAbs().maxCoeff())) return y;
    }
    throw std::runtime_error("recurrent iteration did not reach a fixed point within " +
                             std::to_string(max_iters) + " iterations");
}

OrientationFlip orientation_flip(const SimplicialComplex& x, int order,
                                 const std::vector<Eigen::Index>& flip_set) {
    const Eigen::Index n = x.count(order);
    OrientationFlip flip;
    flip.diag = Eigen::VectorXd::Ones(n);
    for (Eigen::Index i : flip_set) {
        if (i < 0 || i >= n) {
            throw std::invalid_argument("flip index " + std::to_string(i) + " out of range");
        }
        flip.diag(i) = -1.0;
    }
    flip.b_lower = order >= 1 ? x.boundary_matrix(order).dense() : Eigen::MatrixXd(0, n);
    flip.b_upper = (order + 1 <= x.max_order() && x.count(order + 1) > 0)
                       ? x.boundary_matrix(order + 1).dense()
                       : Eigen::MatrixXd(n, 0);
    flip.b_lower = flip.b_lower * flip.diag.asDiagonal();
    flip.b_upper = flip.diag.asDiagonal() * flip.b_upper;
    return flip;
}

EquivarianceReport check_equivariance(const SNNModel& model, const SimplicialComplex& x,
                                      const Eigen::MatrixXd& y0,
                                      const std::vector<Eigen::Index>& flip_set) {
    const Operators base_ops = build_operators(x, model.order);
    const Eigen::MatrixXd base = forward_with_ops(model, base_ops, y0, nullptr);

    const OrientationFlip flip = orientation_flip(x, model.order, flip_set);
    Operators flipped;
    flipped.l_low = flip.b_lower.transpose() * flip.b_lower;
    flipped.l_up = flip.b_upper * flip.b_upper.transpose();
    const Eigen::MatrixXd flipped_out =
        forward_with_ops(model, flipped, flip.diag.asDiagonal() * y0, nullptr);

    EquivarianceReport report;
    const Eigen::MatrixXd expected = flip.diag.asDiagonal() * base;
    report.max_deviation = (flipped_out - expected).cwiseAbs().maxCoeff();
    return report;
}

std::pair<double, Gradients> loss_and_gradients(const SNNModel& model,
                                                const SimplicialComplex& x,
                                                const std::vector<Sample>& dataset) {
    if (dataset.empty()) throw std::invalid_argument("dataset must be non-empty");
    const Operators ops = build_operators(x, model.order);
    const Eigen::MatrixXd shared = model.shift_kind == ShiftKind::HodgePolynomial
                                       ? hodge_shift(model, ops)
                                       : Eigen::MatrixXd();

    Gradients grads;
    grads.weights.resize(model.layers.size());
    grads.lower_gains.assign(model.layers.size(), 0.0);
    grads.upper_gains.assign(model.layers.size(), 0.0);
    for (std::size_t l = 0; l < model.layers.size(); ++l) {
        grads.weights[l] = Eigen::MatrixXd::Zero(model.layers[l].weights.rows(),
                                                 model.layers[l].weights.cols());
    }

    double loss = 0.0;
    for (const Sample& sample : dataset) {
        std::vector<LayerCache> caches;
        const Eigen::MatrixXd out = forward_with_ops(model, ops, sample.input, &caches);
        if (out.rows() != sample.target.rows() || out.cols() != sample.target.cols()) {
            throw std::invalid_argument("target dimensions do not match network output");
        }
        const double numel = static_cast<double>(out.size()) *
                             static_cast<double>(dataset.size());
        const Eigen::MatrixXd diff = out - sample.target;
        loss += diff.squaredNorm() / numel;

        Eigen::MatrixXd dy = 2.0 * diff / numel;
        for (std::size_t l = model.layers.size(); l-- > 0;) {
            const LayerCache& cache = caches[l];
            Eigen::MatrixXd dz = dy;
            for (Eigen::Index i = 0; i < dz.size(); ++i) {
                dz(i) *= activate_grad(model.activation, cache.pre(i));
            }
            const Eigen::MatrixXd h = layer_shift(model, ops, shared, l);
            const Eigen::MatrixXd hdz = h * dz;  // H symmetric
            grads.weights[l] += cache.input.transpose() * hdz;
            if (model.shift_kind == ShiftKind::SplitGains) {
                grads.lower_gains[l] += (ops.l_low * cache.mixed).cwiseProduct(dz).sum();
                grads.upper_gains[l] += (ops.l_up * cache.mixed).cwiseProduct(dz).sum();
            }
            dy = hdz * model.layers[l].weights.transpose();
        }
    }
    return {loss, std::move(grads)};
}

TrainResult train(const SNNModel& model, const SimplicialComplex& x,
                  const std::vector<Sample>& dataset, double lr, int epochs) {
    if (lr < 0.0) throw std::invalid_argument("learning rate must be >= 0");
    if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
    TrainResult result;
    result.model = model;
    result.loss_curve.reserve(static_cast<std::size_t>(epochs));
    for (int epoch = 0; epoch < epochs; ++epoch) {
        auto [loss, grads] = loss_and_gradients(result.model, x, dataset);
        if (!std::isfinite(loss)) {
            throw std::runtime_error("training diverged (non-finite loss at epoch " +
                                     std::to_string(epoch) + "); halve the learning rate");
        }
        result.loss_curve.push_back(loss);
        for (std::size_t l = 0; l < result.model.layers.size(); ++l) {
            result.model.layers[l].weights -= lr * grads.weights[l];
            if (result.model.shift_kind == ShiftKind::SplitGains) {
                result.model.layers[l].lower_gain -= lr * grads.lower_gains[l];
                result.model.layers[l].upper_gain -= lr * grads.upper_gains[l];
            }
        }
    }
    return result;
}

}  // namespace scsp::snn
