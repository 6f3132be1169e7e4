#include "scsp.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "scsp/classic.hpp"
#include "scsp/complex.hpp"
#include "scsp/dynamics.hpp"
#include "scsp/filters.hpp"
#include "scsp/interpolate.hpp"
#include "scsp/io.hpp"
#include "scsp/rng.hpp"
#include "scsp/snn.hpp"
#include "scsp/spectral.hpp"

struct scsp_complex {
    scsp::SimplicialComplex impl;
};

struct scsp_snn_model {
    scsp::snn::SNNModel impl;
};

namespace {

thread_local std::string g_last_error;

int fail(const char* what) {
    g_last_error = what;
    return SCSP_ERROR;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        return SCSP_OK;
    } catch (const std::exception& e) {
        return fail(e.what());
    } catch (...) {
        return fail("unknown error");
    }
}

const scsp::SimplicialComplex& deref(const scsp_complex* c) {
    if (c == nullptr) throw std::invalid_argument("null complex handle");
    return c->impl;
}

const scsp::snn::SNNModel& deref(const scsp_snn_model* m) {
    if (m == nullptr) throw std::invalid_argument("null model handle");
    return m->impl;
}

void require(const void* p, const char* name) {
    if (p == nullptr) throw std::invalid_argument(std::string("null pointer: ") + name);
}

void copy_matrix(const Eigen::MatrixXd& m, double* out) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out[i * m.cols() + j] = m(i, j);
        }
    }
}

Eigen::VectorXd to_vector(const double* data, Eigen::Index n) {
    return Eigen::Map<const Eigen::VectorXd>(data, n);
}

Eigen::MatrixXd to_matrix(const double* data, Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = data[i * cols + j];
        }
    }
    return m;
}

scsp::interpolate::LabeledSignal to_labels(const scsp::SimplicialComplex& x, int order,
                                           const int64_t* idx, const double* vals,
                                           int64_t n) {
    std::vector<Eigen::Index> indices(static_cast<std::size_t>(n));
    Eigen::VectorXd values(n);
    for (int64_t i = 0; i < n; ++i) {
        indices[static_cast<std::size_t>(i)] = idx[i];
        values(i) = vals[i];
    }
    return scsp::interpolate::make_labeled_signal(std::move(indices), std::move(values),
                                                  x.count(order));
}

}  // namespace

const char* scsp_version(void) { return "1.0.0"; }

const char* scsp_last_error(void) { return g_last_error.c_str(); }

int scsp_complex_load(const char* path, scsp_complex** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new scsp_complex{scsp::io::read_complex_file(path)};
    });
}

int scsp_complex_parse(const char* text, scsp_complex** out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        std::istringstream in{std::string(text)};
        *out = new scsp_complex{scsp::io::parse_complex(in)};
    });
}

int scsp_complex_from_simplices(const int64_t* vertices, const int64_t* offsets,
                                int64_t count, scsp_complex** out) {
    return guarded([&] {
        require(out, "out");
        if (count > 0) {
            require(vertices, "vertices");
            require(offsets, "offsets");
        }
        std::vector<scsp::Simplex> maximal;
        for (int64_t i = 0; i < count; ++i) {
            scsp::Simplex s;
            for (int64_t v = offsets[i]; v < offsets[i + 1]; ++v) {
                s.vertices.push_back(vertices[v]);
            }
            maximal.push_back(std::move(s));
        }
        *out = new scsp_complex{scsp::SimplicialComplex::from_maximal_simplices(maximal)};
    });
}

void scsp_complex_free(scsp_complex* c) { delete c; }

int scsp_complex_max_order(const scsp_complex* c, int* out) {
    return guarded([&] {
        require(out, "out");
        *out = deref(c).max_order();
    });
}

int scsp_complex_count(const scsp_complex* c, int order, int64_t* out) {
    return guarded([&] {
        require(out, "out");
        *out = deref(c).count(order);
    });
}

int scsp_complex_simplex(const scsp_complex* c, int order, int64_t index,
                         int64_t* vertices_out) {
    return guarded([&] {
        require(vertices_out, "vertices_out");
        const auto& x = deref(c);
        if (index < 0 || index >= x.count(order)) {
            throw std::invalid_argument("simplex index out of range");
        }
        const auto& s = x.simplices(order)[static_cast<std::size_t>(index)];
        for (std::size_t i = 0; i < s.vertices.size(); ++i) {
            vertices_out[i] = s.vertices[i];
        }
    });
}

int scsp_complex_index_of(const scsp_complex* c, int order, const int64_t* vertices,
                          int64_t* out) {
    return guarded([&] {
        require(vertices, "vertices");
        require(out, "out");
        scsp::Simplex s;
        for (int i = 0; i <= order; ++i) s.vertices.push_back(vertices[i]);
        *out = deref(c).index_of(s);
    });
}

int scsp_complex_dump(const scsp_complex* c, char** out) {
    return guarded([&] {
        require(out, "out");
        const std::string text = scsp::io::dump_complex(deref(c));
        *out = new char[text.size() + 1];
        std::memcpy(*out, text.c_str(), text.size() + 1);
    });
}

void scsp_string_free(char* s) { delete[] s; }

int scsp_boundary_shape(const scsp_complex* c, int k, int64_t* rows, int64_t* cols) {
    return guarded([&] {
        require(rows, "rows");
        require(cols, "cols");
        const auto b = deref(c).boundary_matrix(k);
        *rows = b.rows();
        *cols = b.cols();
    });
}

int scsp_boundary_matrix(const scsp_complex* c, int k, double* out) {
    return guarded([&] {
        require(out, "out");
        copy_matrix(deref(c).boundary_matrix(k).dense(), out);
    });
}

int scsp_hodge_laplacian(const scsp_complex* c, int k, double* out) {
    return guarded([&] {
        require(out, "out");
        copy_matrix(deref(c).hodge_laplacian(k), out);
    });
}

int scsp_line_graph_laplacian(const scsp_complex* c, double* out) {
    return guarded([&] {
        require(out, "out");
        copy_matrix(deref(c).line_graph_laplacian(), out);
    });
}

int scsp_betti(const scsp_complex* c, int k, int64_t* out) {
    return guarded([&] {
        require(out, "out");
        *out = scsp::spectral::betti(deref(c), k);
    });
}

int scsp_harmonic_basis_count(const scsp_complex* c, int k, int64_t* out) {
    return scsp_betti(c, k, out);
}

int scsp_harmonic_basis(const scsp_complex* c, int k, double* out) {
    return guarded([&] {
        require(out, "out");
        copy_matrix(scsp::spectral::harmonic_basis(deref(c), k), out);
    });
}

int scsp_signal_read(const scsp_complex* c, const char* path, int order, double* out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        const Eigen::VectorXd v = scsp::io::read_signal_file(deref(c), path, order);
        for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v(i);
    });
}

int scsp_labels_read(const scsp_complex* c, const char* path, int order, int64_t** indices,
                     double** values, int64_t* count) {
    return guarded([&] {
        require(path, "path");
        require(indices, "indices");
        require(values, "values");
        require(count, "count");
        const auto labels = scsp::io::read_labels_file(deref(c), path, order);
        const auto n = labels.indices.size();
        *indices = new int64_t[n];
        *values = new double[n];
        for (std::size_t i = 0; i < n; ++i) {
            (*indices)[i] = labels.indices[i];
            (*values)[i] = labels.values(static_cast<Eigen::Index>(i));
        }
        *count = static_cast<int64_t>(n);
    });
}

void scsp_index_array_free(int64_t* a) { delete[] a; }
void scsp_double_array_free(double* a) { delete[] a; }

int scsp_hodge_decompose(const scsp_complex* c, const double* flow, double* gradient,
                         double* curl, double* harmonic) {
    return guarded([&] {
        require(flow, "flow");
        require(gradient, "gradient");
        require(curl, "curl");
        require(harmonic, "harmonic");
        const auto& x = deref(c);
        const auto d = scsp::spectral::hodge_decompose(x, to_vector(flow, x.count(1)));
        for (Eigen::Index i = 0; i < d.gradient.size(); ++i) {
            gradient[i] = d.gradient(i);
            curl[i] = d.curl(i);
            harmonic[i] = d.harmonic(i);
        }
    });
}

int scsp_dft_matrix(int64_t n, double* real_out, double* imag_out) {
    return guarded([&] {
        require(real_out, "real_out");
        require(imag_out, "imag_out");
        const Eigen::MatrixXcd f = scsp::classic::dft_matrix(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                real_out[i * n + j] = f(i, j).real();
                imag_out[i * n + j] = f(i, j).imag();
            }
        }
    });
}

int scsp_circulant_matrix(int64_t n, const double* coeffs, double* out) {
    return guarded([&] {
        require(coeffs, "coeffs");
        require(out, "out");
        copy_matrix(scsp::classic::circulant_filter(to_vector(coeffs, n)), out);
    });
}

int scsp_frequency_response(int64_t n, const double* coeffs, double* real_out,
                            double* imag_out) {
    return guarded([&] {
        require(coeffs, "coeffs");
        require(real_out, "real_out");
        require(imag_out, "imag_out");
        const Eigen::VectorXcd r = scsp::classic::frequency_response(to_vector(coeffs, n));
        for (Eigen::Index i = 0; i < n; ++i) {
            real_out[i] = r(i).real();
            imag_out[i] = r(i).imag();
        }
    });
}

int scsp_circulant_apply(int64_t n, const double* coeffs, const double* signal, double* out) {
    return guarded([&] {
        require(coeffs, "coeffs");
        require(signal, "signal");
        require(out, "out");
        const Eigen::VectorXd r = scsp::classic::apply_filter_shift_form(
            to_vector(coeffs, n), to_vector(signal, n));
        for (Eigen::Index i = 0; i < n; ++i) out[i] = r(i);
    });
}

namespace {

Eigen::MatrixXd order_regularizer(const scsp::SimplicialComplex& x, int order,
                                  const char* regularizer) {
    if (order == 0) return x.hodge_laplacian(0);
    if (order == 1) {
        const char* name = regularizer == nullptr ? "hodge" : regularizer;
        return scsp::filters::regularizer_matrix(x, scsp::filters::parse_regularizer(name));
    }
    return x.hodge_laplacian(order);
}

}  // namespace

int scsp_denoise_tikhonov(const scsp_complex* c, int order, const char* regularizer,
                          double alpha, const double* y, double* out) {
    return guarded([&] {
        require(y, "y");
        require(out, "out");
        const auto& x = deref(c);
        const Eigen::MatrixXd q = order_regularizer(x, order, regularizer);
        const Eigen::VectorXd r =
            scsp::filters::denoise_tikhonov(q, to_vector(y, q.rows()), alpha);
        for (Eigen::Index i = 0; i < r.size(); ++i) out[i] = r(i);
    });
}

int scsp_smooth_iterative(const scsp_complex* c, int order, double mu, int64_t steps,
                          const double* y, double* out, int* diverging_flag) {
    return guarded([&] {
        require(y, "y");
        require(out, "out");
        const auto& x = deref(c);
        const Eigen::MatrixXd l = x.hodge_laplacian(order);
        std::string warning;
        const Eigen::VectorXd r = scsp::filters::smooth_iterative(
            l, to_vector(y, l.rows()), mu, static_cast<int>(steps), &warning);
        if (diverging_flag != nullptr) *diverging_flag = warning.empty() ? 0 : 1;
        for (Eigen::Index i = 0; i < r.size(); ++i) out[i] = r(i);
    });
}

int scsp_flow_denoise_experiment(const scsp_complex* c, const double* truth, double sigma,
                                 double alpha, uint64_t seed, int64_t trials, double* errors) {
    return guarded([&] {
        require(truth, "truth");
        require(errors, "errors");
        const auto& x = deref(c);
        using scsp::filters::EdgeRegularizer;
        const auto report = scsp::filters::flow_denoise_experiment(
            x, to_vector(truth, x.count(1)), sigma, seed,
            {EdgeRegularizer::LineGraph, EdgeRegularizer::Edge, EdgeRegularizer::Hodge},
            alpha, static_cast<int>(trials));
        copy_matrix(report.errors, errors);
    });
}

int scsp_gaussian_vector(uint64_t seed, int64_t n, double sigma, double* out) {
    return guarded([&] {
        require(out, "out");
        if (n < 0) throw std::invalid_argument("n must be >= 0");
        scsp::SeededRng rng(seed);
        for (int64_t i = 0; i < n; ++i) out[i] = sigma * rng.gaussian();
    });
}

int scsp_interpolate_nodes(const scsp_complex* c, const int64_t* labeled_indices,
                           const double* values, int64_t n_labels, double* out) {
    return guarded([&] {
        require(labeled_indices, "labeled_indices");
        require(values, "values");
        require(out, "out");
        const auto& x = deref(c);
        const Eigen::VectorXd r = scsp::interpolate::interpolate_node_labels(
            x, to_labels(x, 0, labeled_indices, values, n_labels));
        for (Eigen::Index i = 0; i < r.size(); ++i) out[i] = r(i);
    });
}

int scsp_interpolate_edges(const scsp_complex* c, const int64_t* labeled_indices,
                           const double* values, int64_t n_labels, double alpha,
                           int use_triangles, double* out) {
    return guarded([&] {
        require(labeled_indices, "labeled_indices");
        require(values, "values");
        require(out, "out");
        const auto& x = deref(c);
        const Eigen::VectorXd r = scsp::interpolate::interpolate_edge_flow(
            x, to_labels(x, 1, labeled_indices, values, n_labels), alpha,
            use_triangles != 0);
        for (Eigen::Index i = 0; i < r.size(); ++i) out[i] = r(i);
    });
}

int scsp_pearson(const double* a, const double* b, int64_t n, double* out) {
    return guarded([&] {
        require(a, "a");
        require(b, "b");
        require(out, "out");
        *out = scsp::interpolate::pearson(to_vector(a, n), to_vector(b, n));
    });
}

int scsp_trajectory_points(double dt, double t_max, int64_t* out) {
    return guarded([&] {
        require(out, "out");
        if (dt <= 0.0) throw std::invalid_argument("dt must be > 0");
        if (t_max < 0.0) throw std::invalid_argument("t_max must be >= 0");
        *out = static_cast<int64_t>(std::floor(t_max / dt + 1e-9)) + 1;
    });
}

int scsp_simulate(const scsp_complex* c, int order, const double* w0, double dt, double t_max,
                  const char* method, const char* nonlinearity, double* states) {
    return guarded([&] {
        require(w0, "w0");
        require(method, "method");
        require(states, "states");
        const auto& x = deref(c);
        const Eigen::VectorXd init = to_vector(w0, x.count(order));
        scsp::dynamics::Trajectory traj;
        if (nonlinearity == nullptr || std::string(nonlinearity) == "identity") {
            const auto m = scsp::dynamics::parse_method(method);
            if (nonlinearity != nullptr && m == scsp::dynamics::Method::Euler) {
                traj = scsp::dynamics::simulate_nonlinear(
                    x, order, init, scsp::dynamics::parse_nonlinearity(nonlinearity), dt,
                    t_max);
            } else {
                traj = scsp::dynamics::simulate_hodge_flow(x, order, init, dt, t_max, m);
            }
        } else {
            if (scsp::dynamics::parse_method(method) != scsp::dynamics::Method::Euler) {
                throw std::invalid_argument(
                    "nonlinear dynamics are integrated with the euler method");
            }
            traj = scsp::dynamics::simulate_nonlinear(
                x, order, init, scsp::dynamics::parse_nonlinearity(nonlinearity), dt, t_max);
        }
        const Eigen::Index n = x.count(order);
        for (std::size_t t = 0; t < traj.states.size(); ++t) {
            for (Eigen::Index i = 0; i < n; ++i) {
                states[static_cast<Eigen::Index>(t) * n + i] = traj.states[t](i);
            }
        }
    });
}

int scsp_detect_holes(const scsp_complex* c, int order, int64_t trials, uint64_t seed,
                      double dt, double t_max, int64_t* out) {
    return guarded([&] {
        require(out, "out");
        *out = scsp::dynamics::detect_holes(deref(c), order, static_cast<int>(trials), seed,
                                            dt, t_max);
    });
}

int scsp_snn_model_load(const char* path, scsp_snn_model** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new scsp_snn_model{scsp::snn::model_from_json_file(path)};
    });
}

int scsp_snn_model_parse(const char* json_text, scsp_snn_model** out) {
    return guarded([&] {
        require(json_text, "json_text");
        require(out, "out");
        *out = new scsp_snn_model{scsp::snn::model_from_json(json_text)};
    });
}

void scsp_snn_model_free(scsp_snn_model* m) { delete m; }

int scsp_snn_model_depth(const scsp_snn_model* m, int64_t* out) {
    return guarded([&] {
        require(out, "out");
        *out = deref(m).depth();
    });
}

int scsp_snn_model_order(const scsp_snn_model* m, int* out) {
    return guarded([&] {
        require(out, "out");
        *out = deref(m).order;
    });
}

int scsp_snn_model_feature_dims(const scsp_snn_model* m, int64_t* dims_out) {
    return guarded([&] {
        require(dims_out, "dims_out");
        const auto dims = deref(m).feature_dims();
        for (std::size_t i = 0; i < dims.size(); ++i) dims_out[i] = dims[i];
    });
}

int scsp_snn_forward(const scsp_snn_model* m, const scsp_complex* c, const double* y0,
                     int64_t f0, double* out) {
    return guarded([&] {
        require(y0, "y0");
        require(out, "out");
        const auto& x = deref(c);
        const auto& model = deref(m);
        const Eigen::MatrixXd result =
            scsp::snn::forward(model, x, to_matrix(y0, x.count(model.order), f0));
        copy_matrix(result, out);
    });
}

int scsp_snn_train(scsp_snn_model* m, const scsp_complex* c, const double* y0,
                   const double* target, int64_t f0, int64_t f_target, double lr,
                   int64_t epochs, double* loss_curve) {
    return guarded([&] {
        require(m, "model");
        require(y0, "y0");
        require(target, "target");
        require(loss_curve, "loss_curve");
        const auto& x = deref(c);
        const Eigen::Index n = x.count(m->impl.order);
        const scsp::snn::Sample sample{to_matrix(y0, n, f0), to_matrix(target, n, f_target)};
        auto result =
            scsp::snn::train(m->impl, x, {sample}, lr, static_cast<int>(epochs));
        for (std::size_t i = 0; i < result.loss_curve.size(); ++i) {
            loss_curve[i] = result.loss_curve[i];
        }
        m->impl = std::move(result.model);
    });
}

int scsp_snn_equivariance(const scsp_snn_model* m, const scsp_complex* c, const double* y0,
                          int64_t f0, const int64_t* flip_indices, int64_t n_flips,
                          double* max_deviation) {
    return guarded([&] {
        require(y0, "y0");
        require(max_deviation, "max_deviation");
        if (n_flips > 0) require(flip_indices, "flip_indices");
        const auto& x = deref(c);
        const auto& model = deref(m);
        std::vector<Eigen::Index> flips;
        for (int64_t i = 0; i < n_flips; ++i) flips.push_back(flip_indices[i]);
        const auto report = scsp::snn::check_equivariance(
            model, x, to_matrix(y0, x.count(model.order), f0), flips);
        *max_deviation = report.max_deviation;
    });
}
