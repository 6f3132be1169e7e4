// Command-line front end; talks to the library exclusively through the C API.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scsp.h"

namespace {

struct ComplexDeleter {
    void operator()(scsp_complex* c) const { scsp_complex_free(c); }
};
using ComplexHandle = std::unique_ptr<scsp_complex, ComplexDeleter>;

struct ModelDeleter {
    void operator()(scsp_snn_model* m) const { scsp_snn_model_free(m); }
};
using ModelHandle = std::unique_ptr<scsp_snn_model, ModelDeleter>;

[[noreturn]] void die() {
    std::cerr << "error: " << scsp_last_error() << "\n";
    std::exit(1);
}

void check(int status) {
    if (status != SCSP_OK) die();
}

ComplexHandle load_complex(const std::string& path) {
    scsp_complex* raw = nullptr;
    check(scsp_complex_load(path.c_str(), &raw));
    return ComplexHandle(raw);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string simplex_label(const scsp_complex* c, int order, int64_t index) {
    std::vector<int64_t> vs(static_cast<std::size_t>(order) + 1);
    check(scsp_complex_simplex(c, order, index, vs.data()));
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += '-';
        out += std::to_string(vs[i]);
    }
    return out;
}

int64_t count_of(const scsp_complex* c, int order) {
    int64_t n = 0;
    check(scsp_complex_count(c, order, &n));
    return n;
}

std::vector<double> read_signal(const scsp_complex* c, const std::string& path, int order) {
    std::vector<double> out(static_cast<std::size_t>(count_of(c, order)));
    check(scsp_signal_read(c, path.c_str(), order, out.data()));
    return out;
}

// All output goes through a buffer so a run is all-or-nothing on disk.
struct Output {
    std::string path;  // empty = stdout
    std::ostringstream buf;

    void flush() {
        if (path.empty()) {
            std::cout << buf.str();
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << path << "\n";
            std::exit(1);
        }
        f << buf.str();
    }
};

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ',')) {
        std::size_t used = 0;
        out.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw CLI::ValidationError("bad number '" + tok + "'");
    }
    return out;
}

std::vector<int64_t> parse_index_list(const std::string& text) {
    std::vector<int64_t> out;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ',')) {
        std::size_t used = 0;
        out.push_back(std::stoll(tok, &used));
        if (used != tok.size()) throw CLI::ValidationError("bad index '" + tok + "'");
    }
    return out;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// ---- subcommand runners -------------------------------------------------

void run_info(const std::string& complex_path, bool dump, Output& out) {
    const ComplexHandle c = load_complex(complex_path);
    if (dump) {
        char* text = nullptr;
        check(scsp_complex_dump(c.get(), &text));
        out.buf << text;
        scsp_string_free(text);
        return;
    }
    int max_order = -1;
    check(scsp_complex_max_order(c.get(), &max_order));
    out.buf << "order,count,betti\n";
    for (int k = 0; k <= max_order; ++k) {
        int64_t betti = 0;
        check(scsp_betti(c.get(), k, &betti));
        out.buf << k << ',' << count_of(c.get(), k) << ',' << betti << '\n';
    }
}

void run_classic(const std::vector<double>& coeffs, const std::vector<double>& signal,
                 Output& out) {
    const auto n = static_cast<int64_t>(coeffs.size());
    std::vector<double> re(static_cast<std::size_t>(n)), im(static_cast<std::size_t>(n));
    check(scsp_frequency_response(n, coeffs.data(), re.data(), im.data()));
    std::vector<double> filtered;
    if (!signal.empty()) {
        if (static_cast<int64_t>(signal.size()) != n) {
            std::cerr << "error: signal length must match coefficient length\n";
            std::exit(1);
        }
        filtered.resize(static_cast<std::size_t>(n));
        check(scsp_circulant_apply(n, coeffs.data(), signal.data(), filtered.data()));
    }
    out.buf << "index,coeff,response_re,response_im";
    if (!signal.empty()) out.buf << ",signal,filtered";
    out.buf << '\n';
    for (int64_t i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        out.buf << i << ',' << fmt(coeffs[u]) << ',' << fmt(re[u]) << ',' << fmt(im[u]);
        if (!signal.empty()) out.buf << ',' << fmt(signal[u]) << ',' << fmt(filtered[u]);
        out.buf << '\n';
    }
}

void run_decompose(const std::string& complex_path, const std::string& flow_path,
                   Output& out) {
    const ComplexHandle c = load_complex(complex_path);
    const std::vector<double> flow = read_signal(c.get(), flow_path, 1);
    const std::size_t m = flow.size();
    std::vector<double> grad(m), curl(m), harm(m);
    check(scsp_hodge_decompose(c.get(), flow.data(), grad.data(), curl.data(), harm.data()));
    out.buf << "edge,input,gradient,curl,harmonic\n";
    for (std::size_t i = 0; i < m; ++i) {
        out.buf << simplex_label(c.get(), 1, static_cast<int64_t>(i)) << ',' << fmt(flow[i])
                << ',' << fmt(grad[i]) << ',' << fmt(curl[i]) << ',' << fmt(harm[i]) << '\n';
    }
    out.buf << "2-norm," << fmt(norm2(flow)) << ',' << fmt(norm2(grad)) << ','
            << fmt(norm2(curl)) << ',' << fmt(norm2(harm)) << '\n';
}

void run_denoise(const std::string& complex_path, const std::string& signal_path, int order,
                 const std::string& regularizer, double alpha, double mu, int64_t steps,
                 double sigma, std::uint64_t seed, int64_t trials, Output& out) {
    const ComplexHandle c = load_complex(complex_path);
    const std::vector<double> truth = read_signal(c.get(), signal_path, order);
    const auto n = static_cast<int64_t>(truth.size());

    if (trials > 1) {
        if (order != 1) {
            std::cerr << "error: --trials > 1 compares edge regularizers (--order 1)\n";
            std::exit(1);
        }
        std::vector<double> errors(static_cast<std::size_t>(trials) * 4);
        check(scsp_flow_denoise_experiment(c.get(), truth.data(), sigma, alpha, seed, trials,
                                           errors.data()));
        const char* names[4] = {"noisy", "line-graph", "edge", "hodge"};
        out.buf << "regularizer,mean_error,stderr,trials\n";
        for (int col = 0; col < 4; ++col) {
            double mean = 0.0;
            for (int64_t t = 0; t < trials; ++t) {
                mean += errors[static_cast<std::size_t>(t) * 4 + static_cast<std::size_t>(col)];
            }
            mean /= static_cast<double>(trials);
            double var = 0.0;
            for (int64_t t = 0; t < trials; ++t) {
                const double d =
                    errors[static_cast<std::size_t>(t) * 4 + static_cast<std::size_t>(col)] -
                    mean;
                var += d * d;
            }
            var /= static_cast<double>(trials - 1);
            out.buf << names[col] << ',' << fmt(mean) << ','
                    << fmt(std::sqrt(var / static_cast<double>(trials))) << ',' << trials
                    << '\n';
        }
        return;
    }

    std::vector<double> noise(static_cast<std::size_t>(n));
    check(scsp_gaussian_vector(seed, n, sigma, noise.data()));
    std::vector<double> noisy(truth);
    for (std::size_t i = 0; i < noisy.size(); ++i) noisy[i] += noise[i];

    std::vector<double> denoised(static_cast<std::size_t>(n));
    if (steps > 0) {
        int diverging = 0;
        check(scsp_smooth_iterative(c.get(), order, mu, steps, noisy.data(), denoised.data(),
                                    &diverging));
        if (diverging != 0) {
            std::cerr << "warning: mu is in the divergent regime for this operator\n";
        }
    } else {
        check(scsp_denoise_tikhonov(c.get(), order, regularizer.c_str(), alpha, noisy.data(),
                                    denoised.data()));
    }

    out.buf << (order == 0 ? "node" : "edge") << ",noisy,denoised,truth\n";
    std::vector<double> err_noisy(noisy), err_den(denoised);
    for (std::size_t i = 0; i < noisy.size(); ++i) {
        out.buf << simplex_label(c.get(), order, static_cast<int64_t>(i)) << ','
                << fmt(noisy[i]) << ',' << fmt(denoised[i]) << ',' << fmt(truth[i]) << '\n';
        err_noisy[i] -= truth[i];
        err_den[i] -= truth[i];
    }
    out.buf << "# error-noisy " << fmt(norm2(err_noisy)) << '\n';
    out.buf << "# error-denoised " << fmt(norm2(err_den)) << '\n';
}

void run_smooth(const std::string& complex_path, const std::string& signal_path, int order,
                double mu, int64_t steps, Output& out) {
    const ComplexHandle c = load_complex(complex_path);
    const std::vector<double> input = read_signal(c.get(), signal_path, order);
    std::vector<double> smoothed(input.size());
    int diverging = 0;
    check(scsp_smooth_iterative(c.get(), order, mu, steps, input.data(), smoothed.data(),
                                &diverging));
    if (diverging != 0) {
        std::cerr << "warning: mu is in the divergent regime for this operator\n";
    }
    out.buf << "simplex,input,smoothed\n";
    for (std::size_t i = 0; i < input.size(); ++i) {
        out.buf << simplex_label(c.get(), order, static_cast<int64_t>(i)) << ','
                << fmt(input[i]) << ',' << fmt(smoothed[i]) << '\n';
    }
}

void run_interpolate(const std::string& complex_path, const std::string& labels_path,
                     int order, double alpha, bool use_triangles,
                     const std::string& truth_path, Output& out) {
    const ComplexHandle c = load_complex(complex_path);
    int64_t* indices = nullptr;
    double* values = nullptr;
    int64_t n_labels = 0;
    check(scsp_labels_read(c.get(), labels_path.c_str(), order, &indices, &values, &n_labels));
    const int64_t n = count_of(c.get(), order);
    std::vector<double> result(static_cast<std::size_t>(n));
    int status;
    if (order == 0) {
        status = scsp_interpolate_nodes(c.get(), indices, values, n_labels, result.data());
    } else {
        status = scsp_interpolate_edges(c.get(), indices, values, n_labels, alpha,
                                        use_triangles ? 1 : 0, result.data());
    }
    std::vector<char> labeled(static_cast<std::size_t>(n), 0);
    for (int64_t i = 0; i < n_labels; ++i) labeled[static_cast<std::size_t>(indices[i])] = 1;
    scsp_index_array_free(indices);
    scsp_double_array_free(values);
    check(status);

    std::vector<double> truth;
    if (!truth_path.empty()) truth = read_signal(c.get(), truth_path, order);

    out.buf << "simplex,labeled,value";
    if (!truth.empty()) out.buf << ",truth";
    out.buf << '\n';
    for (int64_t i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        out.buf << simplex_label(c.get(), order, i) << ',' << int{labeled[u]} << ','
                << fmt(result[u]);
        if (!truth.empty()) out.buf << ',' << fmt(truth[u]);
        out.buf << '\n';
    }
    if (!truth.empty()) {
        double r = 0.0;
        check(scsp_pearson(result.data(), truth.data(), n, &r));
        std::vector<double> err(result);
        for (std::size_t i = 0; i < err.size(); ++i) err[i] -= truth[i];
        out.buf << "# pearson " << fmt(r) << '\n';
        out.buf << "# error-2norm " << fmt(norm2(err)) << '\n';
    }
}

void run_dynamics(const std::string& complex_path, int order, double dt, double t_max,
                  const std::string& method, const std::string& nonlinearity,
                  const std::string& init, Output& out) {
    const ComplexHandle c = load_complex(complex_path);
    const int64_t n = count_of(c.get(), order);

    std::vector<double> w0;
    if (init.rfind("random:", 0) == 0) {
        const std::uint64_t seed = std::stoull(init.substr(7));
        w0.resize(static_cast<std::size_t>(n));
        check(scsp_gaussian_vector(seed, n, 1.0, w0.data()));
    } else {
        w0 = read_signal(c.get(), init, order);
    }

    int64_t points = 0;
    check(scsp_trajectory_points(dt, t_max, &points));
    std::vector<double> states(static_cast<std::size_t>(points * n));
    const char* g = nonlinearity == "identity" ? nullptr : nonlinearity.c_str();
    check(scsp_simulate(c.get(), order, w0.data(), dt, t_max, method.c_str(), g,
                        states.data()));

    std::vector<double> lap(static_cast<std::size_t>(n * n));
    check(scsp_hodge_laplacian(c.get(), order, lap.data()));

    out.buf << "time";
    for (int64_t i = 0; i < n; ++i) out.buf << ",f_" << simplex_label(c.get(), order, i);
    out.buf << ",norm,laplacian_residual\n";
    for (int64_t p = 0; p < points; ++p) {
        const double* row = states.data() + p * n;
        out.buf << fmt(static_cast<double>(p) * dt);
        double sq = 0.0;
        for (int64_t i = 0; i < n; ++i) {
            out.buf << ',' << fmt(row[i]);
            sq += row[i] * row[i];
        }
        double res = 0.0;
        for (int64_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int64_t j = 0; j < n; ++j) acc += lap[static_cast<std::size_t>(i * n + j)] * row[j];
            res += acc * acc;
        }
        out.buf << ',' << fmt(std::sqrt(sq)) << ',' << fmt(std::sqrt(res)) << '\n';
    }
}

ModelHandle load_model(const std::string& path) {
    scsp_snn_model* raw = nullptr;
    check(scsp_snn_model_load(path.c_str(), &raw));
    return ModelHandle(raw);
}

std::vector<double> read_features(const scsp_complex* c, const std::string& path, int order,
                                  int64_t expected_cols) {
    // Feature matrices reuse the signal format with one value column per
    // feature; the C reader is single-column, so widen here via a local parse.
    // Records: value v1 [v2 [v3]] x1 x2 ...
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open file: " << path << "\n";
        std::exit(1);
    }
    const int64_t n = count_of(c, order);
    std::vector<double> data(static_cast<std::size_t>(n * expected_cols));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        std::string keyword;
        if (!(ls >> keyword)) continue;
        if (keyword != "value") {
            std::cerr << "error: line " << lineno << ": expected 'value' record\n";
            std::exit(1);
        }
        std::vector<int64_t> vs(static_cast<std::size_t>(order) + 1);
        for (auto& v : vs) {
            if (!(ls >> v)) {
                std::cerr << "error: line " << lineno << ": missing vertex ids\n";
                std::exit(1);
            }
        }
        int64_t idx = 0;
        check(scsp_complex_index_of(c, order, vs.data(), &idx));
        for (int64_t f = 0; f < expected_cols; ++f) {
            double x = 0.0;
            if (!(ls >> x)) {
                std::cerr << "error: line " << lineno << ": expected " << expected_cols
                          << " feature values\n";
                std::exit(1);
            }
            data[static_cast<std::size_t>(idx * expected_cols + f)] = x;
        }
        double extra;
        if (ls >> extra) {
            std::cerr << "error: line " << lineno << ": expected " << expected_cols
                      << " feature values\n";
            std::exit(1);
        }
        seen[static_cast<std::size_t>(idx)] = 1;
    }
    for (int64_t i = 0; i < n; ++i) {
        if (!seen[static_cast<std::size_t>(i)]) {
            std::cerr << "error: feature file is missing simplex "
                      << simplex_label(c, order, i) << "\n";
            std::exit(1);
        }
    }
    return data;
}

void run_snn_forward(const std::string& model_path, const std::string& complex_path,
                     const std::string& features_path, Output& out) {
    const ModelHandle m = load_model(model_path);
    const ComplexHandle c = load_complex(complex_path);
    int64_t depth = 0;
    check(scsp_snn_model_depth(m.get(), &depth));
    std::vector<int64_t> dims(static_cast<std::size_t>(depth) + 1);
    check(scsp_snn_model_feature_dims(m.get(), dims.data()));
    int forder = 0;
    check(scsp_snn_model_order(m.get(), &forder));
    const std::vector<double> y0 =
        read_features(c.get(), features_path, forder, dims.front());
    const int64_t n = count_of(c.get(), forder);
    std::vector<double> result(static_cast<std::size_t>(n * dims.back()));
    check(scsp_snn_forward(m.get(), c.get(), y0.data(), dims.front(), result.data()));
    out.buf << "simplex";
    for (int64_t f = 0; f < dims.back(); ++f) out.buf << ",y" << f;
    out.buf << '\n';
    for (int64_t i = 0; i < n; ++i) {
        out.buf << simplex_label(c.get(), forder, i);
        for (int64_t f = 0; f < dims.back(); ++f) {
            out.buf << ',' << fmt(result[static_cast<std::size_t>(i * dims.back() + f)]);
        }
        out.buf << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"signal processing on graphs and simplicial complexes"};
    app.require_subcommand(1);
    std::string output_path;

    // info
    auto* info = app.add_subcommand("info", "complex summary: counts and betti numbers");
    std::string info_complex;
    bool info_dump = false;
    info->add_option("complex", info_complex, "complex file")->required();
    info->add_flag("--dump", info_dump, "emit the canonical maximal-simplex list");
    info->add_option("-o,--output", output_path, "output file (default stdout)");

    // classic
    auto* classic = app.add_subcommand("classic", "circulant filtering demonstrations");
    std::string classic_coeffs, classic_signal;
    classic->add_option("--coeffs", classic_coeffs, "comma-separated filter coefficients")
        ->required();
    classic->add_option("--signal", classic_signal, "comma-separated input signal");
    classic->add_option("-o,--output", output_path, "output file (default stdout)");

    // decompose
    auto* decompose = app.add_subcommand("decompose", "gradient/curl/harmonic split");
    std::string dec_complex, dec_flow;
    decompose->add_option("complex", dec_complex, "complex file")->required();
    decompose->add_option("flow", dec_flow, "edge-flow signal file")->required();
    decompose->add_option("-o,--output", output_path, "output file (default stdout)");

    // denoise
    auto* denoise = app.add_subcommand("denoise", "tikhonov denoising of a noisy signal");
    std::string den_complex, den_signal, den_reg = "hodge";
    int den_order = 1;
    double den_alpha = 0.5, den_mu = 0.1, den_sigma = 0.5;
    std::uint64_t den_seed = 0;
    int64_t den_steps = 0, den_trials = 1;
    denoise->add_option("complex", den_complex, "complex file")->required();
    denoise->add_option("signal", den_signal, "ground-truth signal file")->required();
    denoise->add_option("--order", den_order, "signal order (0 or 1)")
        ->check(CLI::Range(0, 1));
    denoise->add_option("--regularizer", den_reg, "hodge | edge | line-graph");
    denoise->add_option("--alpha", den_alpha, "tikhonov weight")->check(CLI::PositiveNumber);
    denoise->add_option("--mu", den_mu, "iterative smoothing step size");
    denoise->add_option("--steps", den_steps, "smoothing steps (selects iterative mode)");
    denoise->add_option("--sigma", den_sigma, "noise level");
    denoise->add_option("--seed", den_seed, "noise seed");
    denoise->add_option("--trials", den_trials, "trial count for the comparison report");
    denoise->add_option("-o,--output", output_path, "output file (default stdout)");

    // smooth
    auto* smooth = app.add_subcommand("smooth", "iterative smoothing (I - mu L)^k");
    std::string smo_complex, smo_signal;
    int smo_order = 0;
    double smo_mu = 0.1;
    int64_t smo_steps = 1;
    smooth->add_option("complex", smo_complex, "complex file")->required();
    smooth->add_option("signal", smo_signal, "signal file")->required();
    smooth->add_option("--order", smo_order, "signal order");
    smooth->add_option("--mu", smo_mu, "step size")->check(CLI::PositiveNumber);
    smooth->add_option("--steps", smo_steps, "number of steps")
        ->check(CLI::PositiveNumber);
    smooth->add_option("-o,--output", output_path, "output file (default stdout)");

    // interpolate
    auto* interp = app.add_subcommand("interpolate", "fill unlabeled simplices from labels");
    std::string int_complex, int_labels, int_truth;
    int int_order = 1;
    double int_alpha = 0.1;
    bool int_triangles = false;
    interp->add_option("complex", int_complex, "complex file")->required();
    interp->add_option("labels", int_labels, "label file")->required();
    interp->add_option("--order", int_order, "signal order (0 or 1)")->check(CLI::Range(0, 1));
    interp->add_option("--alpha", int_alpha, "ridge weight")->check(CLI::NonNegativeNumber);
    interp->add_flag("--use-triangles", int_triangles, "include curl rows in the system");
    interp->add_option("--truth", int_truth, "reference signal for the summary");
    interp->add_option("-o,--output", output_path, "output file (default stdout)");

    // dynamics
    auto* dyn = app.add_subcommand("dynamics", "hodge-flow and consensus trajectories");
    std::string dyn_complex, dyn_method = "spectral", dyn_g = "identity", dyn_init;
    int dyn_order = 1;
    double dyn_dt = 0.1, dyn_tmax = 10.0;
    dyn->add_option("complex", dyn_complex, "complex file")->required();
    dyn->add_option("--order", dyn_order, "signal order");
    dyn->add_option("--dt", dyn_dt, "time step")->check(CLI::PositiveNumber);
    dyn->add_option("--t-max", dyn_tmax, "end time")->check(CLI::NonNegativeNumber);
    dyn->add_option("--method", dyn_method, "spectral | euler");
    dyn->add_option("--nonlinearity", dyn_g, "identity | tanh");
    dyn->add_option("--init", dyn_init, "signal file or random:SEED")->required();
    dyn->add_option("-o,--output", output_path, "output file (default stdout)");

    // snn
    auto* snn = app.add_subcommand("snn", "simplicial neural network");
    snn->require_subcommand(1);
    std::string snn_model, snn_complex, snn_features, snn_targets, snn_flips;
    double snn_lr = 0.1;
    int64_t snn_epochs = 100;
    std::uint64_t snn_seed = 0;
    int64_t snn_random_flips = -1;

    auto* snn_fwd = snn->add_subcommand("forward", "run the forward pass");
    snn_fwd->add_option("model", snn_model, "model spec (json)")->required();
    snn_fwd->add_option("complex", snn_complex, "complex file")->required();
    snn_fwd->add_option("features", snn_features, "feature signal file")->required();
    snn_fwd->add_option("-o,--output", output_path, "output file (default stdout)");

    auto* snn_train = snn->add_subcommand("train", "full-batch gradient descent");
    snn_train->add_option("model", snn_model, "model spec (json)")->required();
    snn_train->add_option("complex", snn_complex, "complex file")->required();
    snn_train->add_option("features", snn_features, "feature signal file")->required();
    snn_train->add_option("targets", snn_targets, "target signal file")->required();
    snn_train->add_option("--lr", snn_lr, "learning rate")->check(CLI::NonNegativeNumber);
    snn_train->add_option("--epochs", snn_epochs, "epochs")->check(CLI::PositiveNumber);
    snn_train->add_option("-o,--output", output_path, "output file (default stdout)");

    auto* snn_eq = snn->add_subcommand("equivariance", "orientation-flip deviation report");
    snn_eq->add_option("model", snn_model, "model spec (json)")->required();
    snn_eq->add_option("complex", snn_complex, "complex file")->required();
    snn_eq->add_option("features", snn_features, "feature signal file")->required();
    snn_eq->add_option("--flips", snn_flips, "comma-separated edge indices");
    snn_eq->add_option("--random-flips", snn_random_flips, "draw this many random flips");
    snn_eq->add_option("--seed", snn_seed, "seed for --random-flips");
    snn_eq->add_option("-o,--output", output_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    Output out;
    out.path = output_path;

    try {
        if (*info) {
            run_info(info_complex, info_dump, out);
        } else if (*classic) {
            const auto coeffs = parse_number_list(classic_coeffs);
            const auto signal =
                classic_signal.empty() ? std::vector<double>{} : parse_number_list(classic_signal);
            run_classic(coeffs, signal, out);
        } else if (*decompose) {
            run_decompose(dec_complex, dec_flow, out);
        } else if (*denoise) {
            run_denoise(den_complex, den_signal, den_order, den_reg, den_alpha, den_mu,
                        den_steps, den_sigma, den_seed, den_trials, out);
        } else if (*smooth) {
            run_smooth(smo_complex, smo_signal, smo_order, smo_mu, smo_steps, out);
        } else if (*interp) {
            run_interpolate(int_complex, int_labels, int_order, int_alpha, int_triangles,
                            int_truth, out);
        } else if (*dyn) {
            run_dynamics(dyn_complex, dyn_order, dyn_dt, dyn_tmax, dyn_method, dyn_g, dyn_init,
                         out);
        } else if (*snn_fwd) {
            run_snn_forward(snn_model, snn_complex, snn_features, out);
        } else if (*snn_train) {
            const ModelHandle m = load_model(snn_model);
            const ComplexHandle c = load_complex(snn_complex);
            int64_t depth = 0;
            check(scsp_snn_model_depth(m.get(), &depth));
            std::vector<int64_t> dims(static_cast<std::size_t>(depth) + 1);
            check(scsp_snn_model_feature_dims(m.get(), dims.data()));
            int order = 0;
            check(scsp_snn_model_order(m.get(), &order));
            const std::vector<double> y0 =
                read_features(c.get(), snn_features, order, dims.front());
            const std::vector<double> target =
                read_features(c.get(), snn_targets, order, dims.back());
            std::vector<double> curve(static_cast<std::size_t>(snn_epochs));
            check(scsp_snn_train(m.get(), c.get(), y0.data(), target.data(), dims.front(),
                                 dims.back(), snn_lr, snn_epochs, curve.data()));
            out.buf << "epoch,loss\n";
            for (int64_t e = 0; e < snn_epochs; ++e) {
                out.buf << e << ',' << fmt(curve[static_cast<std::size_t>(e)]) << '\n';
            }
        } else if (*snn_eq) {
            const ModelHandle m = load_model(snn_model);
            const ComplexHandle c = load_complex(snn_complex);
            int64_t depth = 0;
            check(scsp_snn_model_depth(m.get(), &depth));
            std::vector<int64_t> dims(static_cast<std::size_t>(depth) + 1);
            check(scsp_snn_model_feature_dims(m.get(), dims.data()));
            int order = 0;
            check(scsp_snn_model_order(m.get(), &order));
            const std::vector<double> y0 =
                read_features(c.get(), snn_features, order, dims.front());
            std::vector<int64_t> flips;
            if (!snn_flips.empty()) {
                flips = parse_index_list(snn_flips);
            } else if (snn_random_flips >= 0) {
                const int64_t m1 = count_of(c.get(), order);
                std::vector<double> draw(static_cast<std::size_t>(m1));
                check(scsp_gaussian_vector(snn_seed, m1, 1.0, draw.data()));
                for (int64_t i = 0; i < m1 && static_cast<int64_t>(flips.size()) <
                                                   snn_random_flips; ++i) {
                    if (draw[static_cast<std::size_t>(i)] > 0) flips.push_back(i);
                }
            }
            double dev = 0.0;
            check(scsp_snn_equivariance(m.get(), c.get(), y0.data(), dims.front(),
                                        flips.data(), static_cast<int64_t>(flips.size()),
                                        &dev));
            out.buf << "metric,value\n";
            out.buf << "flip_count," << flips.size() << '\n';
            out.buf << "max_deviation," << fmt(dev) << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    out.flush();
    return 0;
}
