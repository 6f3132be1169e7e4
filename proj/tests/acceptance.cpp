// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion also enforces its runtime budget.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "scsp/classic.hpp"
#include "scsp/complex.hpp"
#include "scsp/dynamics.hpp"
#include "scsp/filters.hpp"
#include "scsp/interpolate.hpp"
#include "scsp/snn.hpp"
#include "scsp/spectral.hpp"
#include "test_util.hpp"

namespace {

int g_failures = 0;

struct Criterion {
    int number;
    std::string name;
    double budget_seconds;
};

void run_criterion(const Criterion& c, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > c.budget_seconds) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over budget");
    }
    std::printf("[%s] %2d %-58s (%6.2f s)%s%s\n", ok ? "PASS" : "FAIL", c.number,
                c.name.c_str(), elapsed, detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

// clang-format off
const int kB1[7][10] = {
    {-1, -1, -1,  0,  0,  0,  0,  0,  0,  0},
    { 1,  0,  0, -1,  0,  0,  0,  0,  0,  0},
    { 0,  1,  0,  1, -1, -1,  0,  0,  0,  0},
    { 0,  0,  1,  0,  1,  0, -1,  0,  0,  0},
    { 0,  0,  0,  0,  0,  0,  1, -1, -1,  0},
    { 0,  0,  0,  0,  0,  1,  0,  1,  0, -1},
    { 0,  0,  0,  0,  0,  0,  0,  0,  1,  1},
};
const int kB2[10][2] = {
    {0, 0}, {1, 0}, {-1, 0}, {0, 0}, {1, 0},
    {0, 0}, {0, 0}, {0, 1}, {0, -1}, {0, 1},
};
// clang-format on

Eigen::VectorXd harmonic_truth(const scsp::SimplicialComplex& x) {
    // First harmonic basis vector, scaled to the magnitude of the worked
    // example's flow (max magnitude 7) so the denoising comparison operates
    // at a realistic signal-to-noise ratio.
    Eigen::VectorXd h = scsp::spectral::harmonic_basis(x, 1).col(0);
    return 7.0 * h / h.cwiseAbs().maxCoeff();
}

bool criterion_boundary_fixtures(std::string& detail) {
    const auto x = testutil::fig2a();
    if (x.count(0) != 7 || x.count(1) != 10 || x.count(2) != 2) {
        detail = "wrong simplex counts";
        return false;
    }
    const Eigen::MatrixXd b1 = x.boundary_matrix(1).dense();
    const Eigen::MatrixXd b2 = x.boundary_matrix(2).dense();
    for (int i = 0; i < 7; ++i) {
        for (int j = 0; j < 10; ++j) {
            if (b1(i, j) != kB1[i][j]) {
                detail = "B_1 mismatch at (" + std::to_string(i) + "," + std::to_string(j) + ")";
                return false;
            }
        }
    }
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 2; ++j) {
            if (b2(i, j) != kB2[i][j]) {
                detail = "B_2 mismatch at (" + std::to_string(i) + "," + std::to_string(j) + ")";
                return false;
            }
        }
    }
    return true;
}

bool criterion_boundary_of_boundary(std::string& detail) {
    std::mt19937_64 rng(0xB0UL);
    for (int it = 0; it < 500; ++it) {
        const auto x = testutil::random_complex(rng, 8, 6);
        for (int k = 1; k < x.max_order(); ++k) {
            const auto bk = x.boundary_matrix(k);
            const auto bk1 = x.boundary_matrix(k + 1);
            if (bk1.cols() == 0) continue;
            for (long long v : bk.multiply_int(bk1)) {
                if (v != 0) {
                    detail = "nonzero product at iteration " + std::to_string(it);
                    return false;
                }
            }
        }
    }
    return true;
}

bool criterion_hodge_decomposition(std::string& detail) {
    const auto x = testutil::fig2a();
    const int rank_b1 = testutil::boundary_rank(x.boundary_matrix(1));
    const int rank_b2 = testutil::boundary_rank(x.boundary_matrix(2));
    const Eigen::Index b1 = scsp::spectral::betti(x, 1);
    if (b1 != 2 || rank_b1 + rank_b2 + b1 != 10) {
        detail = "dimension identity failed";
        return false;
    }
    std::mt19937_64 rng(0xDEC0);
    for (int it = 0; it < 100; ++it) {
        const Eigen::VectorXd f = testutil::random_vector(rng, 10);
        const auto d = scsp::spectral::hodge_decompose(x, f);
        const bool ortho = std::abs(d.gradient.dot(d.curl)) <= 1e-8 &&
                           std::abs(d.gradient.dot(d.harmonic)) <= 1e-8 &&
                           std::abs(d.curl.dot(d.harmonic)) <= 1e-8;
        const bool recon =
            (d.gradient + d.curl + d.harmonic - f).cwiseAbs().maxCoeff() <= 1e-8;
        if (!ortho || !recon) {
            detail = "flow " + std::to_string(it) + (ortho ? " reconstruction" : " orthogonality");
            return false;
        }
    }
    return true;
}

bool criterion_lifts(std::string& detail) {
    const auto x = testutil::fig2a();
    const auto grad = scsp::spectral::lift_gradient_eigenvectors(x);
    const auto curl = scsp::spectral::lift_curl_eigenvectors(x);
    if (grad.size() != 6 || curl.size() != 2) {
        detail = "lift counts " + std::to_string(grad.size()) + "/" + std::to_string(curl.size());
        return false;
    }
    const Eigen::MatrixXd l1 = x.hodge_laplacian(1);
    for (const auto& set : {grad, curl}) {
        for (const auto& lift : set) {
            const double res = (l1 * lift.vector - lift.eigenvalue * lift.vector).norm();
            if (res > 1e-8 * lift.vector.norm()) {
                detail = "eigen residual " + std::to_string(res);
                return false;
            }
        }
    }
    return true;
}

bool criterion_denoising_order(std::string& detail) {
    using scsp::filters::EdgeRegularizer;
    const auto x = testutil::fig2a();
    const Eigen::VectorXd truth = harmonic_truth(x);
    const auto report = scsp::filters::flow_denoise_experiment(
        x, truth, 0.5, 42,
        {EdgeRegularizer::LineGraph, EdgeRegularizer::Edge, EdgeRegularizer::Hodge}, 0.5,
        100);
    const Eigen::VectorXd mean = report.mean();
    const Eigen::VectorXd se = report.standard_error();
    const double noisy = mean(0), lg = mean(1), edge = mean(2), hodge = mean(3);
    std::ostringstream summary;
    summary << "hodge " << hodge << " < edge " << edge << " < noisy " << noisy << " < lg "
            << lg;
    detail = summary.str();
    const bool ordered =
        hodge < edge && edge < noisy && noisy < lg &&
        edge - hodge > 3.0 * std::hypot(se(3), se(2)) &&
        noisy - edge > 3.0 * std::hypot(se(2), se(0)) &&
        lg - noisy > 3.0 * std::hypot(se(0), se(1));
    if (!ordered) return false;
    return true;
}

bool criterion_interpolation(std::string& detail) {
    const auto x = testutil::fig2a();
    Eigen::VectorXd truth(10);
    truth << -2, -2, 4, -2, 3, -7, 7, 3, 4, -4;
    std::vector<Eigen::Index> indices;
    Eigen::VectorXd values(5);
    int i = 0;
    for (const auto& name : {scsp::Simplex{1, 3}, {1, 4}, {3, 6}, {4, 5}, {5, 6}}) {
        indices.push_back(x.index_of(name));
        values(i++) = truth(x.index_of(name));
    }
    const auto labels = scsp::interpolate::make_labeled_signal(indices, values, 10);
    for (double alpha : {0.01, 0.05, 0.1, 0.5}) {
        const Eigen::VectorXd f = scsp::interpolate::interpolate_edge_flow(x, labels, alpha, false);
        const double r = scsp::interpolate::pearson(truth, f);
        const double err = (truth - f).norm();
        if (r >= 0.99 && err <= 0.1) {
            std::ostringstream summary;
            summary << "alpha " << alpha << ": pearson " << r << ", error " << err;
            detail = summary.str();
            return true;
        }
    }
    detail = "no alpha in the grid reached pearson >= 0.99 and error <= 0.1";
    return false;
}

bool criterion_harmonic_dynamics(std::string& detail) {
    const auto x = testutil::fig2a();
    std::mt19937_64 rng(0xD1);
    for (int it = 0; it < 20; ++it) {
        const Eigen::VectorXd w0 = testutil::random_vector(rng, 10);
        const auto traj =
            scsp::dynamics::simulate_hodge_flow(x, 1, w0, 1.0, 50.0,
                                                scsp::dynamics::Method::ExactSpectral);
        const auto d = scsp::spectral::hodge_decompose(x, w0);
        if ((traj.final_state() - d.harmonic).norm() > 1e-6) {
            detail = "trajectory " + std::to_string(it) + " missed the harmonic projection";
            return false;
        }
    }
    for (int run = 0; run < 20; ++run) {
        if (scsp::dynamics::detect_holes(x, 1, 5, 1000 + static_cast<std::uint64_t>(run), 0.5,
                                         50.0) != 2) {
            detail = "hole detection run " + std::to_string(run);
            return false;
        }
    }
    return true;
}

bool criterion_nonlinear(std::string& detail) {
    const auto x = testutil::fig2a();
    std::mt19937_64 rng(0x28);
    const Eigen::MatrixXd b1 = x.boundary_matrix(1).dense();
    const Eigen::MatrixXd b2 = x.boundary_matrix(2).dense();

    // Identity nonlinearity reduces to the linear Euler trajectory bit for bit.
    {
        const Eigen::VectorXd w0 = testutil::random_vector(rng, 10);
        const auto linear = scsp::dynamics::simulate_hodge_flow(
            x, 1, w0, 0.01, 2.0, scsp::dynamics::Method::Euler);
        const auto nl = scsp::dynamics::simulate_nonlinear(
            x, 1, w0, scsp::dynamics::Nonlinearity::identity(), 0.01, 2.0);
        for (std::size_t i = 0; i < linear.states.size(); ++i) {
            if ((linear.states[i] - nl.states[i]).cwiseAbs().maxCoeff() != 0.0) {
                detail = "identity trajectory differs at step " + std::to_string(i);
                return false;
            }
        }
    }

    auto energy = [&](const Eigen::VectorXd& w) {
        double e = 0.0;
        const Eigen::VectorXd lower = b1 * w;
        const Eigen::VectorXd upper = b2.transpose() * w;
        for (Eigen::Index i = 0; i < lower.size(); ++i) e += std::log(std::cosh(lower(i)));
        for (Eigen::Index i = 0; i < upper.size(); ++i) e += std::log(std::cosh(upper(i)));
        return e;
    };
    const double dt = 0.01;
    for (int it = 0; it < 20; ++it) {
        Eigen::VectorXd w0 = testutil::random_vector(rng, 10);
        w0 *= 0.1 / w0.cwiseAbs().maxCoeff();
        const auto traj = scsp::dynamics::simulate_nonlinear(
            x, 1, w0, scsp::dynamics::Nonlinearity::tanh(), dt, 10.0);  // 1000 steps
        if (traj.states.size() != 1001) {
            detail = "expected 1000 euler steps";
            return false;
        }
        for (std::size_t i = 1; i < traj.states.size(); ++i) {
            if (energy(traj.states[i]) > energy(traj.states[i - 1]) + 1e-6 * dt) {
                detail = "energy increased at step " + std::to_string(i);
                return false;
            }
        }
    }
    return true;
}

bool criterion_snn(std::string& detail) {
    using namespace scsp::snn;
    const auto x = testutil::fig2a();
    std::mt19937_64 rng(0x55);

    for (int it = 0; it < 100; ++it) {
        const Activation act = it % 2 == 0 ? Activation::Tanh : Activation::Identity;
        const ShiftKind kind =
            it % 3 == 0 ? ShiftKind::SplitGains : ShiftKind::HodgePolynomial;
        const auto model = make_model(1, act, kind, {},
                                      {2, 1 + static_cast<Eigen::Index>(it % 4), 1},
                                      9000 + static_cast<std::uint64_t>(it));
        const Eigen::MatrixXd y0 = testutil::random_matrix(rng, 10, 2);
        std::vector<Eigen::Index> flips;
        for (Eigen::Index e = 0; e < 10; ++e) {
            if (rng() % 2 == 0) flips.push_back(e);
        }
        const auto report = check_equivariance(model, x, y0, flips);
        if (report.max_deviation > 1e-10) {
            detail = "odd-activation deviation " + std::to_string(report.max_deviation);
            return false;
        }
    }

    // Constructed relu counterexample.
    SNNModel relu = make_model(1, Activation::Relu, ShiftKind::HodgePolynomial, {1.0},
                               {1, 1}, 5);
    relu.layers[0].weights(0, 0) = 1.0;
    Eigen::MatrixXd spike = Eigen::MatrixXd::Zero(10, 1);
    spike(3, 0) = 1.0;
    if (check_equivariance(relu, x, spike, {3}).max_deviation <= 1e-3) {
        detail = "relu counterexample did not break equivariance";
        return false;
    }

    // Gradient check over all parameters of 10 random models.
    for (int it = 0; it < 10; ++it) {
        const Activation act =
            it % 3 == 0 ? Activation::Identity : (it % 3 == 1 ? Activation::Tanh
                                                              : Activation::Relu);
        const ShiftKind kind =
            it % 2 == 0 ? ShiftKind::HodgePolynomial : ShiftKind::SplitGains;
        SNNModel model = make_model(1, act, kind, {}, {2, 2, 1},
                                    7000 + static_cast<std::uint64_t>(it));
        const std::vector<Sample> data = {{testutil::random_matrix(rng, 10, 2),
                                           testutil::random_matrix(rng, 10, 1)}};
        const auto [loss, grads] = loss_and_gradients(model, x, data);
        (void)loss;
        const double h = 1e-5;
        auto loss_at = [&]() { return loss_and_gradients(model, x, data).first; };
        for (std::size_t l = 0; l < model.layers.size(); ++l) {
            auto& w = model.layers[l].weights;
            for (Eigen::Index i = 0; i < w.size(); ++i) {
                const double keep = w(i);
                w(i) = keep + h;
                const double up = loss_at();
                w(i) = keep - h;
                const double down = loss_at();
                w(i) = keep;
                const double fd = (up - down) / (2 * h);
                if (std::abs(fd - grads.weights[l](i)) > 1e-5 * std::max(1.0, std::abs(fd))) {
                    detail = "weight gradient mismatch in model " + std::to_string(it);
                    return false;
                }
            }
            if (kind == ShiftKind::SplitGains) {
                for (int which = 0; which < 2; ++which) {
                    double& g = which == 0 ? model.layers[l].lower_gain
                                           : model.layers[l].upper_gain;
                    const double keep = g;
                    g = keep + h;
                    const double up = loss_at();
                    g = keep - h;
                    const double down = loss_at();
                    g = keep;
                    const double fd = (up - down) / (2 * h);
                    const double an =
                        which == 0 ? grads.lower_gains[l] : grads.upper_gains[l];
                    if (std::abs(fd - an) > 1e-5 * std::max(1.0, std::abs(fd))) {
                        detail = "gain gradient mismatch in model " + std::to_string(it);
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

bool criterion_classic(std::string& detail) {
    std::mt19937_64 rng(0xC1A);
    for (Eigen::Index n = 2; n <= 16; ++n) {
        const Eigen::VectorXd c = testutil::random_vector(rng, n);
        const Eigen::VectorXcd mine = scsp::classic::frequency_response(c);
        const Eigen::EigenSolver<Eigen::MatrixXd> es(scsp::classic::circulant_filter(c));
        const Eigen::VectorXcd ref = es.eigenvalues();
        // Greedy nearest matching of the two multisets.
        std::vector<bool> used(static_cast<std::size_t>(n), false);
        for (Eigen::Index i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_j = 0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                const double d = std::abs(mine(i) - ref(j));
                if (d < best) {
                    best = d;
                    best_j = static_cast<std::size_t>(j);
                }
            }
            used[best_j] = true;
            if (best > 1e-8) {
                detail = "frequency response mismatch at n = " + std::to_string(n);
                return false;
            }
        }
    }
    for (int it = 0; it < 100; ++it) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 15);
        const Eigen::VectorXd c = testutil::random_vector(rng, n);
        const Eigen::VectorXd s = testutil::random_vector(rng, n);
        const Eigen::VectorXd m = scsp::classic::apply_filter_matrix(c, s);
        const double worst = std::max(
            {(scsp::classic::apply_filter_convolution(c, s) - m).cwiseAbs().maxCoeff(),
             (scsp::classic::apply_filter_shift_form(c, s) - m).cwiseAbs().maxCoeff(),
             (scsp::classic::apply_filter_state_space(c, s) - m).cwiseAbs().maxCoeff()});
        if (worst > 1e-10) {
            detail = "path disagreement " + std::to_string(worst);
            return false;
        }
    }
    return true;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool criterion_cli_reproducibility(std::string& detail) {
    const std::string cli = SCSP_CLI_PATH;
    const std::string fx = SCSP_FIXTURE_DIR;
    const std::vector<std::string> invocations = {
        "info " + fx + "/fig2a.sc",
        "info --dump " + fx + "/fig2a.sc",
        "classic --coeffs 0.5,0.25,0,0.25 --signal 1,-2,3,-4",
        "decompose " + fx + "/fig2a.sc " + fx + "/fig2a_flow.sig",
        "denoise --order 1 --regularizer hodge --alpha 0.5 --sigma 0.5 --seed 7 " + fx +
            "/fig2a.sc " + fx + "/harmonic_flow.sig",
        "denoise --order 1 --alpha 0.5 --sigma 0.5 --seed 42 --trials 100 " + fx +
            "/fig2a.sc " + fx + "/harmonic_flow.sig",
        "smooth --order 0 --mu 0.2 --steps 3 " + fx + "/fig2a.sc " + fx + "/fig2a_nodes.sig",
        "interpolate --order 1 --alpha 0.1 " + fx + "/fig2a.sc " + fx +
            "/fig2a_labels.sig --truth " + fx + "/fig2a_flow.sig",
        "interpolate --order 1 --alpha 0.1 --use-triangles " + fx + "/fig2a.sc " + fx +
            "/fig2a_labels.sig",
        "dynamics --order 1 --dt 0.5 --t-max 20 --method spectral --init random:3 " + fx +
            "/fig2a.sc",
        "dynamics --order 1 --dt 0.01 --t-max 1 --method euler --nonlinearity tanh --init " +
            fx + "/fig2a_flow.sig " + fx + "/fig2a.sc",
        "snn forward " + fx + "/snn_model.json " + fx + "/fig2a.sc " + fx +
            "/fig2a_flow.sig",
        "snn train " + fx + "/snn_model.json " + fx + "/fig2a.sc " + fx +
            "/fig2a_flow.sig " + fx + "/harmonic_flow.sig --lr 0.05 --epochs 25",
        "snn equivariance " + fx + "/snn_model.json " + fx + "/fig2a.sc " + fx +
            "/fig2a_flow.sig --flips 0,3,7",
    };
    for (std::size_t i = 0; i < invocations.size(); ++i) {
        const std::string a = "/tmp/scsp_accept_a.txt";
        const std::string b = "/tmp/scsp_accept_b.txt";
        const std::string run_a = cli + " " + invocations[i] + " > " + a + " 2>/dev/null";
        const std::string run_b = cli + " " + invocations[i] + " > " + b + " 2>/dev/null";
        if (std::system(run_a.c_str()) != 0 || std::system(run_b.c_str()) != 0) {
            detail = "invocation failed: " + invocations[i];
            return false;
        }
        const std::string out_a = slurp(a);
        if (out_a.empty() || out_a != slurp(b)) {
            detail = "outputs differ for: " + invocations[i];
            return false;
        }
    }
    detail = std::to_string(invocations.size()) + " invocations byte-identical";
    return true;
}

}  // namespace

int main() {
    run_criterion({1, "boundary fixtures reproduce the printed B_1 and B_2", 0.1},
                  criterion_boundary_fixtures);
    run_criterion({2, "boundary-of-boundary vanishes on 500 random complexes", 5.0},
                  criterion_boundary_of_boundary);
    run_criterion({3, "hodge decomposition: orthogonal, exact, right dimensions", 2.0},
                  criterion_hodge_decomposition);
    run_criterion({4, "gradient/curl eigenvector lifts (6 + 2, residual 1e-8)", 1.0},
                  criterion_lifts);
    run_criterion({5, "denoising error ordering hodge < edge < noisy < line-graph", 10.0},
                  criterion_denoising_order);
    run_criterion({6, "edge-flow interpolation fixture (pearson 0.99, error 0.1)", 1.0},
                  criterion_interpolation);
    run_criterion({7, "hodge flow converges to the harmonic projection; 2 holes", 2.0},
                  criterion_harmonic_dynamics);
    run_criterion({8, "nonlinear flow: identity reduction bit-exact, tanh energy", 5.0},
                  criterion_nonlinear);
    run_criterion({9, "snn equivariance, relu counterexample, gradient checks", 10.0},
                  criterion_snn);
    run_criterion({10, "classic dsp: frequency response and path agreement", 5.0},
                  criterion_classic);
    run_criterion({11, "cli reproducibility: fixture suite byte-identical twice", 60.0},
                  criterion_cli_reproducibility);

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
