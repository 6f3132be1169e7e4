#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kCli = SCSP_CLI_PATH;
const std::string kFixtures = SCSP_FIXTURE_DIR;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run(const std::string& args) {
    const std::string out_path = "/tmp/scsp_cli_test_out.txt";
    const std::string err_path = "/tmp/scsp_cli_test_err.txt";
    const std::string cmd = kCli + " " + args + " > " + out_path + " 2> " + err_path;
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(raw);
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

}  // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("definitely-not-a-subcommand").exit_code == 2);
    CHECK(run("info").exit_code == 2);  // missing required argument
    CHECK(run("denoise " + fixture("fig2a.sc") + " " + fixture("fig2a_flow.sig") +
              " --alpha -1")
              .exit_code == 2);
    CHECK(run("--help").exit_code == 0);
}

TEST_CASE("module errors exit with code 1 and a diagnostic") {
    const RunResult r = run("info /nonexistent/missing.sc");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("info reports counts and betti numbers") {
    const RunResult r = run("info " + fixture("fig2a.sc"));
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("order,count,betti\n") == 0);
    CHECK(r.out.find("0,7,1\n") != std::string::npos);
    CHECK(r.out.find("1,10,2\n") != std::string::npos);
    CHECK(r.out.find("2,2,0\n") != std::string::npos);
}

TEST_CASE("dump round-trips through a temp file") {
    const RunResult first = run("info --dump " + fixture("fig2a.sc"));
    REQUIRE(first.exit_code == 0);
    const std::string tmp = "/tmp/scsp_cli_roundtrip.sc";
    std::ofstream(tmp) << first.out;
    const RunResult second = run("info --dump " + tmp);
    REQUIRE(second.exit_code == 0);
    CHECK(first.out == second.out);
}

TEST_CASE("decompose emits per-edge components and a summary row") {
    const RunResult r =
        run("decompose " + fixture("fig2a.sc") + " " + fixture("fig2a_flow.sig"));
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("edge,input,gradient,curl,harmonic\n") == 0);
    CHECK(r.out.find("1-2,") != std::string::npos);

    // Orthogonality: the summary norms satisfy
    // input^2 = gradient^2 + curl^2 + harmonic^2.
    const auto pos = r.out.find("\n2-norm,");
    REQUIRE(pos != std::string::npos);
    std::istringstream row(r.out.substr(pos + std::string("\n2-norm,").size()));
    std::string cell;
    double norms[4] = {0, 0, 0, 0};
    for (double& n : norms) {
        REQUIRE(std::getline(row, cell, ','));
        n = std::stod(cell);
    }
    CHECK(std::abs(norms[0] * norms[0] -
                   (norms[1] * norms[1] + norms[2] * norms[2] + norms[3] * norms[3])) <=
          1e-8 * norms[0] * norms[0]);
}

TEST_CASE("interpolate reproduces the worked fixture summary") {
    const RunResult r = run("interpolate --order 1 --alpha 0.1 " + fixture("fig2a.sc") + " " +
                            fixture("fig2a_labels.sig") + " --truth " +
                            fixture("fig2a_flow.sig"));
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.find("# pearson ") != std::string::npos);
    const double pearson =
        std::stod(r.out.substr(r.out.find("# pearson ") + std::string("# pearson ").size()));
    CHECK(pearson >= 0.99);
    const double err = std::stod(
        r.out.substr(r.out.find("# error-2norm ") + std::string("# error-2norm ").size()));
    CHECK(err <= 0.1);
}

TEST_CASE("identical invocations are byte-identical") {
    const std::string cmd = "denoise --order 1 --regularizer hodge --alpha 0.5 --sigma 0.5 "
                            "--seed 7 " +
                            fixture("fig2a.sc") + " " + fixture("harmonic_flow.sig");
    const RunResult a = run(cmd);
    const RunResult b = run(cmd);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());

    const std::string dyn = "dynamics --order 1 --dt 0.5 --t-max 5 --init random:9 " +
                            fixture("fig2a.sc");
    const RunResult c = run(dyn);
    const RunResult d = run(dyn);
    REQUIRE(c.exit_code == 0);
    CHECK(c.out == d.out);
}

TEST_CASE("denoise multi-trial report orders the regularizers") {
    const RunResult r = run("denoise --order 1 --alpha 0.5 --sigma 0.5 --seed 42 "
                            "--trials 100 " +
                            fixture("fig2a.sc") + " " + fixture("harmonic_flow.sig"));
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.find("regularizer,mean_error,stderr,trials\n") == 0);
    auto mean_of = [&](const std::string& name) {
        const auto pos = r.out.find("\n" + name + ",");
        REQUIRE(pos != std::string::npos);
        return std::stod(r.out.substr(pos + name.size() + 2));
    };
    const double hodge = mean_of("hodge");
    const double edge = mean_of("edge");
    const double noisy = mean_of("noisy");
    const double lg = mean_of("line-graph");
    CHECK(hodge < edge);
    CHECK(edge < noisy);
    CHECK(noisy < lg);
}

TEST_CASE("dynamics trajectory starts at the init signal and decays") {
    const RunResult r = run("dynamics --order 1 --dt 1 --t-max 50 --method spectral --init " +
                            fixture("fig2a_flow.sig") + " " + fixture("fig2a.sc"));
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("time,f_1-2,") == 0);
    // Final row's laplacian residual is near zero (harmonic limit).
    const auto last_line_start = r.out.rfind('\n', r.out.size() - 2);
    const std::string last = r.out.substr(last_line_start + 1);
    const auto last_comma = last.rfind(',');
    CHECK(std::stod(last.substr(last_comma + 1)) <= 1e-6);
}

TEST_CASE("denoise with steps selects iterative smoothing") {
    const RunResult r = run("denoise --order 1 --mu 0.1 --steps 5 --sigma 0.2 --seed 3 " +
                            fixture("fig2a.sc") + " " + fixture("harmonic_flow.sig"));
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("edge,noisy,denoised,truth\n") == 0);
    CHECK(r.out.find("# error-denoised ") != std::string::npos);
}

TEST_CASE("smooth and classic produce csv") {
    const RunResult s = run("smooth --order 0 --mu 0.2 --steps 3 " + fixture("fig2a.sc") +
                            " " + fixture("fig2a_nodes.sig"));
    REQUIRE(s.exit_code == 0);
    CHECK(s.out.find("simplex,input,smoothed\n") == 0);

    const RunResult c = run("classic --coeffs 0,1,0,0 --signal 1,2,3,4");
    REQUIRE(c.exit_code == 0);
    CHECK(c.out.find("index,coeff,response_re,response_im,signal,filtered\n") == 0);
    CHECK(c.out.find("0,0,1,0,1,4\n") != std::string::npos);
}

TEST_CASE("snn subcommands run on the shipped model") {
    const RunResult f = run("snn forward " + fixture("snn_model.json") + " " +
                            fixture("fig2a.sc") + " " + fixture("fig2a_flow.sig"));
    REQUIRE(f.exit_code == 0);
    CHECK(f.out.find("simplex,y0\n") == 0);

    const RunResult e = run("snn equivariance " + fixture("snn_model.json") + " " +
                            fixture("fig2a.sc") + " " + fixture("fig2a_flow.sig") +
                            " --flips 0,3,7");
    REQUIRE(e.exit_code == 0);
    REQUIRE(e.out.find("max_deviation,") != std::string::npos);
    const double dev = std::stod(
        e.out.substr(e.out.find("max_deviation,") + std::string("max_deviation,").size()));
    CHECK(dev <= 1e-10);

    const RunResult t = run("snn train " + fixture("snn_model.json") + " " +
                            fixture("fig2a.sc") + " " + fixture("fig2a_flow.sig") + " " +
                            fixture("harmonic_flow.sig") + " --lr 0.05 --epochs 10");
    REQUIRE(t.exit_code == 0);
    CHECK(t.out.find("epoch,loss\n") == 0);
    CHECK(t.out.find("\n9,") != std::string::npos);
}

TEST_CASE("output file flag writes the same bytes as stdout") {
    const std::string tmp = "/tmp/scsp_cli_output.csv";
    const RunResult direct = run("info " + fixture("fig2a.sc"));
    const RunResult filed = run("info " + fixture("fig2a.sc") + " -o " + tmp);
    REQUIRE(direct.exit_code == 0);
    REQUIRE(filed.exit_code == 0);
    CHECK(filed.out.empty());
    CHECK(slurp(tmp) == direct.out);
}
