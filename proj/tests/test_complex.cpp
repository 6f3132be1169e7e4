#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "scsp/complex.hpp"
#include "test_util.hpp"

using scsp::Simplex;
using scsp::SimplicialComplex;

namespace {

// The running example's incidence matrices, as displayed: rows/columns in
// canonical (lexicographic) order.
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

}  // namespace

TEST_CASE("closure of the running example") {
    const auto x = testutil::fig2a();
    CHECK(x.count(0) == 7);
    CHECK(x.count(1) == 10);
    CHECK(x.count(2) == 2);
    CHECK(x.max_order() == 2);

    const std::vector<Simplex> expected_edges = {
        {1, 2}, {1, 3}, {1, 4}, {2, 3}, {3, 4}, {3, 6}, {4, 5}, {5, 6}, {5, 7}, {6, 7}};
    CHECK(x.simplices(1) == expected_edges);
}

TEST_CASE("degenerate closures") {
    const auto single = SimplicialComplex::from_maximal_simplices({Simplex{1}});
    CHECK(single.count(0) == 1);
    CHECK(single.count(1) == 0);
    CHECK(single.max_order() == 0);

    const auto tri = SimplicialComplex::from_maximal_simplices({Simplex{1, 2, 3}});
    CHECK(tri.count(0) == 3);
    CHECK(tri.count(1) == 3);
    CHECK(tri.count(2) == 1);

    const auto empty = SimplicialComplex::from_maximal_simplices({});
    CHECK(empty.max_order() == -1);
    CHECK(empty.count(0) == 0);
}

TEST_CASE("invalid simplices are rejected with the offender named") {
    CHECK_THROWS_WITH_AS(SimplicialComplex::from_maximal_simplices({Simplex{2, 1}}),
                         doctest::Contains("(2,1)"), std::invalid_argument);
    CHECK_THROWS_AS(SimplicialComplex::from_maximal_simplices({Simplex{1, 1}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(SimplicialComplex::from_maximal_simplices({Simplex{-1, 2}}),
                    std::invalid_argument);
}

TEST_CASE("boundary operators match the displayed matrices") {
    const auto x = testutil::fig2a();
    const auto b1 = x.boundary_matrix(1);
    REQUIRE(b1.rows() == 7);
    REQUIRE(b1.cols() == 10);
    const Eigen::MatrixXd d1 = b1.dense();
    for (int i = 0; i < 7; ++i) {
        for (int j = 0; j < 10; ++j) {
            CHECK(d1(i, j) == kB1[i][j]);
        }
    }

    const auto b2 = x.boundary_matrix(2);
    REQUIRE(b2.rows() == 10);
    REQUIRE(b2.cols() == 2);
    const Eigen::MatrixXd d2 = b2.dense();
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 2; ++j) {
            CHECK(d2(i, j) == kB2[i][j]);
        }
    }
}

TEST_CASE("boundary of a boundary vanishes on the single triangle") {
    const auto tri = SimplicialComplex::from_maximal_simplices({Simplex{1, 2, 3}});
    const auto product = tri.boundary_matrix(1).multiply_int(tri.boundary_matrix(2));
    REQUIRE(product.size() == 3);
    for (long long v : product) CHECK(v == 0);
}

TEST_CASE("order-zero boundary is rejected") {
    const auto x = testutil::fig2a();
    CHECK_THROWS_AS(x.boundary_matrix(0), std::invalid_argument);
}

TEST_CASE("hodge laplacians") {
    const auto x = testutil::fig2a();

    SUBCASE("L_0 equals degree minus adjacency") {
        // Independent route: build D - A from scratch over the edge list.
        Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(7, 7);
        for (const auto& e : x.simplices(1)) {
            const auto i = x.index_of(Simplex{e.vertices[0]});
            const auto j = x.index_of(Simplex{e.vertices[1]});
            adj(i, j) = adj(j, i) = 1.0;
        }
        Eigen::MatrixXd lap = -adj;
        lap.diagonal() = adj.rowwise().sum();
        CHECK((x.hodge_laplacian(0) - lap).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("L_1 equals the product of the displayed matrices") {
        Eigen::MatrixXd b1(7, 10), b2(10, 2);
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 10; ++j) b1(i, j) = kB1[i][j];
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 2; ++j) b2(i, j) = kB2[i][j];
        const Eigen::MatrixXd expected = b1.transpose() * b1 + b2 * b2.transpose();
        CHECK((x.hodge_laplacian(1) - expected).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("no triangles reduces L_1 to the edge laplacian") {
        const auto path = SimplicialComplex::from_maximal_simplices({Simplex{1, 2}, Simplex{2, 3}});
        const Eigen::MatrixXd b1 = path.boundary_matrix(1).dense();
        CHECK((path.hodge_laplacian(1) - b1.transpose() * b1).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("invalid order") {
        CHECK_THROWS_AS(x.hodge_laplacian(3), std::invalid_argument);
        CHECK_THROWS_AS(x.hodge_laplacian(-1), std::invalid_argument);
    }
}

TEST_CASE("line graph laplacian") {
    SUBCASE("two adjacent edges") {
        const auto path = SimplicialComplex::from_maximal_simplices({Simplex{1, 2}, Simplex{2, 3}});
        Eigen::MatrixXd expected(2, 2);
        expected << 1, -1, -1, 1;
        CHECK((path.line_graph_laplacian() - expected).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("edge degree counts shared endpoints") {
        const auto x = testutil::fig2a();
        const Eigen::MatrixXd l = x.line_graph_laplacian();
        const auto idx = x.index_of(Simplex{3, 4});
        CHECK(l(idx, idx) == 5.0);  // adjacent to (1,3),(2,3),(3,6),(1,4),(4,5)
    }

    SUBCASE("single edge") {
        const auto one = SimplicialComplex::from_maximal_simplices({Simplex{0, 1}});
        CHECK(one.line_graph_laplacian().cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("no edges") {
        const auto point = SimplicialComplex::from_maximal_simplices({Simplex{0}});
        CHECK_THROWS_AS(point.line_graph_laplacian(), std::invalid_argument);
    }
}

TEST_CASE("faces and cofaces") {
    const auto x = testutil::fig2a();
    const auto f = x.faces(Simplex{1, 3, 4});
    CHECK(f == std::vector<Simplex>{{1, 3}, {1, 4}, {3, 4}});

    const auto cf = x.cofaces(Simplex{5, 6});
    REQUIRE(cf.size() == 1);
    CHECK(cf[0] == Simplex{5, 6, 7});

    CHECK(x.faces(Simplex{1}).empty());
    CHECK_THROWS_AS(x.faces(Simplex{1, 7}), std::invalid_argument);
    CHECK_THROWS_AS(x.cofaces(Simplex{1, 7}), std::invalid_argument);
}

TEST_CASE("random complexes: closure, boundary-of-boundary, column structure") {
    std::mt19937_64 rng(20240811);
    for (int it = 0; it < 200; ++it) {
        const auto x = testutil::random_complex(rng);

        // Closure.
        for (int k = 1; k <= x.max_order(); ++k) {
            for (const auto& s : x.simplices(k)) {
                for (const auto& f : x.faces(s)) CHECK(x.contains(f));
            }
        }

        // d o d = 0 in exact integer arithmetic, and column structure of B_k.
        for (int k = 1; k <= x.max_order(); ++k) {
            const auto bk = x.boundary_matrix(k);
            for (Eigen::Index col = 0; col < bk.cols(); ++col) {
                int nonzeros = 0;
                for (const auto& e : bk.entries()) {
                    if (e.col == col) ++nonzeros;
                }
                CHECK(nonzeros == k + 1);
            }
            if (k == 1) {
                const Eigen::MatrixXd d = bk.dense();
                for (Eigen::Index col = 0; col < d.cols(); ++col) {
                    CHECK(d.col(col).sum() == 0.0);
                }
            }
            const auto bk1 = x.boundary_matrix(k + 1);
            if (bk1.cols() == 0) continue;
            for (long long v : bk.multiply_int(bk1)) CHECK(v == 0);
        }
    }
}
