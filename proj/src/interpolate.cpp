#include "scsp/interpolate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace scsp::interpolate {

namespace {

std::vector<Eigen::Index> unlabeled_indices(Eigen::Index total,
                                            const std::vector<Eigen::Index>& labeled) {
    std::vector<bool> is_labeled(static_cast<std::size_t>(total), false);
    for (Eigen::Index i : labeled) is_labeled[static_cast<std::size_t>(i)] = true;
    std::vector<Eigen::Index> out;
    for (Eigen::Index i = 0; i < total; ++i) {
        if (!is_labeled[static_cast<std::size_t>(i)]) out.push_back(i);
    }
    return out;
}

// Union-find over the vertex set of the 1-skeleton.
std::vector<int> connected_components(const SimplicialComplex& x) {
    const Eigen::Index n = x.count(0);
    std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](Eigen::Index v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };
    for (const auto& e : x.simplices(1)) {
        const Eigen::Index a = find(x.index_of(Simplex{{e.vertices[0]}}));
        const Eigen::Index b = find(x.index_of(Simplex{{e.vertices[1]}}));
        if (a != b) parent[static_cast<std::size_t>(a)] = b;
    }
    std::vector<int> comp(static_cast<std::size_t>(n));
    std::vector<Eigen::Index> roots;
    for (Eigen::Index v = 0; v < n; ++v) {
        const Eigen::Index r = find(v);
        auto it = std::find(roots.begin(), roots.end(), r);
        if (it == roots.end()) {
            roots.push_back(r);
            it = std::prev(roots.end());
        }
        comp[static_cast<std::size_t>(v)] = static_cast<int>(it - roots.begin());
    }
    return comp;
}

}  // namespace

LabeledSignal make_labeled_signal(std::vector<Eigen::Index> indices, Eigen::VectorXd values,
                                  Eigen::Index total) {
    if (static_cast<Eigen::Index>(indices.size()) != values.size()) {
        throw std::invalid_argument("label index and value counts differ");
    }
    std::vector<std::size_t> order(indices.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&indices](std::size_t a, std::size_t b) { return indices[a] < indices[b]; });
    LabeledSignal out;
    out.total = total;
    out.values.resize(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Eigen::Index idx = indices[order[i]];
        if (idx < 0 || idx >= total) {
            throw std::invalid_argument("label index " + std::to_string(idx) +
                                        " out of range [0," + std::to_string(total) + ")");
        }
        if (!out.indices.empty() && out.indices.back() == idx) {
            throw std::invalid_argument("duplicate label index " + std::to_string(idx));
        }
        out.indices.push_back(idx);
        out.values(static_cast<Eigen::Index>(i)) = values(static_cast<Eigen::Index>(order[i]));
    }
    return out;
}

Eigen::MatrixXd expansion_operator(Eigen::Index total,
                                   const std::vector<Eigen::Index>& labeled_indices) {
    for (Eigen::Index i : labeled_indices) {
        if (i < 0 || i >= total) {
            throw std::invalid_argument("labeled index " + std::to_string(i) + " out of range");
        }
    }
    std::vector<Eigen::Index> sorted = labeled_indices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("duplicate labeled index");
    }
    const auto unlabeled = unlabeled_indices(total, sorted);
    Eigen::MatrixXd phi =
        Eigen::MatrixXd::Zero(total, static_cast<Eigen::Index>(unlabeled.size()));
    for (std::size_t c = 0; c < unlabeled.size(); ++c) {
        phi(unlabeled[c], static_cast<Eigen::Index>(c)) = 1.0;
    }
    return phi;
}

Eigen::VectorXd interpolate_node_labels(const SimplicialComplex& x,
                                        const LabeledSignal& labels) {
    const Eigen::Index n = x.count(0);
    if (labels.total != n) {
        throw std::invalid_argument("label dimension does not match node count");
    }
    const auto comp = connected_components(x);
    int ncomp = 0;
    for (int c : comp) ncomp = std::max(ncomp, c + 1);
    std::vector<bool> component_labeled(static_cast<std::size_t>(ncomp), false);
    for (Eigen::Index i : labels.indices) {
        component_labeled[static_cast<std::size_t>(comp[static_cast<std::size_t>(i)])] = true;
    }
    for (int c = 0; c < ncomp; ++c) {
        if (!component_labeled[static_cast<std::size_t>(c)]) {
            // Name the component by one of its vertices.
            for (Eigen::Index v = 0; v < n; ++v) {
                if (comp[static_cast<std::size_t>(v)] == c) {
                    throw std::invalid_argument(
                        "connected component containing vertex " +
                        x.simplices(0)[static_cast<std::size_t>(v)].str() +
                        " has no label");
                }
            }
        }
    }

    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < labels.indices.size(); ++i) {
        out(labels.indices[i]) = labels.values(static_cast<Eigen::Index>(i));
    }
    const auto unlabeled = unlabeled_indices(n, labels.indices);
    if (unlabeled.empty()) return out;

    const Eigen::MatrixXd l = x.hodge_laplacian(0);
    const auto ui = static_cast<Eigen::Index>(unlabeled.size());
    Eigen::MatrixXd luu(ui, ui);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(ui);
    for (Eigen::Index a = 0; a < ui; ++a) {
        for (Eigen::Index b = 0; b < ui; ++b) {
            luu(a, b) = l(unlabeled[static_cast<std::size_t>(a)],
                          unlabeled[static_cast<std::size_t>(b)]);
        }
        for (std::size_t li = 0; li < labels.indices.size(); ++li) {
            rhs(a) -= l(unlabeled[static_cast<std::size_t>(a)], labels.indices[li]) *
                      labels.values(static_cast<Eigen::Index>(li));
        }
    }
    const Eigen::VectorXd sol = Eigen::LDLT<Eigen::MatrixXd>(luu).solve(rhs);
    for (Eigen::Index a = 0; a < ui; ++a) {
        out(unlabeled[static_cast<std::size_t>(a)]) = sol(a);
    }
    return out;
}

Eigen::VectorXd interpolate_edge_flow(const SimplicialComplex& x, const LabeledSignal& labels,
                                      double alpha, bool use_triangles) {
    const Eigen::Index m = x.count(1);
    if (labels.total != m) {
        throw std::invalid_argument("label dimension does not match edge count");
    }
    if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");

    Eigen::VectorXd f0 = Eigen::VectorXd::Zero(m);
    for (std::size_t i = 0; i < labels.indices.size(); ++i) {
        f0(labels.indices[i]) = labels.values(static_cast<Eigen::Index>(i));
    }
    const Eigen::MatrixXd phi = expansion_operator(m, labels.indices);
    const Eigen::Index nu = phi.cols();
    if (nu == 0) return f0;

    const Eigen::MatrixXd b1 = x.boundary_matrix(1).dense();
    const Eigen::MatrixXd b2t =
        use_triangles ? x.boundary_matrix(2).dense().transpose() : Eigen::MatrixXd(0, m);

    // Stacked rows in the printed order: divergence, ridge, then curl.
    const Eigen::Index rows = b1.rows() + nu + b2t.rows();
    Eigen::MatrixXd stacked = Eigen::MatrixXd::Zero(rows, nu);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);
    stacked.topRows(b1.rows()) = b1 * phi;
    rhs.head(b1.rows()) = -b1 * f0;
    stacked.middleRows(b1.rows(), nu) =
        alpha * Eigen::MatrixXd::Identity(nu, nu);
    if (use_triangles && b2t.rows() > 0) {
        stacked.bottomRows(b2t.rows()) = b2t * phi;
        rhs.tail(b2t.rows()) = -b2t * f0;
    }

    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(stacked);
    if (alpha == 0.0 && qr.rank() < nu) {
        throw std::invalid_argument(
            "system is rank-deficient with alpha = 0 (an unmeasured cycle admits "
            "arbitrary flow); use alpha > 0");
    }
    const Eigen::VectorXd u = qr.solve(rhs);
    Eigen::VectorXd out = f0 + phi * u;
    // Labeled entries stay bit-equal to the inputs.
    for (std::size_t i = 0; i < labels.indices.size(); ++i) {
        out(labels.indices[i]) = labels.values(static_cast<Eigen::Index>(i));
    }
    return out;
}

double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector lengths differ");
    if (a.size() < 2) throw std::invalid_argument("pearson requires length >= 2");
    const Eigen::VectorXd da = a.array() - a.mean();
    const Eigen::VectorXd db = b.array() - b.mean();
    const double va = da.squaredNorm();
    const double vb = db.squaredNorm();
    if (va <= 0.0 || vb <= 0.0) throw std::invalid_argument("pearson requires nonzero variance");
    return da.dot(db) / std::sqrt(va * vb);
}

}  // namespace scsp::interpolate
