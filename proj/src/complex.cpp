#include "scsp/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace scsp {

bool Simplex::is_valid() const {
    if (vertices.empty()) return false;
    if (vertices.front() < 0) return false;
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        if (vertices[i] <= vertices[i - 1]) return false;
    }
    return true;
}

std::string Simplex::str() const {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (i) out << ',';
        out << vertices[i];
    }
    out << ')';
    return out.str();
}

Eigen::MatrixXd SignedIncidenceMatrix::dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows_, cols_);
    for (const auto& e : entries_) m(e.row, e.col) = e.sign;
    return m;
}

std::vector<std::int64_t> SignedIncidenceMatrix::multiply_int(
    const SignedIncidenceMatrix& other) const {
    if (cols_ != other.rows_) {
        throw std::invalid_argument("incidence product: inner dimensions differ");
    }
    std::vector<std::int64_t> out(static_cast<std::size_t>(rows_ * other.cols_), 0);
    for (const auto& a : entries_) {
        for (const auto& b : other.entries_) {
            if (a.col == b.row) {
                out[static_cast<std::size_t>(a.row * other.cols_ + b.col)] +=
                    static_cast<std::int64_t>(a.sign) * b.sign;
            }
        }
    }
    return out;
}

SimplicialComplex SimplicialComplex::from_maximal_simplices(
    const std::vector<Simplex>& maximal) {
    for (const auto& s : maximal) {
        if (!s.is_valid()) {
            throw std::invalid_argument(
                "simplex " + s.str() +
                " is not a strictly increasing list of non-negative vertex ids");
        }
    }

    // Closure: every non-empty subset of every listed simplex.
    std::set<Simplex> closure;
    for (const auto& s : maximal) {
        const std::size_t nv = s.vertices.size();
        for (std::uint32_t mask = 1; mask < (1u << nv); ++mask) {
            Simplex sub;
            for (std::size_t i = 0; i < nv; ++i) {
                if (mask & (1u << i)) sub.vertices.push_back(s.vertices[i]);
            }
            closure.insert(std::move(sub));
        }
    }

    SimplicialComplex x;
    for (const auto& s : closure) {
        const auto k = static_cast<std::size_t>(s.order());
        if (x.by_order_.size() <= k) {
            x.by_order_.resize(k + 1);
            x.index_.resize(k + 1);
        }
        x.by_order_[k].push_back(s);
    }
    // std::set iterates in lexicographic (vertices) order already, but the
    // per-order lists interleave orders, so sort each list once.
    for (std::size_t k = 0; k < x.by_order_.size(); ++k) {
        std::sort(x.by_order_[k].begin(), x.by_order_[k].end());
        for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(x.by_order_[k].size()); ++i) {
            x.index_[k].emplace(x.by_order_[k][static_cast<std::size_t>(i)], i);
        }
    }
    return x;
}

Eigen::Index SimplicialComplex::count(int order) const {
    if (order < 0 || order > max_order()) return 0;
    return static_cast<Eigen::Index>(by_order_[static_cast<std::size_t>(order)].size());
}

const std::vector<Simplex>& SimplicialComplex::simplices(int order) const {
    static const std::vector<Simplex> empty;
    if (order < 0 || order > max_order()) return empty;
    return by_order_[static_cast<std::size_t>(order)];
}

bool SimplicialComplex::contains(const Simplex& s) const {
    const int k = s.order();
    if (k < 0 || k > max_order()) return false;
    const auto& idx = index_[static_cast<std::size_t>(k)];
    return idx.find(s) != idx.end();
}

Eigen::Index SimplicialComplex::index_of(const Simplex& s) const {
    const int k = s.order();
    if (k >= 0 && k <= max_order()) {
        const auto& idx = index_[static_cast<std::size_t>(k)];
        if (auto it = idx.find(s); it != idx.end()) return it->second;
    }
    throw std::invalid_argument("simplex " + s.str() + " is not in the complex");
}

std::vector<Simplex> SimplicialComplex::faces(const Simplex& s) const {
    index_of(s);  // membership check
    std::vector<Simplex> out;
    if (s.order() == 0) return out;
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
        Simplex f;
        for (std::size_t j = 0; j < s.vertices.size(); ++j) {
            if (j != i) f.vertices.push_back(s.vertices[j]);
        }
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Simplex> SimplicialComplex::cofaces(const Simplex& s) const {
    index_of(s);
    std::vector<Simplex> out;
    const int k = s.order();
    for (const auto& c : simplices(k + 1)) {
        if (std::includes(c.vertices.begin(), c.vertices.end(),
                          s.vertices.begin(), s.vertices.end())) {
            out.push_back(c);
        }
    }
    return out;
}

SignedIncidenceMatrix SimplicialComplex::boundary_matrix(int k) const {
    if (k < 1) {
        throw std::invalid_argument("boundary operator is only defined for order k >= 1");
    }
    const Eigen::Index rows = count(k - 1);
    const Eigen::Index cols = count(k);
    std::vector<IncidenceEntry> entries;
    if (rows > 0 && cols > 0) {
        const auto& cells = simplices(k);
        entries.reserve(static_cast<std::size_t>(cols) * (static_cast<std::size_t>(k) + 1));
        for (Eigen::Index j = 0; j < cols; ++j) {
            const auto& s = cells[static_cast<std::size_t>(j)];
            for (std::size_t i = 0; i < s.vertices.size(); ++i) {
                Simplex face;
                for (std::size_t v = 0; v < s.vertices.size(); ++v) {
                    if (v != i) face.vertices.push_back(s.vertices[v]);
                }
                entries.push_back({index_of(face), j, (i % 2 == 0) ? 1 : -1});
            }
        }
    }
    return SignedIncidenceMatrix(rows, cols, std::move(entries));
}

Eigen::MatrixXd SimplicialComplex::hodge_laplacian(int k) const {
    if (k < 0 || k > max_order()) {
        throw std::invalid_argument("complex has no simplices of order " + std::to_string(k));
    }
    const Eigen::Index n = count(k);
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    if (k >= 1) {
        const Eigen::MatrixXd bk = boundary_matrix(k).dense();
        l += bk.transpose() * bk;
    }
    if (k + 1 <= max_order() && count(k + 1) > 0) {
        const Eigen::MatrixXd bk1 = boundary_matrix(k + 1).dense();
        l += bk1 * bk1.transpose();
    }
    return l;
}

Eigen::MatrixXd SimplicialComplex::line_graph_laplacian() const {
    const Eigen::Index m = count(1);
    if (m == 0) throw std::invalid_argument("line graph requires at least one edge");
    const auto& edges = simplices(1);
    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i + 1; j < m; ++j) {
            const auto& a = edges[static_cast<std::size_t>(i)].vertices;
            const auto& b = edges[static_cast<std::size_t>(j)].vertices;
            const bool share = a[0] == b[0] || a[0] == b[1] || a[1] == b[0] || a[1] == b[1];
            if (share) adj(i, j) = adj(j, i) = 1.0;
        }
    }
    Eigen::MatrixXd lap = -adj;
    lap.diagonal() = adj.rowwise().sum();
    return lap;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
    std::vector<Simplex> out;
    for (int k = 0; k <= max_order(); ++k) {
        for (const auto& s : simplices(k)) {
            if (cofaces(s).empty()) out.push_back(s);
        }
    }
    return out;
}

}  // namespace scsp
