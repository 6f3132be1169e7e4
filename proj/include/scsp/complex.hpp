#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace scsp {

using VertexId = std::int64_t;

/// A single simplex, identified by its strictly increasing vertex list.
/// The increasing order fixes the reference orientation; order k is
/// |vertices| - 1 (0 = node, 1 = edge, 2 = filled triangle).
struct Simplex {
    std::vector<VertexId> vertices;

    Simplex() = default;
    Simplex(std::initializer_list<VertexId> vs) : vertices(vs) {}
    explicit Simplex(std::vector<VertexId> vs) : vertices(std::move(vs)) {}

    int order() const { return static_cast<int>(vertices.size()) - 1; }

    /// True when the vertex list is strictly increasing and non-negative.
    bool is_valid() const;

    /// Human-readable form, e.g. "(1,3,4)".
    std::string str() const;

    auto operator<=>(const Simplex&) const = default;
};

/// One nonzero of a boundary operator.
struct IncidenceEntry {
    Eigen::Index row;
    Eigen::Index col;
    int sign;  // -1 or +1
};

/// Integer boundary operator B_k, stored as triplets. Rows are indexed by
/// (k-1)-simplices and columns by k-simplices, both in canonical order.
class SignedIncidenceMatrix {
  public:
    SignedIncidenceMatrix(Eigen::Index rows, Eigen::Index cols,
                          std::vector<IncidenceEntry> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {}

    Eigen::Index rows() const { return rows_; }
    Eigen::Index cols() const { return cols_; }
    const std::vector<IncidenceEntry>& entries() const { return entries_; }

    Eigen::MatrixXd dense() const;

    /// Exact integer product (this * other), row-major. Requires matching
    /// inner dimensions.
    std::vector<std::int64_t> multiply_int(const SignedIncidenceMatrix& other) const;

  private:
    Eigen::Index rows_;
    Eigen::Index cols_;
    std::vector<IncidenceEntry> entries_;
};

/// A finite abstract simplicial complex: closed under taking subsets, with a
/// canonical lexicographic ordering of the simplices of each order. Immutable
/// after construction.
class SimplicialComplex {
  public:
    SimplicialComplex() = default;

    /// Builds the closure of the given maximal simplices. Rejects any input
    /// simplex whose vertex list is not strictly increasing or contains a
    /// negative id. An empty input yields the empty complex.
    static SimplicialComplex from_maximal_simplices(const std::vector<Simplex>& maximal);

    /// Highest order present, or -1 for the empty complex.
    int max_order() const { return static_cast<int>(by_order_.size()) - 1; }

    /// Number of order-k simplices (0 when the order is absent).
    Eigen::Index count(int order) const;

    /// Canonically ordered order-k simplices. Empty for absent orders.
    const std::vector<Simplex>& simplices(int order) const;

    bool contains(const Simplex& s) const;

    /// Canonical index of s among the simplices of its order. Throws if absent.
    Eigen::Index index_of(const Simplex& s) const;

    /// All order-(k-1) subsets of s. Throws if s is not in the complex.
    std::vector<Simplex> faces(const Simplex& s) const;

    /// All order-(k+1) simplices containing s. Throws if s is not in the complex.
    std::vector<Simplex> cofaces(const Simplex& s) const;

    /// Boundary operator B_k for k >= 1. Either dimension may legitimately be
    /// zero. Entry signs follow the alternating rule: the face obtained by
    /// deleting the i-th vertex of a column simplex gets sign (-1)^i, so an
    /// edge has -1 at its lower-numbered vertex and +1 at the higher one.
    SignedIncidenceMatrix boundary_matrix(int k) const;

    /// Hodge Laplacian L_k = B_k^T B_k + B_{k+1} B_{k+1}^T with B_0 := 0 and
    /// B_{k+1} := 0 when no (k+1)-simplices exist. Throws when order k is not
    /// present in the complex.
    Eigen::MatrixXd hodge_laplacian(int k) const;

    /// Graph Laplacian of the unweighted line graph of the 1-skeleton:
    /// one line-graph node per edge, adjacent iff the edges share a vertex.
    /// Requires at least one edge.
    Eigen::MatrixXd line_graph_laplacian() const;

    /// Maximal simplices (those without cofaces) in canonical order.
    std::vector<Simplex> maximal_simplices() const;

  private:
    std::vector<std::vector<Simplex>> by_order_;
    std::vector<std::map<Simplex, Eigen::Index>> index_;
};

}  // namespace scsp
