#pragma once

#include <vector>

#include <Eigen/Dense>

#include "scsp/complex.hpp"

namespace scsp::interpolate {

/// Known values on a subset of the order-k simplices, addressed by canonical
/// index. Indices are strictly increasing, unique, and in range.
struct LabeledSignal {
    std::vector<Eigen::Index> indices;
    Eigen::VectorXd values;
    Eigen::Index total = 0;  // count of order-k simplices
};

/// Validates and normalizes (sorts) the index/value pairs.
LabeledSignal make_labeled_signal(std::vector<Eigen::Index> indices, Eigen::VectorXd values,
                                  Eigen::Index total);

/// Selection matrix mapping the unlabeled coordinates into the full space:
/// exactly one 1 per column, at an unlabeled row, columns ordered by
/// ascending unlabeled index.
Eigen::MatrixXd expansion_operator(Eigen::Index total,
                                   const std::vector<Eigen::Index>& labeled_indices);

/// Harmonic interpolation of node labels: minimizes the Laplacian quadratic
/// form subject to the labels, which are reproduced exactly. Every connected
/// component must carry at least one label.
Eigen::VectorXd interpolate_node_labels(const SimplicialComplex& x,
                                        const LabeledSignal& labels);

/// Least-squares edge-flow interpolation. Solves, over the unlabeled flows u,
///   min || [B_1 Phi; alpha I] u - [-B_1 f0; 0] ||^2
/// and, with use_triangles, the variant with [B_2^T Phi] and [-B_2^T f0]
/// stacked below. f0 carries the labels and zeros elsewhere; the returned
/// full vector keeps the labeled entries bit-equal. alpha = 0 requires the
/// stacked matrix to have full column rank (unmeasured independent cycles
/// otherwise make the solution non-unique).
Eigen::VectorXd interpolate_edge_flow(const SimplicialComplex& x, const LabeledSignal& labels,
                                      double alpha, bool use_triangles);

/// Sample Pearson correlation; requires length >= 2 and nonzero variance.
double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace scsp::interpolate
