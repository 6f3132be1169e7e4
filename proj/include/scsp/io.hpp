#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "scsp/complex.hpp"

namespace scsp::io {

/// Complex files are plain text, one record per line:
///   simplex v1 v2 ... vk     (strictly increasing integers)
/// listing the maximal simplices; the closure is computed on load.
/// '#' starts a comment, blank lines are ignored.
SimplicialComplex parse_complex(std::istream& in);
SimplicialComplex read_complex_file(const std::string& path);

/// Canonical text form (maximal simplices in canonical order). A dumped
/// complex re-reads to the identical canonical simplex list.
std::string dump_complex(const SimplicialComplex& x);

/// Signal files address simplices by vertex list, one record per line:
///   value v1 [v2 [v3]] x1 [x2 ...]
/// The simplex order is inferred from the vertex count and every record must
/// carry the same number of values (columns). A full signal must cover every
/// order-k simplex; missing ones are an error listing them.
Eigen::MatrixXd read_signal_matrix(const SimplicialComplex& x, std::istream& in, int order);
Eigen::MatrixXd read_signal_matrix_file(const SimplicialComplex& x, const std::string& path,
                                        int order);
Eigen::VectorXd read_signal_file(const SimplicialComplex& x, const std::string& path, int order);

/// Label files carry a partial signal for interpolation:
///   label v1 [v2] value
/// Every referenced simplex must exist in the complex.
struct Labels {
    std::vector<Eigen::Index> indices;  // strictly increasing canonical indices
    Eigen::VectorXd values;
};
Labels read_labels(const SimplicialComplex& x, std::istream& in, int order);
Labels read_labels_file(const SimplicialComplex& x, const std::string& path, int order);

/// Writes one `value ...` record per order-k simplex (matrix columns become
/// value columns), 17 significant digits.
std::string dump_signal(const SimplicialComplex& x, const Eigen::MatrixXd& signal, int order);

/// Locale-independent float formatting with 17 significant digits.
std::string format_double(double v);

}  // namespace scsp::io
