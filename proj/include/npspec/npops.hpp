#pragma once

#include <filesystem>
#include <string_view>

#include <Eigen/Dense>

#include "npspec/geometry.hpp"

namespace npspec {

enum class OperatorKind { SingleLayer, DoubleLayer, AdjDoubleLayer };

std::string_view to_string(OperatorKind kind);

/// Dense Nystrom matrix acting on nodal values of a density:
///   (A f)_i ~ int_Sigma k(x_i, y) f(y) ds(y).
struct BoundaryOperatorMatrix {
    OperatorKind kind = OperatorKind::SingleLayer;
    Eigen::MatrixXd entries;
    MeshPtr mesh;

    int size() const { return static_cast<int>(entries.rows()); }
};

/// S f(x) = int (1/2pi) log|x - y| f(y) ds(y).
BoundaryOperatorMatrix assemble_single_layer(const MeshPtr& mesh);
/// K f(x) = p.v. int <nu(y), y - x> / (2pi |x - y|^2) f(y) ds(y).
BoundaryOperatorMatrix assemble_double_layer(const MeshPtr& mesh);
/// K' f(x) = p.v. int <nu(x), x - y> / (2pi |x - y|^2) f(y) ds(y), the Neumann-Poincare operator.
BoundaryOperatorMatrix assemble_adj_double_layer(const MeshPtr& mesh);

/// Serial reference assembly, kept to cross-check the OpenMP kernels.
namespace reference {
BoundaryOperatorMatrix assemble_single_layer(const MeshPtr& mesh);
BoundaryOperatorMatrix assemble_double_layer(const MeshPtr& mesh);
BoundaryOperatorMatrix assemble_adj_double_layer(const MeshPtr& mesh);
}  // namespace reference

/// || S K' - K S ||_inf / max(||S|| ||K'||, ||K|| ||S||), all in the induced inf-norm.
double symmetrization_residual(const BoundaryOperatorMatrix& S, const BoundaryOperatorMatrix& K,
                               const BoundaryOperatorMatrix& Kp);

/// D^{1/2} A D^{-1/2} with D = diag(weights): the matrix of the operator in an
/// orthonormal basis of L^2(Sigma, ds).
Eigen::MatrixXd l2_representation(const BoundaryOperatorMatrix& op);

/// True when both operators were built on the same mesh (same object or identical nodes).
bool same_mesh(const BoundaryOperatorMatrix& a, const BoundaryOperatorMatrix& b);

/// Binary matrix dump: u64 little-endian N, then N*N little-endian f64, row-major.
void write_matrix_binary(const std::filesystem::path& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_binary(const std::filesystem::path& path);

}  // namespace npspec
