#include "npspec/npops.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "npspec/errors.hpp"

namespace npspec {

std::string_view to_string(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::SingleLayer: return "single";
        case OperatorKind::DoubleLayer: return "double";
        case OperatorKind::AdjDoubleLayer: return "adjoint";
    }
    return "unknown";
}

bool same_mesh(const BoundaryOperatorMatrix& a, const BoundaryOperatorMatrix& b) {
    if (!a.mesh || !b.mesh) return false;
    if (a.mesh == b.mesh) return true;
    if (a.mesh->size() != b.mesh->size()) return false;
    for (int i = 0; i < a.mesh->size(); ++i)
        if (a.mesh->curve.nodes[i] != b.mesh->curve.nodes[i] || a.mesh->weights[i] != b.mesh->weights[i])
            return false;
    return true;
}

double symmetrization_residual(const BoundaryOperatorMatrix& S, const BoundaryOperatorMatrix& K,
                               const BoundaryOperatorMatrix& Kp) {
    if (S.kind != OperatorKind::SingleLayer || K.kind != OperatorKind::DoubleLayer ||
        Kp.kind != OperatorKind::AdjDoubleLayer)
        throw InputError("symmetrization_residual expects (single, double, adjoint) operators");
    if (!same_mesh(S, K) || !same_mesh(S, Kp)) throw InputError("symmetrization_residual: operators live on different meshes");

    auto norm_inf = [](const Eigen::MatrixXd& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); };
    const Eigen::MatrixXd defect = S.entries * Kp.entries - K.entries * S.entries;
    const double ns = norm_inf(S.entries);
    const double scale = std::max(ns * norm_inf(Kp.entries), ns * norm_inf(K.entries));
    if (scale == 0.0) return norm_inf(defect);
    return norm_inf(defect) / scale;
}

Eigen::MatrixXd l2_representation(const BoundaryOperatorMatrix& op) {
    const auto& w = op.mesh->weights;
    const Eigen::VectorXd sq = Eigen::Map<const Eigen::VectorXd>(w.data(), w.size()).cwiseSqrt();
    return sq.asDiagonal() * op.entries * sq.cwiseInverse().asDiagonal();
}

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <typename T>
void put_le(std::ostream& os, T value) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
    unsigned char bytes[sizeof(T)];
    if (!is.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw InputError("matrix file is truncated");
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
}

}  // namespace

void write_matrix_binary(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw InputError("matrix dump expects a square matrix");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InputError("cannot open " + path.string() + " for writing");
    put_le<std::uint64_t>(os, static_cast<std::uint64_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) put_le<double>(os, m(i, j));
}

Eigen::MatrixXd read_matrix_binary(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InputError("cannot open " + path.string());
    const auto n = get_le<std::uint64_t>(is);
    if (n > (1u << 16)) throw InputError("matrix header in " + path.string() + " is implausible");
    Eigen::MatrixXd m(n, n);
    for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = 0; j < n; ++j) m(i, j) = get_le<double>(is);
    return m;
}

}  // namespace npspec
