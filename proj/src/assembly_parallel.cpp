// Row-parallel (OpenMP) assembly of the boundary operator matrices.

#include <cmath>
#include <numbers>
#include <vector>

#include <omp.h>

#include "kernels.hpp"
#include "npspec/errors.hpp"
#include "npspec/npops.hpp"

namespace npspec {

namespace {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_mesh(const MeshPtr& mesh) {
    if (!mesh || mesh->size() == 0) throw InputError("operator assembly needs a non-empty mesh");
    if (static_cast<int>(mesh->weights.size()) != mesh->size()) throw InputError("mesh weights do not match nodes");
}

Vec2 panel_normal(const Panel& p) {
    const Vec2 dir = (p.end - p.start) / p.length();
    return {dir.y(), -dir.x()};
}

double far_entry(OperatorKind kind, const Curve& c, int i, int j) {
    switch (kind) {
        case OperatorKind::SingleLayer: return detail::single_layer_kernel(c.nodes[i], c.nodes[j]);
        case OperatorKind::DoubleLayer: return detail::double_layer_kernel(c.nodes[i], c.nodes[j], c.normals[j]);
        case OperatorKind::AdjDoubleLayer:
            return detail::adj_double_layer_kernel(c.nodes[i], c.normals[i], c.nodes[j]);
    }
    return 0.0;
}

/// Periodic trapezoid row with the log-split correction for S and the curvature limit for K, K'.
void smooth_row(OperatorKind kind, const QuadratureMesh& m, const std::vector<double>& log_weights, int i,
                double* row) {
    const Curve& c = m.curve;
    const int n = m.size();
    const double inv4pi = 0.25 / std::numbers::pi;
    for (int j = 0; j < n; ++j) {
        if (kind == OperatorKind::SingleLayer) {
            const double m1 = inv4pi * c.speeds[j];
            double m2;
            if (i == j) {
                m2 = m1 * std::log(c.speeds[i] * c.speeds[i]);
            } else {
                const double s = std::sin(0.5 * (c.params[i] - c.params[j]));
                m2 = m1 * (std::log((c.nodes[i] - c.nodes[j]).squaredNorm()) - std::log(4.0 * s * s));
            }
            row[j] = log_weights[(i - j + n) % n] * m1 + 2.0 * std::numbers::pi / n * m2;
        } else if (i == j) {
            row[j] = inv4pi * c.curvatures[i] * m.weights[i];
        } else {
            row[j] = far_entry(kind, c, i, j) * m.weights[j];
        }
    }
}

void near_panel_weights(OperatorKind kind, const Vec2& x, const Vec2& normal_x, const Panel& p,
                        const quad::LagrangeBasis& basis, double* out) {
    const int order = p.order;
    const double half = 0.5 * p.length();
    const Vec2 normal_y = panel_normal(p);
    std::vector<double> lagrange(order);
    auto integrand = [&](double t, std::span<double> v) {
        const Vec2 y = p.point_at(t);
        double k = 0.0;
        switch (kind) {
            case OperatorKind::SingleLayer: k = detail::single_layer_kernel(x, y); break;
            case OperatorKind::DoubleLayer: k = detail::double_layer_kernel(x, y, normal_y); break;
            case OperatorKind::AdjDoubleLayer: k = detail::adj_double_layer_kernel(x, normal_x, y); break;
        }
        basis.evaluate(t, lagrange);
        for (int j = 0; j < order; ++j) v[j] = half * k * lagrange[j];
    };
    const Eigen::VectorXd w = quad::integrate_adaptive(integrand, order, -1.0, 1.0, 1e-14);
    for (int j = 0; j < order; ++j) out[j] = w[j];
}

void panel_row(OperatorKind kind, const QuadratureMesh& m, const detail::PanelRules& rules, int i, double* row) {
    const Curve& c = m.curve;
    const Panel& own = m.panels[m.panel_of_node[i]];
    const Vec2& x = c.nodes[i];
    for (std::size_t k = 0; k < m.panels.size(); ++k) {
        const Panel& p = m.panels[k];
        double* block = row + p.first_node;
        const bool same_edge = p.edge == own.edge;
        if (kind != OperatorKind::SingleLayer && same_edge) {
            // <nu, x - y> vanishes identically on a straight edge
            std::fill(block, block + p.order, 0.0);
            continue;
        }
        if (static_cast<int>(k) == m.panel_of_node[i]) {
            detail::self_panel_log_weights(p, rules.gauss(p.order), i - p.first_node, {block, std::size_t(p.order)});
            continue;
        }
        if (detail::distance_to_segment(x, p.start, p.end) < detail::kNearFactor * p.length()) {
            near_panel_weights(kind, x, c.normals[i], p, rules.basis(p.order), block);
            continue;
        }
        for (int q = 0; q < p.order; ++q) {
            const int j = p.first_node + q;
            block[q] = far_entry(kind, c, i, j) * m.weights[j];
        }
    }
}

BoundaryOperatorMatrix assemble(OperatorKind kind, const MeshPtr& mesh) {
    check_mesh(mesh);
    const QuadratureMesh& m = *mesh;
    const int n = m.size();
    RowMajorMatrix a(n, n);

    if (m.periodic()) {
        const std::vector<double> log_weights =
            kind == OperatorKind::SingleLayer ? quad::periodic_log_weights(n / 2) : std::vector<double>{};
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) smooth_row(kind, m, log_weights, i, a.row(i).data());
    } else {
        const detail::PanelRules rules(m);
#pragma omp parallel for schedule(dynamic, 4)
        for (int i = 0; i < n; ++i) panel_row(kind, m, rules, i, a.row(i).data());
    }
    return {kind, Eigen::MatrixXd(a), mesh};
}

}  // namespace

BoundaryOperatorMatrix assemble_single_layer(const MeshPtr& mesh) {
    return assemble(OperatorKind::SingleLayer, mesh);
}

BoundaryOperatorMatrix assemble_double_layer(const MeshPtr& mesh) {
    return assemble(OperatorKind::DoubleLayer, mesh);
}

BoundaryOperatorMatrix assemble_adj_double_layer(const MeshPtr& mesh) {
    return assemble(OperatorKind::AdjDoubleLayer, mesh);
}

}  // namespace npspec
