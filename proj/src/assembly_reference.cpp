// Serial entry-by-entry assembly. Slow; it exists to cross-check the parallel kernels.

#include <cmath>
#include <numbers>
#include <vector>

#include "kernels.hpp"
#include "npspec/errors.hpp"
#include "npspec/npops.hpp"

namespace npspec::reference {

namespace {

constexpr double kPi = std::numbers::pi;

double kernel(OperatorKind kind, const Vec2& x, const Vec2& nx, const Vec2& y, const Vec2& ny) {
    switch (kind) {
        case OperatorKind::SingleLayer: return detail::single_layer_kernel(x, y);
        case OperatorKind::DoubleLayer: return detail::double_layer_kernel(x, y, ny);
        case OperatorKind::AdjDoubleLayer: return detail::adj_double_layer_kernel(x, nx, y);
    }
    return 0.0;
}

double smooth_entry(OperatorKind kind, const QuadratureMesh& m, int i, int j) {
    const Curve& c = m.curve;
    const int n = m.size() / 2;
    if (kind != OperatorKind::SingleLayer) {
        if (i == j) return c.curvatures[i] / (4.0 * kPi) * m.weights[i];
        return kernel(kind, c.nodes[i], c.normals[i], c.nodes[j], c.normals[j]) * m.weights[j];
    }
    const double dt = c.params[i] - c.params[j];
    double r = 0.0;
    for (int k = 1; k < n; ++k) r += std::cos(k * dt) / k;
    r = -2.0 * kPi / n * r - kPi / (double(n) * n) * std::cos(n * dt);
    const double m1 = c.speeds[j] / (4.0 * kPi);
    const double m2 = (i == j) ? m1 * 2.0 * std::log(c.speeds[i])
                               : m1 * (2.0 * std::log((c.nodes[i] - c.nodes[j]).norm()) -
                                       std::log(4.0 * std::pow(std::sin(0.5 * dt), 2)));
    return r * m1 + kPi / n * m2;
}

/// int_0^a log(v) f(v) dv via v = a w^4, which leaves a w^3 log w endpoint behaviour.
double log_endpoint_integral(double a, const std::function<double(double)>& f) {
    auto g = [&](double w, std::span<double> out) {
        const double w3 = w * w * w;
        const double v = a * w3 * w;
        out[0] = (w > 0.0) ? (std::log(a) + 4.0 * std::log(w)) * f(v) * 4.0 * a * w3 : 0.0;
    };
    return quad::integrate_adaptive(g, 1, 0.0, 1.0, 1e-15)[0];
}

double panel_entry(OperatorKind kind, const QuadratureMesh& m, int i, int j) {
    const Curve& c = m.curve;
    const int pi_idx = m.panel_of_node[i], pj_idx = m.panel_of_node[j];
    const Panel& pi = m.panels[pi_idx];
    const Panel& pj = m.panels[pj_idx];
    if (kind != OperatorKind::SingleLayer && pi.edge == pj.edge) return 0.0;

    const quad::GaussRule g = quad::gauss_legendre(pj.order);
    const quad::LagrangeBasis basis(g.nodes);
    const int local = j - pj.first_node;
    std::vector<double> values(pj.order);
    auto lagrange_j = [&](double t) {
        basis.evaluate(t, values);
        return values[local];
    };
    const double half = 0.5 * pj.length();

    if (pi_idx == pj_idx) {
        // log|y(t) - y(t_i)| = log(half) + log|t - t_i| on a straight panel
        const double ti = g.nodes[i - pi.first_node];
        const double smooth_part = std::log(half) * g.weights[local];
        const double right = log_endpoint_integral(1.0 - ti, [&](double v) { return lagrange_j(ti + v); });
        const double left = log_endpoint_integral(1.0 + ti, [&](double v) { return lagrange_j(ti - v); });
        return half * detail::kInvTwoPi * (smooth_part + left + right);
    }

    if (detail::distance_to_segment(c.nodes[i], pj.start, pj.end) < detail::kNearFactor * pj.length()) {
        auto f = [&](double t, std::span<double> out) {
            const Vec2 y = pj.point_at(t);
            out[0] = half * kernel(kind, c.nodes[i], c.normals[i], y, c.normals[j]) * lagrange_j(t);
        };
        return quad::integrate_adaptive(f, 1, -1.0, 1.0, 1e-15)[0];
    }
    return kernel(kind, c.nodes[i], c.normals[i], c.nodes[j], c.normals[j]) * m.weights[j];
}

BoundaryOperatorMatrix assemble(OperatorKind kind, const MeshPtr& mesh) {
    if (!mesh || mesh->size() == 0) throw InputError("operator assembly needs a non-empty mesh");
    const QuadratureMesh& m = *mesh;
    const int n = m.size();
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a(i, j) = m.periodic() ? smooth_entry(kind, m, i, j) : panel_entry(kind, m, i, j);
    return {kind, std::move(a), mesh};
}

}  // namespace

BoundaryOperatorMatrix assemble_single_layer(const MeshPtr& mesh) { return assemble(OperatorKind::SingleLayer, mesh); }
BoundaryOperatorMatrix assemble_double_layer(const MeshPtr& mesh) { return assemble(OperatorKind::DoubleLayer, mesh); }
BoundaryOperatorMatrix assemble_adj_double_layer(const MeshPtr& mesh) {
    return assemble(OperatorKind::AdjDoubleLayer, mesh);
}

}  // namespace npspec::reference
