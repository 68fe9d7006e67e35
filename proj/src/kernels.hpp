#pragma once

// Pointwise kernels and panel quadrature shared by the parallel and reference assemblers.

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <span>
#include <vector>

#include "npspec/geometry.hpp"
#include "npspec/quadrature.hpp"

namespace npspec::detail {

inline constexpr double kInvTwoPi = 0.5 / std::numbers::pi;

/// Panels closer than this many panel lengths to a target get product quadrature.
inline constexpr double kNearFactor = 2.0;

inline double single_layer_kernel(const Vec2& x, const Vec2& y) {
    return kInvTwoPi * std::log((x - y).norm());
}

inline double double_layer_kernel(const Vec2& x, const Vec2& y, const Vec2& normal_y) {
    const Vec2 d = y - x;
    return kInvTwoPi * normal_y.dot(d) / d.squaredNorm();
}

inline double adj_double_layer_kernel(const Vec2& x, const Vec2& normal_x, const Vec2& y) {
    const Vec2 d = x - y;
    return kInvTwoPi * normal_x.dot(d) / d.squaredNorm();
}

inline double distance_to_segment(const Vec2& x, const Vec2& a, const Vec2& b) {
    const Vec2 ab = b - a;
    const double t = std::clamp((x - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
    return (x - (a + t * ab)).norm();
}

/// Gauss rules and Lagrange bases for every panel order used by a mesh.
class PanelRules {
public:
    explicit PanelRules(const QuadratureMesh& mesh) {
        for (const Panel& p : mesh.panels) {
            if (rules_.count(p.order)) continue;
            quad::GaussRule g = quad::gauss_legendre(p.order);
            quad::LagrangeBasis basis(g.nodes);
            rules_.emplace(p.order, Entry{std::move(g), std::move(basis)});
        }
    }

    const quad::GaussRule& gauss(int order) const { return rules_.at(order).rule; }
    const quad::LagrangeBasis& basis(int order) const { return rules_.at(order).basis; }

private:
    struct Entry {
        quad::GaussRule rule;
        quad::LagrangeBasis basis;
    };
    std::map<int, Entry> rules_;
};

/// Product weights  int_{-1}^{1} log|y(t) - y(t_i)| l_j(t) (L/2) dt / (2pi)  for a target
/// at Gauss node `i` of its own straight panel (log singularity integrated exactly).
inline void self_panel_log_weights(const Panel& panel, const quad::GaussRule& g, int i, std::span<double> out) {
    const int p = panel.order;
    const double half = 0.5 * panel.length();
    const std::vector<double> moments = quad::legendre_log_moments(g.nodes[i], p - 1);
    for (int j = 0; j < p; ++j) {
        const std::vector<double> pj = quad::legendre_values(g.nodes[j], p - 1);
        double log_part = 0.0;
        for (int k = 0; k < p; ++k) log_part += 0.5 * (2 * k + 1) * g.weights[j] * pj[k] * moments[k];
        out[j] = half * kInvTwoPi * (std::log(half) * g.weights[j] + log_part);
    }
}

}  // namespace npspec::detail
