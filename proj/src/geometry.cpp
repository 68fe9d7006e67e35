#include "npspec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <unsupported/Eigen/FFT>

#include "npspec/errors.hpp"
#include "npspec/quadrature.hpp"

namespace npspec {

namespace {

constexpr double kPi = std::numbers::pi;

double cross(const Vec2& u, const Vec2& v) { return u.x() * v.y() - u.y() * v.x(); }

Curve sample_smooth(const std::shared_ptr<const Shape>& shape, int n) {
    Curve c;
    c.shape = shape;
    c.is_smooth = true;
    c.nodes.reserve(n);
    for (int j = 0; j < n; ++j) {
        const double t = 2.0 * kPi * j / n;
        const CurveFrame f = std::visit(
            [t](const auto& s) -> CurveFrame {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, PolygonShape>) {
                    throw InputError("sample_smooth: polygon is not a smooth shape");
                } else {
                    return s.frame(t);
                }
            },
            *shape);
        const double speed = f.d1.norm();
        if (!(speed > 0.0)) throw InputError("curve has a stationary point at t = " + std::to_string(t));
        const Vec2 tangent = f.d1 / speed;
        c.nodes.push_back(f.point);
        c.normals.emplace_back(tangent.y(), -tangent.x());
        c.speeds.push_back(speed);
        c.curvatures.push_back(cross(f.d1, f.d2) / (speed * speed * speed));
        c.params.push_back(t);
    }
    return c;
}

/// Algebraic grading map of [0, 1] onto itself clustering toward both ends.
double grade(double t, double q) {
    const double a = std::pow(t, q), b = std::pow(1.0 - t, q);
    return a / (a + b);
}

struct PanelLayout {
    std::vector<Panel> panels;
};

PanelLayout layout_edge_panels(const PolygonShape& poly, const std::vector<int>& nodes_per_edge) {
    PanelLayout out;
    const int ne = static_cast<int>(poly.vertices.size());
    int first = 0;
    for (int e = 0; e < ne; ++e) {
        const Vec2 a = poly.vertices[e];
        const Vec2 b = poly.vertices[(e + 1) % ne];
        const int count = nodes_per_edge[e];
        int m = std::max(1, static_cast<int>(std::lround(count / 10.0)));
        if (count >= 8) m = std::max(m, 2);
        for (int k = 0; k < m; ++k) {
            const double u0 = grade(double(k) / m, poly.grading_exponent);
            const double u1 = grade(double(k + 1) / m, poly.grading_exponent);
            Panel p;
            p.edge = e;
            p.start = a + u0 * (b - a);
            p.end = a + u1 * (b - a);
            p.order = count / m + (k < count % m ? 1 : 0);
            p.first_node = first;
            first += p.order;
            out.panels.push_back(p);
        }
    }
    return out;
}

/// Fills curve samples and weights from a panel list.
void fill_from_panels(const PolygonShape& poly, const std::vector<Panel>& panels, Curve& c,
                      std::vector<double>& weights, std::vector<int>& panel_of_node) {
    const std::vector<double> lengths = poly.edge_lengths();
    std::vector<double> offset(lengths.size() + 1, 0.0);
    for (std::size_t e = 0; e < lengths.size(); ++e) offset[e + 1] = offset[e] + lengths[e];

    c.is_smooth = false;
    c.corner_params.assign(offset.begin(), offset.end() - 1);
    for (std::size_t k = 0; k < panels.size(); ++k) {
        const Panel& p = panels[k];
        const quad::GaussRule g = quad::gauss_legendre(p.order);
        const Vec2 dir = (p.end - p.start) / p.length();
        const Vec2 normal(dir.y(), -dir.x());
        const Vec2 edge_start = poly.vertices[p.edge];
        for (int q = 0; q < p.order; ++q) {
            const Vec2 x = p.point_at(g.nodes[q]);
            c.nodes.push_back(x);
            c.normals.push_back(normal);
            c.speeds.push_back(1.0);
            c.curvatures.push_back(0.0);
            c.params.push_back(offset[p.edge] + (x - edge_start).norm());
            weights.push_back(0.5 * p.length() * g.weights[q]);
            panel_of_node.push_back(static_cast<int>(k));
        }
    }
}

bool segments_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
    auto orient = [](const Vec2& a, const Vec2& b, const Vec2& c) { return cross(b - a, c - a); };
    auto on_segment = [](const Vec2& a, const Vec2& b, const Vec2& c) {
        return std::min(a.x(), b.x()) <= c.x() && c.x() <= std::max(a.x(), b.x()) &&
               std::min(a.y(), b.y()) <= c.y() && c.y() <= std::max(a.y(), b.y());
    };
    const double d1 = orient(q1, q2, p1), d2 = orient(q1, q2, p2);
    const double d3 = orient(p1, p2, q1), d4 = orient(p1, p2, q2);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
    if (d1 == 0 && on_segment(q1, q2, p1)) return true;
    if (d2 == 0 && on_segment(q1, q2, p2)) return true;
    if (d3 == 0 && on_segment(p1, p2, q1)) return true;
    if (d4 == 0 && on_segment(p1, p2, q2)) return true;
    return false;
}

PolygonShape validated_polygon(std::vector<Vec2> v, double grading) {
    if (v.size() < 3) throw InputError("polygon needs at least 3 vertices");
    if (!(grading >= 1.0)) throw InputError("grading exponent must be >= 1");
    for (const Vec2& p : v)
        if (!p.allFinite()) throw InputError("polygon vertex is not finite");
    const int n = static_cast<int>(v.size());

    double area2 = 0.0;
    for (int i = 0; i < n; ++i) area2 += cross(v[i], v[(i + 1) % n]);
    double scale = 0.0;
    for (const Vec2& p : v) scale = std::max(scale, p.norm());
    if (std::abs(area2) <= 1e-14 * std::max(1.0, scale * scale)) throw InputError("polygon has zero area");
    if (area2 < 0) std::reverse(v.begin(), v.end());

    for (int i = 0; i < n; ++i) {
        const Vec2 e0 = v[i] - v[(i + n - 1) % n];
        const Vec2 e1 = v[(i + 1) % n] - v[i];
        if (e0.norm() <= 1e-14 * std::max(1.0, scale)) throw InputError("polygon has a repeated vertex");
        const double s = cross(e0, e1) / (e0.norm() * e1.norm());
        if (std::abs(s) < 1e-12) {
            if (e0.dot(e1) > 0)
                throw InputError("polygon vertex " + std::to_string(i) + " is collinear with its neighbours (angle pi)");
            throw InputError("polygon self-intersects (edges fold back at vertex " + std::to_string(i) + ")");
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
                throw InputError("polygon self-intersects (edges " + std::to_string(i) + " and " +
                                 std::to_string(j) + ")");
        }
    }
    return PolygonShape{std::move(v), grading};
}

QuadratureMesh polygon_mesh(const std::shared_ptr<const Shape>& shape, const std::vector<int>& per_edge) {
    const auto& poly = std::get<PolygonShape>(*shape);
    QuadratureMesh mesh;
    mesh.grading_exponent = poly.grading_exponent;
    mesh.panels = layout_edge_panels(poly, per_edge).panels;
    mesh.curve.shape = shape;
    fill_from_panels(poly, mesh.panels, mesh.curve, mesh.weights, mesh.panel_of_node);
    return mesh;
}

}  // namespace

CurveFrame EllipseShape::frame(double t) const {
    const double c = std::cos(t), s = std::sin(t);
    return {Vec2(a * c, b * s), Vec2(-a * s, b * c), Vec2(-a * c, -b * s)};
}

FourierShape FourierShape::from_samples(const std::vector<Vec2>& samples) {
    const int n = static_cast<int>(samples.size());
    std::vector<double> xs(n), ys(n);
    for (int j = 0; j < n; ++j) {
        xs[j] = samples[j].x();
        ys[j] = samples[j].y();
    }
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> fx, fy;
    fft.fwd(fx, xs);
    fft.fwd(fy, ys);
    const int kmax = n / 2;
    FourierShape s;
    s.cx.assign(kmax + 1, 0.0);
    s.sx.assign(kmax + 1, 0.0);
    s.cy.assign(kmax + 1, 0.0);
    s.sy.assign(kmax + 1, 0.0);
    s.cx[0] = fx[0].real() / n;
    s.cy[0] = fy[0].real() / n;
    for (int k = 1; k <= kmax; ++k) {
        const bool nyquist = (n % 2 == 0 && k == kmax);
        const double f = nyquist ? 1.0 / n : 2.0 / n;
        s.cx[k] = f * fx[k].real();
        s.cy[k] = f * fy[k].real();
        if (!nyquist) {
            s.sx[k] = -f * fx[k].imag();
            s.sy[k] = -f * fy[k].imag();
        }
    }
    return s;
}

CurveFrame FourierShape::frame(double t) const {
    CurveFrame f{Vec2(cx[0], cy[0]), Vec2::Zero(), Vec2::Zero()};
    for (std::size_t k = 1; k < cx.size(); ++k) {
        const double c = std::cos(k * t), s = std::sin(k * t), kk = double(k);
        f.point += Vec2(cx[k] * c + sx[k] * s, cy[k] * c + sy[k] * s);
        f.d1 += kk * Vec2(-cx[k] * s + sx[k] * c, -cy[k] * s + sy[k] * c);
        f.d2 -= kk * kk * Vec2(cx[k] * c + sx[k] * s, cy[k] * c + sy[k] * s);
    }
    return f;
}

double PolygonShape::perimeter() const {
    double p = 0.0;
    for (double l : edge_lengths()) p += l;
    return p;
}

std::vector<double> PolygonShape::edge_lengths() const {
    const std::size_t n = vertices.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = (vertices[(i + 1) % n] - vertices[i]).norm();
    return out;
}

double QuadratureMesh::perimeter() const {
    double p = 0.0;
    for (double w : weights) p += w;
    return p;
}

double QuadratureMesh::local_spacing(int i) const {
    if (periodic()) return weights[i];
    const Panel& p = panels[panel_of_node[i]];
    return p.length() / p.order;
}

Curve make_ellipse(double a, double b, int n) {
    if (!(b > 0.0) || !(a >= b) || !std::isfinite(a))
        throw InputError("ellipse needs semi-axes a >= b > 0 (got a=" + std::to_string(a) +
                         ", b=" + std::to_string(b) + ")");
    if (n < 16 || n % 2 != 0) throw InputError("ellipse needs an even node count >= 16");
    return sample_smooth(std::make_shared<const Shape>(EllipseShape{a, b}), n);
}

Curve make_sampled_curve(const std::vector<Vec2>& samples) {
    const int n = static_cast<int>(samples.size());
    if (n < 16) throw InputError("sampled curve needs at least 16 samples");
    for (const Vec2& p : samples)
        if (!p.allFinite()) throw InputError("sampled curve has a non-finite point");
    double area2 = 0.0;
    for (int i = 0; i < n; ++i) area2 += cross(samples[i], samples[(i + 1) % n]);
    std::vector<Vec2> ordered = samples;
    if (area2 < 0) std::reverse(ordered.begin() + 1, ordered.end());
    auto shape = std::make_shared<const Shape>(FourierShape::from_samples(ordered));
    return sample_smooth(shape, n % 2 == 0 ? n : n + 1);
}

CornerSpec corner_spec(const PolygonShape& polygon) {
    const auto& v = polygon.vertices;
    const int n = static_cast<int>(v.size());
    CornerSpec spec;
    for (int i = 0; i < n; ++i) {
        const Vec2 e0 = v[i] - v[(i + n - 1) % n];
        const Vec2 e1 = v[(i + 1) % n] - v[i];
        const double turn = std::atan2(cross(e0, e1), e0.dot(e1));
        spec.angles.push_back(kPi - turn);
    }
    return spec;
}

std::pair<Curve, CornerSpec> make_polygon(const std::vector<Vec2>& vertices, int nodes_per_edge,
                                          double grading_exponent) {
    if (nodes_per_edge < 4) throw InputError("polygon needs at least 4 nodes per edge");
    auto shape = std::make_shared<const Shape>(validated_polygon(vertices, grading_exponent));
    const auto& poly = std::get<PolygonShape>(*shape);
    QuadratureMesh mesh = polygon_mesh(shape, std::vector<int>(poly.vertices.size(), nodes_per_edge));
    return {std::move(mesh.curve), corner_spec(poly)};
}

double sharpest_corner(const CornerSpec& spec) {
    if (spec.angles.empty()) throw InputError("sharpest_corner: empty angle list");
    double deviation = 0.0;
    for (double w : spec.angles) {
        if (!(w > 0.0 && w < 2.0 * kPi) || w == kPi) throw InputError("corner angle outside (0, 2pi) \\ {pi}");
        deviation = std::max(deviation, std::abs(kPi - w));
    }
    return kPi - deviation;
}

MeshPtr build_mesh(const Curve& curve, int n, double grading_exponent) {
    if (n < kMinMeshNodes)
        throw InputError("mesh needs at least " + std::to_string(kMinMeshNodes) + " nodes (got " +
                         std::to_string(n) + ")");
    if (!curve.shape) throw InputError("curve carries no shape description");

    if (const auto* poly = std::get_if<PolygonShape>(curve.shape.get())) {
        std::shared_ptr<const Shape> shape = curve.shape;
        if (grading_exponent > 0.0 && grading_exponent != poly->grading_exponent) {
            if (grading_exponent < 1.0) throw InputError("grading exponent must be >= 1");
            shape = std::make_shared<const Shape>(PolygonShape{poly->vertices, grading_exponent});
        }
        const int ne = static_cast<int>(poly->vertices.size());
        if (n / ne < 4) throw InputError("too few mesh nodes for the number of polygon edges");
        std::vector<int> per_edge(ne, n / ne);
        for (int e = 0; e < n % ne; ++e) ++per_edge[e];
        return std::make_shared<const QuadratureMesh>(polygon_mesh(shape, per_edge));
    }

    if (n % 2 != 0) throw InputError("smooth-curve meshes need an even node count");
    QuadratureMesh mesh;
    mesh.curve = sample_smooth(curve.shape, n);
    mesh.grading_exponent = 1.0;
    mesh.weights.resize(n);
    mesh.panel_of_node.assign(n, 0);
    for (int j = 0; j < n; ++j) mesh.weights[j] = 2.0 * kPi / n * mesh.curve.speeds[j];
    return std::make_shared<const QuadratureMesh>(std::move(mesh));
}

MeshPtr refine_mesh(const QuadratureMesh& mesh) {
    if (mesh.periodic()) return build_mesh(mesh.curve, 2 * mesh.size());

    const auto& poly = std::get<PolygonShape>(*mesh.curve.shape);
    QuadratureMesh fine;
    fine.grading_exponent = mesh.grading_exponent;
    fine.curve.shape = mesh.curve.shape;
    int first = 0;
    for (const Panel& p : mesh.panels) {
        const Vec2 mid = 0.5 * (p.start + p.end);
        for (const auto& [s, e] : {std::pair{p.start, mid}, std::pair{mid, p.end}}) {
            Panel child = p;
            child.start = s;
            child.end = e;
            child.first_node = first;
            first += child.order;
            fine.panels.push_back(child);
        }
    }
    fill_from_panels(poly, fine.panels, fine.curve, fine.weights, fine.panel_of_node);
    return std::make_shared<const QuadratureMesh>(std::move(fine));
}

Eigen::VectorXd interpolate_to_refined(const QuadratureMesh& coarse, const QuadratureMesh& fine,
                                       const Eigen::VectorXd& values) {
    const int n = coarse.size();
    if (values.size() != n || fine.size() != 2 * n)
        throw InputError("interpolate_to_refined: size mismatch");

    if (coarse.periodic()) {
        Eigen::FFT<double> fft;
        std::vector<double> in(values.data(), values.data() + n);
        std::vector<std::complex<double>> spec;
        fft.fwd(spec, in);
        std::vector<std::complex<double>> padded(2 * n, {0.0, 0.0});
        const int half = n / 2;
        for (int k = 0; k < half; ++k) padded[k] = spec[k];
        for (int k = 1; k < half; ++k) padded[2 * n - k] = spec[n - k];
        padded[half] = 0.5 * spec[half];
        padded[2 * n - half] = 0.5 * spec[half];
        std::vector<double> out;
        fft.inv(out, padded);
        Eigen::VectorXd result(2 * n);
        for (int j = 0; j < 2 * n; ++j) result[j] = 2.0 * out[j];
        return result;
    }

    Eigen::VectorXd result(fine.size());
    std::vector<double> basis;
    for (std::size_t k = 0; k < coarse.panels.size(); ++k) {
        const Panel& parent = coarse.panels[k];
        const quad::GaussRule g = quad::gauss_legendre(parent.order);
        const quad::LagrangeBasis lagrange(g.nodes);
        basis.resize(parent.order);
        for (int half = 0; half < 2; ++half) {
            const Panel& child = fine.panels[2 * k + half];
            for (int q = 0; q < child.order; ++q) {
                const double t = (half == 0 ? -0.5 : 0.5) + 0.5 * g.nodes[q];
                lagrange.evaluate(t, basis);
                double v = 0.0;
                for (int j = 0; j < parent.order; ++j) v += basis[j] * values[parent.first_node + j];
                result[child.first_node + q] = v;
            }
        }
    }
    return result;
}

bool encloses(const QuadratureMesh& mesh, const Vec2& x) {
    std::vector<Vec2> ring;
    if (const auto* poly = std::get_if<PolygonShape>(mesh.curve.shape.get()))
        ring = poly->vertices;
    else
        ring = mesh.curve.nodes;
    double winding = 0.0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = ring[i] - x, b = ring[(i + 1) % n] - x;
        winding += std::atan2(cross(a, b), a.dot(b));
    }
    return std::abs(winding) > kPi;
}

}  // namespace npspec
