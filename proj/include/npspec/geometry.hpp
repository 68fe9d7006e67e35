#pragma once

#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace npspec {

using Vec2 = Eigen::Vector2d;

/// Position and first two parameter derivatives of a curve at one parameter value.
struct CurveFrame {
    Vec2 point;
    Vec2 d1;
    Vec2 d2;
};

/// (a cos t, b sin t), t in [0, 2pi).
struct EllipseShape {
    double a = 1.0;
    double b = 1.0;

    CurveFrame frame(double t) const;
};

/// Smooth closed curve given by a truncated Fourier series in t in [0, 2pi),
/// fitted to equispaced samples.
struct FourierShape {
    std::vector<double> cx, sx, cy, sy;  // cos / sin coefficients, index = frequency

    static FourierShape from_samples(const std::vector<Vec2>& samples);
    CurveFrame frame(double t) const;
};

/// Straight-edged polygon, counter-clockwise, parametrized by arclength from vertex 0.
struct PolygonShape {
    std::vector<Vec2> vertices;
    double grading_exponent = 3.0;

    double perimeter() const;
    std::vector<double> edge_lengths() const;
};

using Shape = std::variant<EllipseShape, FourierShape, PolygonShape>;

/// A sampled closed planar curve. Normals point out of the enclosed region.
struct Curve {
    std::vector<Vec2> nodes;
    std::vector<Vec2> normals;
    std::vector<double> speeds;
    std::vector<double> curvatures;
    std::vector<double> params;
    bool is_smooth = true;
    std::vector<double> corner_params;
    std::shared_ptr<const Shape> shape;

    int size() const { return static_cast<int>(nodes.size()); }
};

/// Interior angles of a curvilinear polygon, each in (0, 2pi) \ {pi}.
struct CornerSpec {
    std::vector<double> angles;
};

/// One Gauss-Legendre panel on a straight polygon edge.
struct Panel {
    int edge = 0;
    Vec2 start;
    Vec2 end;
    int first_node = 0;
    int order = 0;

    double length() const { return (end - start).norm(); }
    Vec2 point_at(double t) const { return 0.5 * (1.0 - t) * start + 0.5 * (1.0 + t) * end; }
};

/// Quadrature nodes and weights on a curve. For smooth curves the rule is the
/// periodic trapezoid rule in the parameter (no panels); for polygons it is a
/// composite Gauss rule on corner-graded panels.
struct QuadratureMesh {
    Curve curve;                     // sampled exactly at the quadrature nodes
    std::vector<double> weights;     // arclength weights
    std::vector<int> panel_of_node;  // all zero on smooth curves
    std::vector<Panel> panels;       // empty on smooth curves
    double grading_exponent = 1.0;

    int size() const { return curve.size(); }
    bool periodic() const { return curve.is_smooth; }
    double perimeter() const;
    /// Typical node spacing around node i.
    double local_spacing(int i) const;
};

using MeshPtr = std::shared_ptr<const QuadratureMesh>;

Curve make_ellipse(double a, double b, int n);

/// Smooth closed curve through equispaced parameter samples (trigonometric interpolation).
Curve make_sampled_curve(const std::vector<Vec2>& samples);

std::pair<Curve, CornerSpec> make_polygon(const std::vector<Vec2>& vertices, int nodes_per_edge,
                                          double grading_exponent = 3.0);

/// Interior angles of a validated polygon.
CornerSpec corner_spec(const PolygonShape& polygon);

/// The sharpest corner, normalized into (0, pi).
double sharpest_corner(const CornerSpec& spec);

/// Quadrature mesh with n nodes. `grading_exponent` <= 0 keeps the polygon's own exponent.
MeshPtr build_mesh(const Curve& curve, int n, double grading_exponent = 0.0);

/// Mesh with twice the nodes: interleaved trapezoid nodes, or every panel bisected.
MeshPtr refine_mesh(const QuadratureMesh& mesh);

/// Interpolates nodal values from `coarse` onto the nodes of `refine_mesh(coarse)`.
Eigen::VectorXd interpolate_to_refined(const QuadratureMesh& coarse, const QuadratureMesh& fine,
                                       const Eigen::VectorXd& values);

/// Winding-number test against the mesh polyline.
bool encloses(const QuadratureMesh& mesh, const Vec2& x);

constexpr int kMinMeshNodes = 32;

}  // namespace npspec
