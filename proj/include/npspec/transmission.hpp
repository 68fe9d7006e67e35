#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "npspec/geometry.hpp"
#include "npspec/npops.hpp"
#include "npspec/spectral.hpp"

namespace npspec {

/// Harmonic excitation u_in: either the linear field <d, x> or the point source
/// Phi(x - x0) = (1/2pi) log|x - x0| with x0 outside the inclusion.
struct IncidentField {
    enum class Kind { Linear, PointSource };

    Kind kind = Kind::Linear;
    Vec2 direction = Vec2(1.0, 0.0);
    Vec2 source = Vec2::Zero();

    static IncidentField linear(const Vec2& d) { return {Kind::Linear, d, Vec2::Zero()}; }
    static IncidentField point_source(const Vec2& x0) { return {Kind::PointSource, Vec2::Zero(), x0}; }

    double value(const Vec2& x) const;
    Vec2 gradient(const Vec2& x) const;
};

/// Largest five-point finite-difference Laplacian of u_in over `points`, scaled by the
/// squared distance to the singularity so that it is comparable across scales.
double max_fd_laplacian(const IncidentField& incident, const std::vector<Vec2>& points);

struct TransmissionSolution {
    Eigen::VectorXd density;  // phi at the mesh nodes
    double mu = 0.0;
    double lambda = 0.0;
    MeshPtr mesh;
    IncidentField incident;
    double solve_residual = 0.0;        // ||(lambda - K') phi - g|| / ||g||
    double spectrum_distance = 0.0;     // min |lambda - spec(K')|
};

/// Caches K' and its spectrum on one mesh so that many contrasts can be solved.
class TransmissionSystem {
public:
    explicit TransmissionSystem(MeshPtr mesh);

    /// Solves (lambda - K') phi = <nu, grad u_in> with lambda = (mu + 1) / (2 (mu - 1)).
    /// Throws InputError for mu in {0, 1} or a bad incident field, ResonanceError when
    /// lambda is within 1e-8 (relative) of the discrete spectrum, NumericalError when the
    /// linear solve does not reach a relative residual of 1e-10.
    TransmissionSolution solve(double mu, const IncidentField& incident) const;

    const BoundaryOperatorMatrix& adj_double_layer() const { return kp_; }
    const SpectrumReport& spectrum() const { return spectrum_; }

private:
    MeshPtr mesh_;
    BoundaryOperatorMatrix kp_;
    SpectrumReport spectrum_;
};

TransmissionSolution solve_transmission(const MeshPtr& mesh, double mu, const IncidentField& incident);

/// Relative distance below which a contrast counts as resonant.
constexpr double kResonanceTolerance = 1e-8;

struct FieldSample {
    std::vector<double> values;
    std::vector<Vec2> gradients;
};

/// u = u_in + S phi and its gradient at points at least 3 node spacings away from the curve.
FieldSample evaluate_field(const TransmissionSolution& solution, const std::vector<Vec2>& points);

namespace reference {
FieldSample evaluate_field(const TransmissionSolution& solution, const std::vector<Vec2>& points);
}  // namespace reference

enum class Side { Interior, Exterior };

/// Boundary values of u from either side. The single layer is continuous, so both
/// sides evaluate the same expression.
Eigen::VectorXd dirichlet_trace(const TransmissionSolution& solution, Side side);

/// d_nu u on the given side of Kp's mesh for u = u_in + S phi, from the jump relations
/// d_nu S phi = (K' -/+ 1/2) phi (interior / exterior).
Eigen::VectorXd normal_derivative(const BoundaryOperatorMatrix& Kp, const Eigen::VectorXd& density,
                                  const IncidentField& incident, Side side);

/// max |mu d_nu u_- - d_nu u_+| evaluated on the refined mesh (twice the nodes) with the
/// density interpolated there.
double flux_residual(const TransmissionSolution& solution);

/// Same quantity for an arbitrary density on the solution's own mesh (phi = 0 gives the
/// no-layer control |mu - 1| max |d_nu u_in|).
double flux_residual_on_mesh(const TransmissionSolution& solution, const Eigen::VectorXd& density);

}  // namespace npspec
