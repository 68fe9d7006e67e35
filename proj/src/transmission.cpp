#include "npspec/transmission.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "kernels.hpp"
#include "npspec/contrast.hpp"
#include "npspec/errors.hpp"

namespace npspec {

using Eigen::VectorXd;

double IncidentField::value(const Vec2& x) const {
    if (kind == Kind::Linear) return direction.dot(x);
    return detail::single_layer_kernel(x, source);
}

Vec2 IncidentField::gradient(const Vec2& x) const {
    if (kind == Kind::Linear) return direction;
    const Vec2 r = x - source;
    return detail::kInvTwoPi * r / r.squaredNorm();
}

double max_fd_laplacian(const IncidentField& incident, const std::vector<Vec2>& points) {
    double worst = 0.0;
    for (const Vec2& x : points) {
        const double scale = incident.kind == IncidentField::Kind::Linear
                                 ? std::max(1.0, x.norm())
                                 : (x - incident.source).norm();
        const double h = 1e-3 * scale;
        const Vec2 ex(h, 0.0), ey(0.0, h);
        const double lap = (incident.value(x + ex) + incident.value(x - ex) + incident.value(x + ey) +
                            incident.value(x - ey) - 4.0 * incident.value(x)) /
                           (h * h);
        worst = std::max(worst, std::abs(lap) * scale * scale);
    }
    return worst;
}

namespace {

VectorXd neumann_data(const QuadratureMesh& mesh, const IncidentField& incident) {
    const int n = mesh.size();
    VectorXd g(n);
    for (int i = 0; i < n; ++i) g[i] = mesh.curve.normals[i].dot(incident.gradient(mesh.curve.nodes[i]));
    return g;
}

void validate_incident(const QuadratureMesh& mesh, const IncidentField& incident) {
    if (incident.kind == IncidentField::Kind::Linear) {
        if (!incident.direction.allFinite() || incident.direction.norm() == 0.0)
            throw InputError("linear incident field needs a finite nonzero direction");
    } else {
        if (!incident.source.allFinite()) throw InputError("point source must be finite");
        if (encloses(mesh, incident.source)) throw InputError("point source must lie outside the curve");
        for (int j = 0; j < mesh.size(); ++j)
            if ((incident.source - mesh.curve.nodes[j]).norm() < 3.0 * mesh.local_spacing(j))
                throw InputError("point source is too close to the curve");
    }
    if (max_fd_laplacian(incident, mesh.curve.nodes) > 1e-6)
        throw InputError("incident field is not harmonic near the curve");
}

void check_evaluation_point(const QuadratureMesh& mesh, const Vec2& x) {
    if (!x.allFinite()) throw InputError("evaluation point must be finite");
    for (int j = 0; j < mesh.size(); ++j) {
        if ((x - mesh.curve.nodes[j]).norm() < 3.0 * mesh.local_spacing(j))
            throw InputError("evaluation point (" + std::to_string(x.x()) + ", " + std::to_string(x.y()) +
                             ") is closer than 3 node spacings to the curve");
    }
}

void sample_point(const TransmissionSolution& sol, const Vec2& x, double& u, Vec2& grad) {
    const QuadratureMesh& mesh = *sol.mesh;
    double s = 0.0;
    Vec2 gs = Vec2::Zero();
    for (int j = 0; j < mesh.size(); ++j) {
        const Vec2 r = x - mesh.curve.nodes[j];
        const double r2 = r.squaredNorm();
        const double wphi = mesh.weights[j] * sol.density[j];
        s += wphi * 0.5 * std::log(r2);
        gs += (wphi / r2) * r;
    }
    u = sol.incident.value(x) + detail::kInvTwoPi * s;
    grad = sol.incident.gradient(x) + detail::kInvTwoPi * gs;
}

}  // namespace

TransmissionSystem::TransmissionSystem(MeshPtr mesh)
    : mesh_(std::move(mesh)), kp_(assemble_adj_double_layer(mesh_)), spectrum_(np_spectrum(kp_)) {}

TransmissionSolution TransmissionSystem::solve(double mu, const IncidentField& incident) const {
    if (!std::isfinite(mu)) throw InputError("mu must be finite");
    if (mu == 0.0) throw InputError("mu = 0 is excluded");
    if (mu == 1.0) throw InputError("mu = 1 is the trivial case without an interface");
    validate_incident(*mesh_, incident);

    TransmissionSolution sol;
    sol.mu = mu;
    sol.lambda = mu_to_lambda(mu);
    sol.mesh = mesh_;
    sol.incident = incident;
    sol.spectrum_distance = distance_to_spectrum(spectrum_, sol.lambda);
    if (sol.spectrum_distance < kResonanceTolerance * std::max(1.0, std::abs(sol.lambda))) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "lambda = %.6g (mu = %.6g) is within %.3g of the discrete spectrum",
                      sol.lambda, mu, sol.spectrum_distance);
        throw ResonanceError(msg, sol.spectrum_distance);
    }

    const int n = mesh_->size();
    Eigen::MatrixXd a = -kp_.entries;
    a.diagonal().array() += sol.lambda;
    const VectorXd g = neumann_data(*mesh_, incident);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    sol.density = lu.solve(g);
    const double gnorm = g.norm();
    sol.solve_residual = gnorm > 0.0 ? (a * sol.density - g).norm() / gnorm : (a * sol.density).norm();
    if (!sol.density.allFinite() || sol.solve_residual > 1e-10)
        throw NumericalError("transmission solve residual " + std::to_string(sol.solve_residual) +
                             " exceeds 1e-10 (N = " + std::to_string(n) + ")");
    return sol;
}

TransmissionSolution solve_transmission(const MeshPtr& mesh, double mu, const IncidentField& incident) {
    if (!mesh) throw InputError("null mesh");
    return TransmissionSystem(mesh).solve(mu, incident);
}

FieldSample evaluate_field(const TransmissionSolution& solution, const std::vector<Vec2>& points) {
    const QuadratureMesh& mesh = *solution.mesh;
    for (const Vec2& x : points) check_evaluation_point(mesh, x);
    const int m = static_cast<int>(points.size());
    FieldSample out;
    out.values.resize(m);
    out.gradients.resize(m);
#pragma omp parallel for schedule(static)
    for (int p = 0; p < m; ++p) sample_point(solution, points[p], out.values[p], out.gradients[p]);
    return out;
}

namespace reference {

FieldSample evaluate_field(const TransmissionSolution& solution, const std::vector<Vec2>& points) {
    const QuadratureMesh& mesh = *solution.mesh;
    FieldSample out;
    for (const Vec2& x : points) {
        check_evaluation_point(mesh, x);
        double u = solution.incident.value(x);
        Vec2 grad = solution.incident.gradient(x);
        for (int j = 0; j < mesh.size(); ++j) {
            const Vec2& y = mesh.curve.nodes[j];
            const double w = mesh.weights[j] * solution.density[j];
            u += w * detail::single_layer_kernel(x, y);
            grad += w * detail::kInvTwoPi * (x - y) / (x - y).squaredNorm();
        }
        out.values.push_back(u);
        out.gradients.push_back(grad);
    }
    return out;
}

}  // namespace reference

Eigen::VectorXd dirichlet_trace(const TransmissionSolution& solution, Side) {
    const QuadratureMesh& mesh = *solution.mesh;
    VectorXd trace = assemble_single_layer(solution.mesh).entries * solution.density;
    for (int i = 0; i < mesh.size(); ++i) trace[i] += solution.incident.value(mesh.curve.nodes[i]);
    return trace;
}

Eigen::VectorXd normal_derivative(const BoundaryOperatorMatrix& Kp, const Eigen::VectorXd& density,
                                  const IncidentField& incident, Side side) {
    if (Kp.kind != OperatorKind::AdjDoubleLayer) throw InputError("normal_derivative needs K'");
    if (density.size() != Kp.size()) throw InputError("density size does not match the mesh");
    const double jump = side == Side::Interior ? -0.5 : 0.5;
    return neumann_data(*Kp.mesh, incident) + Kp.entries * density + jump * density;
}

namespace {

double flux_mismatch(const BoundaryOperatorMatrix& Kp, const VectorXd& density, const IncidentField& incident,
                     double mu) {
    const VectorXd inner = normal_derivative(Kp, density, incident, Side::Interior);
    const VectorXd outer = normal_derivative(Kp, density, incident, Side::Exterior);
    return (mu * inner - outer).lpNorm<Eigen::Infinity>();
}

}  // namespace

double flux_residual(const TransmissionSolution& solution) {
    const MeshPtr fine = refine_mesh(*solution.mesh);
    const VectorXd density = interpolate_to_refined(*solution.mesh, *fine, solution.density);
    return flux_mismatch(assemble_adj_double_layer(fine), density, solution.incident, solution.mu);
}

double flux_residual_on_mesh(const TransmissionSolution& solution, const Eigen::VectorXd& density) {
    return flux_mismatch(assemble_adj_double_layer(solution.mesh), density, solution.incident, solution.mu);
}

}  // namespace npspec
