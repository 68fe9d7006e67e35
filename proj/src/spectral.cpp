#include "npspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "npspec/errors.hpp"

namespace npspec {

std::string_view to_string(SpectrumKind kind) {
    return kind == SpectrumKind::Raw ? "raw" : "symmetrized";
}

void sort_spectrum(std::vector<std::complex<double>>& ev) {
    std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma > mb;
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
}

namespace {

SpectrumReport make_report(std::vector<std::complex<double>> ev, int n, SpectrumKind kind) {
    sort_spectrum(ev);
    SpectrumReport r;
    r.radius = ev.empty() ? 0.0 : std::abs(ev.front());
    r.eigenvalues = std::move(ev);
    r.mesh_size = n;
    r.kind = kind;
    return r;
}

/// Spectral norm of the antisymmetric part of m, by power iteration on its square.
double antisymmetric_norm(const Eigen::MatrixXd& m) {
    const Eigen::MatrixXd e = 0.5 * (m - m.transpose());
    Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(m.rows(), 1.0, 2.0).normalized();
    double estimate = 0.0;
    for (int it = 0; it < 200; ++it) {
        Eigen::VectorXd next = e.transpose() * (e * v);
        const double norm = next.norm();
        if (norm == 0.0) return 0.0;
        const double previous = estimate;
        estimate = std::sqrt(norm);
        v = next / norm;
        if (it > 5 && std::abs(estimate - previous) <= 1e-6 * estimate) break;
    }
    return estimate;
}

}  // namespace

SpectrumReport np_spectrum(const BoundaryOperatorMatrix& Kp) {
    if (Kp.kind != OperatorKind::AdjDoubleLayer) throw InputError("np_spectrum expects the adjoint double layer operator");
    const Eigen::MatrixXd a = l2_representation(Kp);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigen-solver failed on the NP matrix (N = " + std::to_string(Kp.size()) + ")");
    const auto& values = solver.eigenvalues();
    return make_report({values.data(), values.data() + values.size()}, Kp.size(), SpectrumKind::Raw);
}

SpectrumReport symmetrized_spectrum(const BoundaryOperatorMatrix& S, const BoundaryOperatorMatrix& Kp) {
    if (S.kind != OperatorKind::SingleLayer || Kp.kind != OperatorKind::AdjDoubleLayer)
        throw InputError("symmetrized_spectrum expects (single layer, adjoint double layer)");
    if (!same_mesh(S, Kp)) throw InputError("symmetrized_spectrum: operators live on different meshes");

    const QuadratureMesh& mesh = *S.mesh;
    const int n = mesh.size();
    double diameter = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            diameter = std::max(diameter, (mesh.curve.nodes[i] - mesh.curve.nodes[j]).norm());

    // Dilating Sigma by tau changes S into tau (S + log(tau)/(2pi) <., 1> 1). K' is dilation
    // invariant and the rank-one term still satisfies the symmetrization identity, so shifting
    // to a curve of diameter 1/2 (capacity <= 1/4) makes S negative definite without changing
    // the pencil's eigenvalues.
    const double shift = std::log(2.0 * diameter) / (2.0 * std::numbers::pi);
    const Eigen::Map<const Eigen::VectorXd> w(mesh.weights.data(), n);
    const Eigen::VectorXd sqw = w.cwiseSqrt();

    // L^2-orthonormal representations: s = D^{1/2} S D^{-1/2}, k = D^{1/2} K' D^{-1/2}
    Eigen::MatrixXd s = sqw.asDiagonal() * S.entries * sqw.cwiseInverse().asDiagonal();
    s -= shift * sqw * sqw.transpose();
    const Eigen::MatrixXd k = sqw.asDiagonal() * Kp.entries * sqw.cwiseInverse().asDiagonal();

    const Eigen::MatrixXd b = -0.5 * (s + s.transpose());
    const Eigen::MatrixXd bk = b * k;
    const Eigen::MatrixXd a = 0.5 * (bk + bk.transpose());
    const double asymmetry = antisymmetric_norm(bk);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> form(b);
    if (form.info() != Eigen::Success) throw NumericalError("eigen-solver failed on the single layer form");
    const Eigen::VectorXd& sigma = form.eigenvalues();
    if (sigma.minCoeff() < -asymmetry - 1e-12 * sigma.maxCoeff())
        throw NumericalError("single layer form is indefinite beyond the discretization tolerance "
                             "(smallest eigenvalue " + std::to_string(sigma.minCoeff()) + ")");

    // Keep the directions on which the form dominates the discretization asymmetry of B K';
    // a mode with form value sigma can have its Rayleigh quotient moved by up to asymmetry / sigma.
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma[i] > asymmetry && sigma[i] > 0.0) keep.push_back(i);
    if (keep.empty()) throw NumericalError("single layer form has no numerically definite subspace");

    const Eigen::Index r = static_cast<Eigen::Index>(keep.size());
    Eigen::MatrixXd basis(n, r);
    for (Eigen::Index c = 0; c < r; ++c)
        basis.col(c) = form.eigenvectors().col(keep[c]) / std::sqrt(sigma[keep[c]]);
    Eigen::MatrixXd reduced = basis.transpose() * a * basis;
    reduced = 0.5 * (reduced + reduced.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(reduced, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigen-solver failed");

    std::vector<std::complex<double>> ev;
    ev.reserve(r);
    for (Eigen::Index i = 0; i < r; ++i) ev.emplace_back(solver.eigenvalues()[i], 0.0);
    return make_report(std::move(ev), n, SpectrumKind::Symmetrized);
}

int equilibrium_index(const SpectrumReport& report) {
    if (report.eigenvalues.empty()) throw InputError("empty spectrum");
    int best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
        const double d = std::abs(report.eigenvalues[i] - 0.5);
        if (d < dist) {
            dist = d;
            best = static_cast<int>(i);
        }
    }
    return best;
}

std::vector<std::complex<double>> nontrivial_eigenvalues(const SpectrumReport& report) {
    std::vector<std::complex<double>> out = report.eigenvalues;
    out.erase(out.begin() + equilibrium_index(report));
    return out;
}

double distance_to_spectrum(const SpectrumReport& report, double lambda) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& z : report.eigenvalues) d = std::min(d, std::abs(z - lambda));
    return d;
}

double ess_radius_polygon(double omega, SobolevSpace space) {
    if (!(omega > 0.0 && omega <= std::numbers::pi))
        throw InputError("ess_radius_polygon: sharpest corner must lie in (0, pi]");
    const double dev = std::abs(std::numbers::pi - omega);
    return space == SobolevSpace::L2 ? 0.5 * std::sin(0.5 * dev) : dev / (2.0 * std::numbers::pi);
}

}  // namespace npspec
