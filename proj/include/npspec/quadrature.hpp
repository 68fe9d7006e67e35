#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace npspec::quad {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

/// Legendre polynomials P_0..P_kmax at x.
std::vector<double> legendre_values(double x, int kmax);

/// Weights R_k, k = 0..2n-1, of the periodic log-quadrature
///   int_0^{2pi} log(4 sin^2((t - s)/2)) f(s) ds  ~  sum_j R_{(i-j) mod 2n} f(s_j)
/// on the equispaced grid s_j = pi j / n, evaluated at t = s_i.
std::vector<double> periodic_log_weights(int n);

/// int_{-1}^{1} log|t - s| P_k(t) dt for k = 0..kmax and s in (-1, 1).
std::vector<double> legendre_log_moments(double s, int kmax);

/// Barycentric Lagrange interpolation on a fixed node set.
class LagrangeBasis {
public:
    explicit LagrangeBasis(std::span<const double> nodes);

    int size() const { return static_cast<int>(nodes_.size()); }

    /// Values of all basis polynomials at t.
    void evaluate(double t, std::span<double> out) const;

private:
    std::vector<double> nodes_;
    std::vector<double> bary_;
};

/// Adaptive Gauss-Legendre integration of a vector-valued integrand over [a, b].
/// The integrand writes `out.size()` values for each abscissa; intervals are
/// bisected until the 16-point estimate agrees with its two halves to `tol`
/// (absolute, max-norm) or `max_depth` is reached.
using VectorIntegrand = std::function<void(double t, std::span<double> out)>;

Eigen::VectorXd integrate_adaptive(const VectorIntegrand& f, int dim, double a, double b,
                                   double tol = 1e-14, int max_depth = 40);

}  // namespace npspec::quad
