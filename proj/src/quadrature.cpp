#include "npspec/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace npspec::quad {

GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged root
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

std::vector<double> legendre_values(double x, int kmax) {
    std::vector<double> p(kmax + 1);
    p[0] = 1.0;
    if (kmax >= 1) p[1] = x;
    for (int k = 1; k < kmax; ++k) p[k + 1] = ((2 * k + 1) * x * p[k] - k * p[k - 1]) / (k + 1);
    return p;
}

std::vector<double> periodic_log_weights(int n) {
    if (n < 1) throw std::invalid_argument("periodic_log_weights: n must be positive");
    const double pi = std::numbers::pi;
    std::vector<double> r(2 * n);
    for (int k = 0; k < 2 * n; ++k) {
        double sum = 0.0;
        for (int m = 1; m < n; ++m) sum += std::cos(m * k * pi / n) / m;
        r[k] = -2.0 * pi / n * sum - pi / (double(n) * n) * ((k % 2 == 0) ? 1.0 : -1.0);
    }
    return r;
}

std::vector<double> legendre_log_moments(double s, int kmax) {
    if (!(s > -1.0 && s < 1.0)) throw std::invalid_argument("legendre_log_moments: s must lie in (-1, 1)");
    // Legendre functions of the second kind on the cut, Q_0..Q_{kmax+1}.
    std::vector<double> q(kmax + 2);
    q[0] = 0.5 * std::log((1.0 + s) / (1.0 - s));
    q[1] = s * q[0] - 1.0;
    for (int n = 1; n <= kmax; ++n) q[n + 1] = ((2 * n + 1) * s * q[n] - n * q[n - 1]) / (n + 1);

    std::vector<double> m(kmax + 1);
    m[0] = (1.0 + s) * std::log(1.0 + s) + (1.0 - s) * std::log(1.0 - s) - 2.0;
    for (int k = 1; k <= kmax; ++k) m[k] = 2.0 / (2 * k + 1) * (q[k + 1] - q[k - 1]);
    return m;
}

LagrangeBasis::LagrangeBasis(std::span<const double> nodes)
    : nodes_(nodes.begin(), nodes.end()), bary_(nodes.size(), 1.0) {
    for (std::size_t j = 0; j < nodes_.size(); ++j)
        for (std::size_t k = 0; k < nodes_.size(); ++k)
            if (k != j) bary_[j] /= (nodes_[j] - nodes_[k]);
}

void LagrangeBasis::evaluate(double t, std::span<double> out) const {
    const std::size_t n = nodes_.size();
    for (std::size_t j = 0; j < n; ++j) {
        if (t == nodes_[j]) {
            for (std::size_t k = 0; k < n; ++k) out[k] = (k == j) ? 1.0 : 0.0;
            return;
        }
    }
    double denom = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = bary_[j] / (t - nodes_[j]);
        denom += out[j];
    }
    for (std::size_t j = 0; j < n; ++j) out[j] /= denom;
}

namespace {

const GaussRule& rule16() {
    static const GaussRule r = gauss_legendre(16);
    return r;
}

Eigen::VectorXd fixed_gauss(const VectorIntegrand& f, int dim, double a, double b,
                            std::vector<double>& scratch) {
    const GaussRule& g = rule16();
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(dim);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (std::size_t q = 0; q < g.nodes.size(); ++q) {
        f(mid + half * g.nodes[q], std::span<double>(scratch.data(), dim));
        for (int d = 0; d < dim; ++d) acc[d] += half * g.weights[q] * scratch[d];
    }
    return acc;
}

Eigen::VectorXd adapt(const VectorIntegrand& f, int dim, double a, double b, const Eigen::VectorXd& whole,
                      double tol, int depth, std::vector<double>& scratch) {
    const double c = 0.5 * (a + b);
    Eigen::VectorXd left = fixed_gauss(f, dim, a, c, scratch);
    Eigen::VectorXd right = fixed_gauss(f, dim, c, b, scratch);
    Eigen::VectorXd both = left + right;
    // below the rounding level of the estimate itself, further bisection only adds noise
    const double floor = 32.0 * std::numeric_limits<double>::epsilon() * both.lpNorm<Eigen::Infinity>();
    if (depth <= 0 || (both - whole).lpNorm<Eigen::Infinity>() <= std::max(tol, floor)) return both;
    return adapt(f, dim, a, c, left, tol, depth - 1, scratch) +
           adapt(f, dim, c, b, right, tol, depth - 1, scratch);
}

}  // namespace

Eigen::VectorXd integrate_adaptive(const VectorIntegrand& f, int dim, double a, double b, double tol,
                                   int max_depth) {
    std::vector<double> scratch(dim);
    Eigen::VectorXd whole = fixed_gauss(f, dim, a, b, scratch);
    return adapt(f, dim, a, b, whole, tol, max_depth, scratch);
}

}  // namespace npspec::quad
