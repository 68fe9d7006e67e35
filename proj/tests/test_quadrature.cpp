#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "npspec/quadrature.hpp"
#include "oracles.hpp"

using namespace npspec;

TEST_CASE("gauss-legendre integrates polynomials of degree 2n-1 exactly") {
    for (int n : {1, 2, 5, 8, 16, 24}) {
        const quad::GaussRule g = quad::gauss_legendre(n);
        REQUIRE(g.nodes.size() == static_cast<size_t>(n));
        for (int p = 0; p <= 2 * n - 1; ++p) {
            double sum = 0.0;
            for (int i = 0; i < n; ++i) sum += g.weights[i] * std::pow(g.nodes[i], p);
            const double exact = p % 2 == 1 ? 0.0 : 2.0 / (p + 1);
            CHECK(sum == doctest::Approx(exact).epsilon(1e-13));
        }
    }
}

TEST_CASE("gauss-legendre nodes are symmetric with positive weights") {
    const quad::GaussRule g = quad::gauss_legendre(11);
    for (int i = 0; i < 11; ++i) {
        CHECK(g.weights[i] > 0.0);
        CHECK(g.nodes[i] == doctest::Approx(-g.nodes[10 - i]).epsilon(1e-15));
    }
}

TEST_CASE("legendre values match the recurrence oracle") {
    for (double x : {-0.93, -0.2, 0.0, 0.41, 1.0}) {
        const auto mine = quad::legendre_values(x, 12);
        const auto ref = oracle::legendre(x, 12);
        for (int k = 0; k <= 12; ++k) CHECK(mine[k] == doctest::Approx(ref[k]).epsilon(1e-14));
    }
}

TEST_CASE("legendre log moments agree with double-exponential quadrature") {
    for (double s : {-0.97, -0.5, -0.013, 0.0, 0.3, 0.8, 0.999}) {
        const auto m = quad::legendre_log_moments(s, 15);
        for (int k = 0; k <= 15; ++k) {
            INFO("s = " << s << ", k = " << k);
            CHECK(std::abs(m[k] - oracle::legendre_log_moment(s, k)) < 1e-12);
        }
    }
    CHECK_THROWS(quad::legendre_log_moments(1.0, 3));
}

TEST_CASE("periodic log weights reproduce the Fourier coefficients of log(4 sin^2)") {
    // int_0^{2pi} log(4 sin^2(t/2)) cos(k t) dt = -2pi/k (k >= 1), 0 (k = 0)
    const int n = 16;
    const auto r = quad::periodic_log_weights(n);
    REQUIRE(r.size() == 2 * n);
    for (int k = 0; k < n; ++k) {
        double sum = 0.0;
        for (int j = 0; j < 2 * n; ++j) sum += r[(2 * n - j) % (2 * n)] * std::cos(k * oracle::pi * j / n);
        const double exact = k == 0 ? 0.0 : -2.0 * oracle::pi / k;
        CHECK(sum == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
    }
}

TEST_CASE("lagrange basis reproduces polynomials and sums to one") {
    const quad::GaussRule g = quad::gauss_legendre(7);
    const quad::LagrangeBasis basis(g.nodes);
    std::vector<double> l(7);
    for (double t : {-1.0, -0.31, 0.0, 0.77, g.nodes[3]}) {
        basis.evaluate(t, l);
        double one = 0.0, cubic = 0.0;
        for (int j = 0; j < 7; ++j) {
            one += l[j];
            cubic += l[j] * (g.nodes[j] * g.nodes[j] * g.nodes[j] - 2.0 * g.nodes[j]);
        }
        CHECK(one == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(cubic == doctest::Approx(t * t * t - 2.0 * t).epsilon(1e-13).scale(1.0));
    }
}

TEST_CASE("adaptive integration handles vector integrands with a log endpoint") {
    const Eigen::VectorXd v = quad::integrate_adaptive(
        [](double t, std::span<double> out) {
            out[0] = std::cos(t);
            out[1] = std::log(t);
        },
        2, 0.0, 1.0, 1e-14);
    CHECK(v[0] == doctest::Approx(std::sin(1.0)).epsilon(1e-14));
    CHECK(v[1] == doctest::Approx(-1.0).epsilon(1e-10));
}
