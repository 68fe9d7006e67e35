#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <optional>

#include "npspec/contrast.hpp"
#include "npspec/errors.hpp"
#include "npspec/spectral.hpp"
#include "oracles.hpp"

using namespace npspec;
using oracle::pi;

TEST_CASE("contrast to spectral parameter") {
    CHECK(mu_to_lambda(-1.0) == 0.0);
    CHECK(mu_to_lambda(3.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mu_to_lambda(-3.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(mu_to_lambda(1.0), InputError);

    CHECK(lambda_to_mu(0.0) == -1.0);
    CHECK(lambda_to_mu(1.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(lambda_to_mu(-0.5) == 0.0);
    CHECK_THROWS_AS(lambda_to_mu(0.5), InputError);
}

TEST_CASE("round trip mu -> lambda -> mu on [-100, 100]") {
    for (int i = 0; i <= 20000; ++i) {
        const double mu = -100.0 + 200.0 * i / 20000.0 + 1e-3;
        if (mu == 1.0) continue;
        CHECK(std::abs(lambda_to_mu(mu_to_lambda(mu)) - mu) <= 1e-13 * std::max(1.0, std::abs(mu)));
    }
}

TEST_CASE("lambda is monotone on each branch") {
    double prev = mu_to_lambda(-100.0);
    for (double mu = -99.9; mu < 0.999; mu += 0.1) {
        const double l = mu_to_lambda(mu);
        CHECK(l < prev);
        prev = l;
    }
    prev = mu_to_lambda(1.001);
    for (double mu = 1.1; mu < 100.0; mu += 0.1) {
        const double l = mu_to_lambda(mu);
        CHECK(l < prev);
        prev = l;
    }
}

TEST_CASE("critical interval endpoints") {
    const Interval i0 = critical_interval(0.0);
    CHECK(i0.lo == -1.0);
    CHECK(i0.hi == -1.0);
    const Interval i4 = critical_interval(0.25);
    CHECK(i4.lo == doctest::Approx(-3.0).epsilon(1e-15));
    CHECK(i4.hi == doctest::Approx(-1.0 / 3).epsilon(1e-15));
    const double r = std::sqrt(2.0) / 4;
    const Interval sq = critical_interval(r);
    CHECK(std::abs(sq.lo + 5.8284) < 1e-4);
    CHECK(std::abs(sq.hi + 0.17157) < 1e-5);
    CHECK(sq.hi == doctest::Approx(-(3 - 2 * std::sqrt(2.0))).epsilon(1e-14));
    CHECK_THROWS_AS(critical_interval(0.5), InputError);
    CHECK_THROWS_AS(critical_interval(-0.1), InputError);
}

TEST_CASE("interval membership is |lambda| <= r") {
    for (int ri = 0; ri < 50; ++ri) {
        const double r = 0.499 * ri / 49.0;
        const Interval I = critical_interval(r);
        CHECK(I.lo <= -1.0);
        CHECK(-1.0 <= I.hi);
        CHECK(I.hi < 0.0);
        CHECK(std::abs(I.lo * I.hi - 1.0) <= 1e-12);
        for (int k = 0; k < 400; ++k) {
            const double mu = -20.0 + 40.0 * k / 399.0;
            if (mu == 1.0) continue;
            const double lam = std::abs(mu_to_lambda(mu));
            // skip samples within rounding of an endpoint
            if (std::abs(lam - r) < 1e-12) continue;
            CHECK(I.contains(mu) == (lam <= r));
        }
    }
}

TEST_CASE("polygon intervals at a right angle") {
    const PolygonIntervals p = polygon_intervals(pi / 2);
    const double a = 3 - 2 * std::sqrt(2.0);
    CHECK(corner_bound_a(pi / 2) == doctest::Approx(0.171573).epsilon(1e-6));
    CHECK(std::abs(p.s32.lo + 1 / a) < 1e-12);
    CHECK(std::abs(p.s32.hi + a) < 1e-12);
    CHECK(std::abs(p.s32.lo + 5.828427) < 1e-6);
    CHECK(corner_bound_b(pi / 2) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(std::abs(p.s1.lo + 3.0) < 1e-12);
    CHECK(std::abs(p.s1.hi + 1.0 / 3) < 1e-12);
    CHECK_THROWS_AS(polygon_intervals(0.0), InputError);
    CHECK_THROWS_AS(polygon_intervals(pi), InputError);
}

TEST_CASE("polygon intervals shrink to {-1} as the corner flattens") {
    const PolygonIntervals p = polygon_intervals(pi - 1e-9);
    CHECK(std::abs(p.s32.lo + 1) < 1e-8);
    CHECK(std::abs(p.s32.hi + 1) < 1e-8);
    CHECK(std::abs(p.s1.lo + 1) < 1e-8);
    CHECK(std::abs(p.s1.hi + 1) < 1e-8);
}

TEST_CASE("corner bounds on a 10^4-point grid") {
    for (int k = 1; k <= 10000; ++k) {
        const double w = pi * k / 10001.0;
        const double a = corner_bound_a(w), b = corner_bound_b(w);
        CHECK(a <= b);
        CHECK(std::abs(a - (1 - std::cos(w / 2)) / (1 + std::cos(w / 2))) <= 1e-14);
        const PolygonIntervals p = polygon_intervals(w);
        // the s = 3/2 interval contains the s = 1 interval
        CHECK(p.s32.lo <= p.s1.lo);
        CHECK(p.s1.hi <= p.s32.hi);
        const Interval l2 = critical_interval(ess_radius_polygon(w, SobolevSpace::L2));
        const Interval hm = critical_interval(ess_radius_polygon(w, SobolevSpace::HMinusHalf));
        // lo = 1/hi; the reciprocal is the well-conditioned coordinate as omega -> 0
        CHECK(std::abs(1 / p.s32.lo - 1 / l2.lo) <= 1e-12);
        CHECK(std::abs(p.s32.hi - l2.hi) <= 1e-12);
        CHECK(std::abs(1 / p.s1.lo - 1 / hm.lo) <= 1e-12);
        CHECK(std::abs(p.s1.hi - hm.hi) <= 1e-12);
        if (w >= 0.05) CHECK(std::abs(p.s32.lo - l2.lo) <= 1e-12 * std::abs(l2.lo));
    }
}

TEST_CASE("atlas grid") {
    const auto rows = contrast_atlas(0.05, pi - 0.05, 500);
    REQUIRE(rows.size() == 500);
    CHECK(rows.front().omega == 0.05);
    CHECK(rows.back().omega == doctest::Approx(pi - 0.05).epsilon(1e-15));
    for (size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].a > rows[i - 1].a);
        CHECK(rows[i].b > rows[i - 1].b);
    }
    CHECK_THROWS_AS(contrast_atlas(0.1, 1.0, 0), InputError);
    CHECK_THROWS_AS(contrast_atlas(0.0, 1.0, 10), InputError);
    CHECK_THROWS_AS(contrast_atlas(1.0, 0.5, 10), InputError);
}

namespace {

struct Case {
    Geometry g;
    double mu;
    Regularity s;
    Verdict expect;
    const char* theorem;  // nullptr: no result applies
    std::optional<Interval> interval = std::nullopt;
};

}  // namespace

TEST_CASE("verdict table") {
    const Regularity S1 = Regularity::One, S32 = Regularity::ThreeHalves;
    const double a = 3 - 2 * std::sqrt(2.0);
    const Interval sq32{-1 / a, -a}, sq1{-3.0, -1.0 / 3};
    const Case cases[] = {
        {Geometry::sign_definite(), 5.0, S32, Verdict::SelfAdjoint, "sign-definite"},
        {Geometry::sign_definite(), 5.0, S1, Verdict::SelfAdjoint, "sign-definite"},
        {Geometry::sign_definite(), 1.0, S32, Verdict::SelfAdjoint, "sign-definite"},
        {Geometry::sign_definite(), 0.0, S32, Verdict::ExcludedValue, nullptr},
        {Geometry::sign_definite(), -2.0, S32, Verdict::Unknown, "sign-definite"},
        {Geometry::smooth(), -2.0, S32, Verdict::SelfAdjoint, "no-corners", Interval{-1, -1}},
        {Geometry::smooth(), -0.5, S32, Verdict::SelfAdjoint, "no-corners", Interval{-1, -1}},
        {Geometry::smooth(), -1.0, S32, Verdict::ExcludedValue, "no-corners", Interval{-1, -1}},
        {Geometry::smooth(), -1.0, S1, Verdict::ExcludedValue, "no-corners", Interval{-1, -1}},
        {Geometry::smooth(), 0.0, S32, Verdict::ExcludedValue, nullptr},
        {Geometry::smooth(), 1.0, S32, Verdict::ExcludedValue, nullptr},
        {Geometry::smooth(), 4.0, S1, Verdict::SelfAdjoint, "sign-definite", Interval{-1, -1}},
        {Geometry::smooth(), -4.0, S1, Verdict::Unknown, "no-corners", Interval{-1, -1}},
        {Geometry::polygon(pi / 2), -10.0, S32, Verdict::SelfAdjoint, "polygon-corner", sq32},
        {Geometry::polygon(pi / 2), -2.0, S32, Verdict::InsideCriticalInterval, "polygon-corner", sq32},
        {Geometry::polygon(pi / 2), -2.0, S1, Verdict::InsideCriticalInterval, "polygon-corner", sq1},
        {Geometry::polygon(pi / 2), -4.0, S1, Verdict::SelfAdjoint, "polygon-corner", sq1},
        {Geometry::polygon(pi / 2), -4.0, S32, Verdict::InsideCriticalInterval, "polygon-corner", sq32},
        {Geometry::polygon(pi / 2), -3.0, S1, Verdict::InsideCriticalInterval, "polygon-corner", sq1},
        {Geometry::polygon(pi / 2), -1.0 / 3, S1, Verdict::InsideCriticalInterval, "polygon-corner", sq1},
        {Geometry::polygon(pi / 2), -1.0, S1, Verdict::InsideCriticalInterval, "polygon-corner", sq1},
        {Geometry::polygon(pi / 2), -0.1, S1, Verdict::SelfAdjoint, "polygon-corner", sq1},
        {Geometry::polygon(pi / 2), 2.0, S32, Verdict::SelfAdjoint, "polygon-corner", sq32},
        {Geometry::polygon(pi / 2), 1.0, S32, Verdict::ExcludedValue, nullptr},
        {Geometry::polygon(pi / 2), 0.0, S1, Verdict::ExcludedValue, nullptr},
        {Geometry::cone(pi / 4), -0.5, S1, Verdict::SelfAdjoint, "conical-point"},
        {Geometry::cone(pi / 4), -2.0, S1, Verdict::Unknown, "conical-point"},
        {Geometry::cone(pi / 4), -1.0, S1, Verdict::Unknown, "conical-point"},
        {Geometry::cone(3 * pi / 4), -2.0, S1, Verdict::SelfAdjoint, "conical-point"},
        {Geometry::cone(3 * pi / 4), -0.5, S1, Verdict::Unknown, "conical-point"},
        {Geometry::cone(3 * pi / 4), -1.0, S1, Verdict::Unknown, "conical-point"},
        {Geometry::cone(pi / 2), -0.5, S1, Verdict::Unknown, "conical-point"},
        {Geometry::cone(pi / 2), -2.0, S1, Verdict::Unknown, "conical-point"},
        {Geometry::cone(pi / 4), -0.5, S32, Verdict::Unknown, "conical-point"},
        {Geometry::cone(3 * pi / 4), 2.0, S1, Verdict::SelfAdjoint, "sign-definite"},
        {Geometry::cone(pi / 4), 1.0, S1, Verdict::ExcludedValue, nullptr},
        {Geometry::cone(pi / 4), 0.0, S1, Verdict::ExcludedValue, nullptr},
    };
    static_assert(std::size(cases) >= 20);
    for (const Case& c : cases) {
        const ContrastVerdict v = verdict(c.g, c.mu, c.s);
        INFO("class " << to_string(c.g.kind) << ", angle " << c.g.angle << ", mu " << c.mu << ", s "
                      << regularity_value(c.s) << " -> " << to_string(v.verdict) << " (" << v.theorem << ")");
        CHECK(v.verdict == c.expect);
        if (c.theorem) CHECK(v.theorem == c.theorem);
        CHECK(v.interval.has_value() == c.interval.has_value());
        if (v.interval && c.interval) {
            CHECK(std::abs(v.interval->lo - c.interval->lo) < 1e-12 * std::abs(c.interval->lo));
            CHECK(std::abs(v.interval->hi - c.interval->hi) < 1e-12);
        }
        CHECK(v.mu == c.mu);
        CHECK(v.s == c.s);
    }
}

TEST_CASE("verdicts at interval endpoints are inside") {
    for (double w : {0.3, pi / 3, pi / 2, 2.5}) {
        const PolygonIntervals p = polygon_intervals(w);
        for (auto [I, s] : {std::pair{p.s32, Regularity::ThreeHalves}, std::pair{p.s1, Regularity::One}}) {
            CHECK(verdict(Geometry::polygon(w), I.lo, s).verdict == Verdict::InsideCriticalInterval);
            CHECK(verdict(Geometry::polygon(w), I.hi, s).verdict == Verdict::InsideCriticalInterval);
            CHECK(verdict(Geometry::polygon(w), std::nextafter(I.lo, -INFINITY), s).verdict == Verdict::SelfAdjoint);
            CHECK(verdict(Geometry::polygon(w), std::nextafter(I.hi, 0.0), s).verdict == Verdict::SelfAdjoint);
        }
    }
}

TEST_CASE("excluded values carry notes") {
    const ContrastVerdict v = verdict(Geometry::polygon(1.0), 1.0, Regularity::One);
    CHECK(v.verdict == Verdict::ExcludedValue);
    CHECK(v.note.find("Dirichlet Laplacian") != std::string::npos);
}

TEST_CASE("verdict input checks") {
    CHECK_THROWS_AS(verdict(Geometry::polygon(0.0), -2.0, Regularity::One), InputError);
    CHECK_THROWS_AS(verdict(Geometry::polygon(pi), -2.0, Regularity::One), InputError);
    CHECK_THROWS_AS(verdict(Geometry::cone(pi), -2.0, Regularity::One), InputError);
    CHECK_THROWS_AS(verdict(Geometry::smooth(), NAN, Regularity::One), InputError);
    CHECK(parse_regularity("1") == Regularity::One);
    CHECK(parse_regularity("1.5") == Regularity::ThreeHalves);
    CHECK(parse_regularity("3/2") == Regularity::ThreeHalves);
    CHECK_THROWS_AS(parse_regularity("2"), InputError);
    CHECK(parse_geometry_class("polygon") == GeometryClass::Polygon);
    CHECK_THROWS_AS(parse_geometry_class("sphere"), InputError);
}
