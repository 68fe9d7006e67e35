#include "npspec/contrast.hpp"

#include <cmath>
#include <numbers>

#include "npspec/errors.hpp"

namespace npspec {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(double x, const char* name) {
    if (!std::isfinite(x)) throw InputError(std::string(name) + " must be finite");
}

void require_open_angle(double omega, const char* name) {
    require_finite(omega, name);
    if (!(omega > 0.0 && omega < kPi))
        throw InputError(std::string(name) + " must lie in (0, pi)");
}

}  // namespace

double mu_to_lambda(double mu) {
    require_finite(mu, "mu");
    if (mu == 1.0) throw InputError("mu = 1 has no spectral parameter");
    return (mu + 1.0) / (2.0 * (mu - 1.0));
}

double lambda_to_mu(double lambda) {
    require_finite(lambda, "lambda");
    if (lambda == 0.5) throw InputError("lambda = 1/2 corresponds to infinite contrast");
    return (2.0 * lambda + 1.0) / (2.0 * lambda - 1.0);
}

Interval critical_interval(double r) {
    require_finite(r, "r");
    if (r < 0.0) throw InputError("radius must be nonnegative");
    if (r >= 0.5) throw InputError("radius >= 1/2 gives an unbounded critical set");
    const double t = 2.0 * r;
    return {-(1.0 + t) / (1.0 - t), -(1.0 - t) / (1.0 + t)};
}

double corner_bound_a(double omega) {
    const double t = std::tan(omega / 4.0);
    return t * t;
}

double corner_bound_b(double omega) {
    const double d = std::abs(kPi - omega);
    return (kPi - d) / (kPi + d);
}

PolygonIntervals polygon_intervals(double omega) {
    require_open_angle(omega, "omega");
    const double a = corner_bound_a(omega);
    const double b = corner_bound_b(omega);
    return {{-1.0 / a, -a}, {-1.0 / b, -b}};
}

std::vector<AtlasRow> contrast_atlas(double start, double end, int steps) {
    if (steps < 1) throw InputError("atlas grid is empty");
    require_open_angle(start, "grid start");
    require_open_angle(end, "grid end");
    if (steps > 1 && !(end > start)) throw InputError("atlas grid end must exceed its start");
    std::vector<AtlasRow> rows;
    rows.reserve(steps);
    for (int k = 0; k < steps; ++k) {
        const double omega = steps == 1 ? start : start + (end - start) * k / (steps - 1);
        rows.push_back({omega, corner_bound_a(omega), corner_bound_b(omega), polygon_intervals(omega)});
    }
    return rows;
}

namespace {

ContrastVerdict base(const Geometry& g, double mu, Regularity s) {
    ContrastVerdict v;
    v.mu = mu;
    v.s = s;
    v.geometry = g;
    return v;
}

// mu > 0: the bound r(K') <= 1/2 alone keeps lambda off the spectrum in both spaces.
void apply_sign_definite(ContrastVerdict& v) {
    v.verdict = Verdict::SelfAdjoint;
    v.theorem = "sign-definite";
    v.note = "A(3/2) = A(1)";
}

ContrastVerdict verdict_sign_definite(ContrastVerdict v) {
    if (v.mu > 0.0) {
        apply_sign_definite(v);
        if (v.mu == 1.0) v.note = "trivial case, coincides with Dirichlet Laplacian";
        return v;
    }
    v.verdict = Verdict::Unknown;
    v.theorem = "sign-definite";
    v.note = "sign-definite result requires mu > 0";
    return v;
}

ContrastVerdict verdict_smooth(ContrastVerdict v) {
    v.interval = Interval{-1.0, -1.0};
    v.theorem = "no-corners";
    if (v.mu == -1.0) {
        v.verdict = Verdict::ExcludedValue;
        v.note = "lambda = 0 lies in the essential spectrum";
        return v;
    }
    if (v.s == Regularity::ThreeHalves) {
        v.verdict = Verdict::SelfAdjoint;
        return v;
    }
    if (v.mu > 0.0) {
        apply_sign_definite(v);
        v.interval = Interval{-1.0, -1.0};
        return v;
    }
    v.verdict = Verdict::Unknown;
    v.note = "no-corners result is stated for s = 3/2 only";
    return v;
}

ContrastVerdict verdict_polygon(ContrastVerdict v) {
    const double omega = v.geometry.angle;
    require_open_angle(omega, "omega");
    const PolygonIntervals iv = polygon_intervals(omega);
    const Interval I = v.s == Regularity::ThreeHalves ? iv.s32 : iv.s1;
    v.interval = I;
    v.theorem = "polygon-corner";
    v.verdict = I.contains(v.mu) ? Verdict::InsideCriticalInterval : Verdict::SelfAdjoint;
    return v;
}

ContrastVerdict verdict_cone(ContrastVerdict v) {
    const double alpha = v.geometry.angle;
    require_open_angle(alpha, "alpha");
    if (v.mu > 0.0) {
        apply_sign_definite(v);
        return v;
    }
    v.theorem = "conical-point";
    v.verdict = Verdict::Unknown;
    if (v.s != Regularity::One) {
        v.note = "conical result is stated for s = 1 only";
        return v;
    }
    if (alpha == kPi / 2.0) {
        v.note = "alpha = pi/2 is not covered";
        return v;
    }
    if (v.mu == -1.0) {
        v.note = "conical conditions are strict at mu = -1";
        return v;
    }
    const bool acute = alpha < kPi / 2.0;
    if (acute ? v.mu > -1.0 : v.mu < -1.0) {
        v.verdict = Verdict::SelfAdjoint;
    } else {
        v.note = acute ? "acute cone covers mu > -1 only" : "obtuse cone covers mu < -1 only";
    }
    return v;
}

}  // namespace

ContrastVerdict verdict(const Geometry& geometry, double mu, Regularity s) {
    require_finite(mu, "mu");
    ContrastVerdict v = base(geometry, mu, s);
    if (mu == 0.0) {
        v.verdict = Verdict::ExcludedValue;
        v.note = "mu = 0 makes the coefficient degenerate";
        return v;
    }
    if (mu == 1.0 && geometry.kind != GeometryClass::SignDefinite) {
        if (geometry.kind == GeometryClass::Polygon) require_open_angle(geometry.angle, "omega");
        if (geometry.kind == GeometryClass::Cone) require_open_angle(geometry.angle, "alpha");
        v.verdict = Verdict::ExcludedValue;
        v.note = "trivial case, coincides with Dirichlet Laplacian";
        return v;
    }
    switch (geometry.kind) {
        case GeometryClass::SignDefinite: return verdict_sign_definite(v);
        case GeometryClass::SmoothVMO: return verdict_smooth(v);
        case GeometryClass::Polygon: return verdict_polygon(v);
        case GeometryClass::Cone: return verdict_cone(v);
    }
    throw InputError("unknown geometry class");
}

Regularity parse_regularity(std::string_view text) {
    if (text == "1" || text == "1.0") return Regularity::One;
    if (text == "1.5" || text == "3/2") return Regularity::ThreeHalves;
    throw InputError("regularity must be 1 or 3/2, got '" + std::string(text) + "'");
}

double regularity_value(Regularity s) { return s == Regularity::One ? 1.0 : 1.5; }

std::string_view to_string(GeometryClass kind) {
    switch (kind) {
        case GeometryClass::SignDefinite: return "sign-definite";
        case GeometryClass::SmoothVMO: return "smooth";
        case GeometryClass::Polygon: return "polygon";
        case GeometryClass::Cone: return "cone";
    }
    return "?";
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::SelfAdjoint: return "SelfAdjoint";
        case Verdict::InsideCriticalInterval: return "InsideCriticalInterval";
        case Verdict::ExcludedValue: return "ExcludedValue";
        case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

GeometryClass parse_geometry_class(std::string_view text) {
    if (text == "sign-definite") return GeometryClass::SignDefinite;
    if (text == "smooth" || text == "vmo" || text == "smooth-vmo") return GeometryClass::SmoothVMO;
    if (text == "polygon") return GeometryClass::Polygon;
    if (text == "cone") return GeometryClass::Cone;
    throw InputError("unknown geometry class '" + std::string(text) + "'");
}

}  // namespace npspec
