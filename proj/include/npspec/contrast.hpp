#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace npspec {

/// Contrast mu -> spectral parameter lambda = (mu + 1) / (2 (mu - 1)).
double mu_to_lambda(double mu);
/// Inverse map, mu = (2 lambda + 1) / (2 lambda - 1).
double lambda_to_mu(double lambda);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Closed set of contrasts with |lambda(mu)| <= r, for 0 <= r < 1/2.
Interval critical_interval(double r);

/// a(omega) = tan^2(omega / 4).
double corner_bound_a(double omega);
/// b(omega) = (pi - |pi - omega|) / (pi + |pi - omega|).
double corner_bound_b(double omega);

struct PolygonIntervals {
    Interval s32;  // regularity 3/2: [-1/a, -a]
    Interval s1;   // regularity 1:   [-1/b, -b]
};

PolygonIntervals polygon_intervals(double omega);

struct AtlasRow {
    double omega = 0.0;
    double a = 0.0;
    double b = 0.0;
    PolygonIntervals intervals;
};

/// a, b and both critical intervals on `steps` equispaced angles from start to end,
/// all inside (0, pi).
std::vector<AtlasRow> contrast_atlas(double start, double end, int steps);

enum class GeometryClass { SignDefinite, SmoothVMO, Polygon, Cone };

/// Geometry class with its angle parameter (polygon: sharpest corner omega, cone: alpha).
struct Geometry {
    GeometryClass kind = GeometryClass::SmoothVMO;
    double angle = 0.0;

    static Geometry sign_definite() { return {GeometryClass::SignDefinite, 0.0}; }
    static Geometry smooth() { return {GeometryClass::SmoothVMO, 0.0}; }
    static Geometry polygon(double omega) { return {GeometryClass::Polygon, omega}; }
    static Geometry cone(double alpha) { return {GeometryClass::Cone, alpha}; }
};

enum class Regularity { One, ThreeHalves };

enum class Verdict { SelfAdjoint, InsideCriticalInterval, ExcludedValue, Unknown };

struct ContrastVerdict {
    double mu = 0.0;
    Regularity s = Regularity::ThreeHalves;
    Geometry geometry;
    Verdict verdict = Verdict::Unknown;
    std::optional<Interval> interval;
    std::string theorem;  // which self-adjointness result was applied
    std::string note;
};

/// Self-adjointness verdict for the transmission operator with contrast mu and
/// domain regularity s. Throws InputError for angles outside their range.
ContrastVerdict verdict(const Geometry& geometry, double mu, Regularity s);

/// Parses "1" / "1.5" / "3/2".
Regularity parse_regularity(std::string_view text);
double regularity_value(Regularity s);

std::string_view to_string(GeometryClass kind);
std::string_view to_string(Verdict v);
GeometryClass parse_geometry_class(std::string_view text);

}  // namespace npspec
