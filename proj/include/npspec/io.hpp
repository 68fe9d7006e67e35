#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "npspec/contrast.hpp"
#include "npspec/geometry.hpp"
#include "npspec/spectral.hpp"
#include "npspec/transmission.hpp"

namespace npspec::io {

/// A curve read from a geometry description, with corner data for polygons.
struct GeometryInput {
    std::string kind;
    Curve curve;
    std::optional<CornerSpec> corners;
};

/// Geometry JSON:
///   {"kind": "ellipse", "a": 2, "b": 1}
///   {"kind": "polygon", "vertices": [[0,0], [1,0], [1,1], [0,1]], "grading": 3}
///   {"kind": "samples", "points": [[x,y], ...]}    (equispaced samples of a smooth curve)
/// `n` is the node count used to sample smooth curves. Throws InputError.
GeometryInput parse_geometry(const nlohmann::json& j, int n, double grading);
/// Inline JSON text (starting with '{') or a file path.
GeometryInput load_geometry(const std::string& source, int n, double grading);

nlohmann::json to_json(const SpectrumReport& report);
nlohmann::json to_json(const ContrastVerdict& v);

/// printf("%.17g").
std::string format_double(double x);

/// omega, a, b, I32_lo, I32_hi, I1_lo, I1_hi
std::string atlas_csv(const std::vector<AtlasRow>& rows);
/// 800x300 plot of a (solid) and b (dashed) against omega.
std::string atlas_svg(const std::vector<AtlasRow>& rows);

/// node_index, x, y, phi
std::string solution_csv(const TransmissionSolution& solution);
/// x, y, u, ux, uy
std::string field_csv(const std::vector<Vec2>& points, const FieldSample& field);

}  // namespace npspec::io
