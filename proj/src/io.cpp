#include "npspec/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "npspec/errors.hpp"

namespace npspec::io {

using nlohmann::json;

namespace {

double number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw InputError(std::string("geometry field '") + key + "' must be a number");
    return j[key].get<double>();
}

std::vector<Vec2> point_list(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array())
        throw InputError(std::string("geometry field '") + key + "' must be an array of [x, y] pairs");
    std::vector<Vec2> pts;
    for (const json& p : j[key]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw InputError(std::string("geometry field '") + key + "' must be an array of [x, y] pairs");
        pts.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    return pts;
}

}  // namespace

GeometryInput parse_geometry(const json& j, int n, double grading) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw InputError("geometry must be a JSON object with a string 'kind'");
    GeometryInput g;
    g.kind = j["kind"].get<std::string>();
    if (g.kind == "ellipse") {
        g.curve = make_ellipse(number(j, "a"), number(j, "b"), n);
    } else if (g.kind == "polygon") {
        const std::vector<Vec2> v = point_list(j, "vertices");
        double q = grading;
        if (q <= 0.0) q = j.contains("grading") ? number(j, "grading") : 3.0;
        auto [curve, corners] = make_polygon(v, std::max(1, n / std::max<int>(1, v.size())), q);
        g.curve = std::move(curve);
        g.corners = std::move(corners);
    } else if (g.kind == "samples") {
        g.curve = make_sampled_curve(point_list(j, "points"));
    } else {
        throw InputError("unknown geometry kind '" + g.kind + "'");
    }
    return g;
}

GeometryInput load_geometry(const std::string& source, int n, double grading) {
    json j;
    const auto first = source.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && source[first] == '{') {
        j = json::parse(source, nullptr, false);
        if (j.is_discarded()) throw InputError("inline geometry is not valid JSON");
    } else {
        std::ifstream in(source);
        if (!in) throw InputError("cannot open geometry file '" + source + "'");
        j = json::parse(in, nullptr, false);
        if (j.is_discarded()) throw InputError("geometry file '" + source + "' is not valid JSON");
    }
    return parse_geometry(j, n, grading);
}

json to_json(const SpectrumReport& report) {
    json eig = json::array();
    for (const auto& z : report.eigenvalues) eig.push_back({z.real(), z.imag()});
    return {{"eigenvalues", eig},
            {"radius", report.radius},
            {"N", report.mesh_size},
            {"kind", std::string(to_string(report.kind))}};
}

json to_json(const ContrastVerdict& v) {
    json out;
    out["mu"] = v.mu;
    out["s"] = regularity_value(v.s);
    out["class"] = std::string(to_string(v.geometry.kind));
    if (v.geometry.kind == GeometryClass::Polygon) out["omega"] = v.geometry.angle;
    if (v.geometry.kind == GeometryClass::Cone) out["alpha"] = v.geometry.angle;
    out["verdict"] = std::string(to_string(v.verdict));
    out["interval"] = v.interval ? json::array({v.interval->lo, v.interval->hi}) : json(nullptr);
    out["theorem"] = v.theorem.empty() ? json(nullptr) : json(v.theorem);
    out["note"] = v.note;
    return out;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string atlas_csv(const std::vector<AtlasRow>& rows) {
    std::string out = "omega,a,b,I32_lo,I32_hi,I1_lo,I1_hi\n";
    for (const AtlasRow& r : rows) {
        for (double x : {r.omega, r.a, r.b, r.intervals.s32.lo, r.intervals.s32.hi, r.intervals.s1.lo}) {
            out += format_double(x);
            out += ',';
        }
        out += format_double(r.intervals.s1.hi);
        out += '\n';
    }
    return out;
}

std::string atlas_svg(const std::vector<AtlasRow>& rows) {
    constexpr double W = 800, H = 300, left = 60, right = 20, top = 20, bottom = 50;
    const double pw = W - left - right, ph = H - top - bottom;
    auto px = [&](double omega) { return left + pw * omega / std::numbers::pi; };
    auto py = [&](double v) { return top + ph * (1.0 - v); };
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };
    auto polyline = [&](auto value, const char* extra) {
        std::string s = "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"";
        s += extra;
        s += " points=\"";
        for (const AtlasRow& r : rows) s += fmt(px(r.omega)) + "," + fmt(py(value(r))) + " ";
        if (!rows.empty()) s.pop_back();
        return s + "\"/>\n";
    };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"300\" viewBox=\"0 0 800 300\">\n";
    o << "<rect width=\"800\" height=\"300\" fill=\"white\"/>\n";
    o << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(py(0)) << "\" x2=\"" << fmt(left + pw) << "\" y2=\""
      << fmt(py(0)) << "\" stroke=\"black\"/>\n";
    o << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(py(0)) << "\" x2=\"" << fmt(left) << "\" y2=\""
      << fmt(py(1)) << "\" stroke=\"black\"/>\n";
    const char* xticks[] = {"0", "pi/4", "pi/2", "3pi/4", "pi"};
    for (int k = 0; k <= 4; ++k) {
        const double x = px(std::numbers::pi * k / 4.0);
        o << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(py(0)) << "\" x2=\"" << fmt(x) << "\" y2=\""
          << fmt(py(0) + 5) << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(py(0) + 18) << "\" font-size=\"12\" text-anchor=\"middle\">"
          << xticks[k] << "</text>\n";
    }
    for (int k = 0; k <= 4; ++k) {
        const double y = py(0.25 * k);
        o << "<line x1=\"" << fmt(left - 5) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(left) << "\" y2=\""
          << fmt(y) << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << fmt(left - 8) << "\" y=\"" << fmt(y + 4)
          << "\" font-size=\"12\" text-anchor=\"end\">" << fmt(0.25 * k) << "</text>\n";
    }
    o << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"" << fmt(H - 10)
      << "\" font-size=\"14\" text-anchor=\"middle\">omega</text>\n";
    o << "<text x=\"15\" y=\"" << fmt(top + ph / 2) << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
      << fmt(top + ph / 2) << ")\">interval endpoint value</text>\n";
    o << polyline([](const AtlasRow& r) { return r.a; }, " id=\"a\"");
    o << polyline([](const AtlasRow& r) { return r.b; }, " id=\"b\" stroke-dasharray=\"6 4\"");
    o << "</svg>\n";
    return o.str();
}

std::string solution_csv(const TransmissionSolution& solution) {
    const QuadratureMesh& mesh = *solution.mesh;
    std::string out = "node_index,x,y,phi\n";
    for (int i = 0; i < mesh.size(); ++i) {
        out += std::to_string(i) + "," + format_double(mesh.curve.nodes[i].x()) + "," +
               format_double(mesh.curve.nodes[i].y()) + "," + format_double(solution.density[i]) + "\n";
    }
    return out;
}

std::string field_csv(const std::vector<Vec2>& points, const FieldSample& field) {
    std::string out = "x,y,u,ux,uy\n";
    for (size_t p = 0; p < points.size(); ++p) {
        out += format_double(points[p].x()) + "," + format_double(points[p].y()) + "," +
               format_double(field.values[p]) + "," + format_double(field.gradients[p].x()) + "," +
               format_double(field.gradients[p].y()) + "\n";
    }
    return out;
}

}  // namespace npspec::io
