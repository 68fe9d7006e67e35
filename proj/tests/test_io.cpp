#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "npspec/errors.hpp"
#include "npspec/io.hpp"
#include "npspec/npops.hpp"

using namespace npspec;
using nlohmann::json;

namespace {

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::vector<double> fields(const std::string& line) {
    std::vector<double> out;
    std::istringstream in(line);
    for (std::string f; std::getline(in, f, ',');) out.push_back(std::stod(f));
    return out;
}

}  // namespace

TEST_CASE("ellipse geometry") {
    const auto g = io::parse_geometry(json::parse(R"({"kind":"ellipse","a":2,"b":1})"), 64, 0.0);
    CHECK(g.kind == "ellipse");
    CHECK(g.curve.size() == 64);
    CHECK(g.curve.is_smooth);
    CHECK_FALSE(g.corners.has_value());
    CHECK(g.curve.nodes[0].x() == doctest::Approx(2.0));
}

TEST_CASE("polygon geometry carries its corners") {
    const auto g = io::parse_geometry(
        json::parse(R"({"kind":"polygon","vertices":[[0,0],[1,0],[1,1],[0,1]],"grading":2})"), 128, 0.0);
    CHECK(g.kind == "polygon");
    REQUIRE(g.corners.has_value());
    REQUIRE(g.corners->angles.size() == 4);
    for (double a : g.corners->angles) CHECK(a == doctest::Approx(std::numbers::pi / 2));
    CHECK_FALSE(g.curve.is_smooth);
}

TEST_CASE("samples geometry") {
    json pts = json::array();
    for (int k = 0; k < 48; ++k) {
        const double t = 2 * std::numbers::pi * k / 48;
        pts.push_back({1.5 * std::cos(t), std::sin(t)});
    }
    const auto g = io::parse_geometry(json{{"kind", "samples"}, {"points", pts}}, 256, 0.0);
    CHECK(g.kind == "samples");
    CHECK(g.curve.size() == 48);
}

TEST_CASE("malformed geometry is an input error") {
    const char* bad[] = {
        R"([1,2])",
        R"({"a":1})",
        R"({"kind":"blob"})",
        R"({"kind":"ellipse","a":"two","b":1})",
        R"({"kind":"ellipse","a":2})",
        R"({"kind":"polygon","vertices":[[0,0],[1]]})",
        R"({"kind":"polygon"})",
        R"({"kind":"ellipse","a":-1,"b":1})",
    };
    for (const char* text : bad) {
        INFO(text);
        CHECK_THROWS_AS(io::parse_geometry(json::parse(text), 64, 0.0), InputError);
    }
}

TEST_CASE("load_geometry reads inline JSON and files") {
    CHECK(io::load_geometry(R"({"kind":"ellipse","a":1,"b":1})", 32, 0.0).curve.size() == 32);
    CHECK_THROWS_AS(io::load_geometry("{not json", 32, 0.0), InputError);

    const auto dir = std::filesystem::temp_directory_path();
    const auto path = dir / "npspec_io_test_geometry.json";
    {
        std::ofstream(path) << R"({"kind":"ellipse","a":3,"b":1})";
    }
    CHECK(io::load_geometry(path.string(), 40, 0.0).curve.nodes[0].x() == doctest::Approx(3.0));
    std::filesystem::remove(path);

    const std::string missing = (dir / "npspec_does_not_exist.json").string();
    try {
        io::load_geometry(missing, 32, 0.0);
        FAIL("expected an InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find(missing) != std::string::npos);
    }
}

TEST_CASE("spectrum JSON") {
    SpectrumReport r;
    r.eigenvalues = {{0.5, 0.0}, {0.25, -0.125}};
    r.radius = 0.5;
    r.mesh_size = 7;
    const json j = io::to_json(r);
    CHECK(j["radius"].get<double>() == 0.5);
    CHECK(j["N"].get<int>() == 7);
    CHECK(j["kind"] == "raw");
    REQUIRE(j["eigenvalues"].size() == 2);
    CHECK(j["eigenvalues"][1][0].get<double>() == 0.25);
    CHECK(j["eigenvalues"][1][1].get<double>() == -0.125);
    r.kind = SpectrumKind::Symmetrized;
    CHECK(io::to_json(r)["kind"] == "symmetrized");
}

TEST_CASE("JSON doubles round-trip exactly") {
    SpectrumReport r;
    r.radius = 0.1 + 0.2;
    r.eigenvalues = {{1.0 / 3.0, 0.0}};
    const json back = json::parse(io::to_json(r).dump());
    CHECK(back["radius"].get<double>() == 0.1 + 0.2);
    CHECK(back["eigenvalues"][0][0].get<double>() == 1.0 / 3.0);
}

TEST_CASE("verdict JSON") {
    const json p = io::to_json(verdict(Geometry::polygon(std::numbers::pi / 2), -2.0, Regularity::One));
    CHECK(p["class"] == "polygon");
    CHECK(p["omega"].get<double>() == doctest::Approx(std::numbers::pi / 2));
    CHECK_FALSE(p.contains("alpha"));
    CHECK(p["verdict"] == "InsideCriticalInterval");
    REQUIRE(p["interval"].is_array());
    CHECK(p["interval"][0].get<double>() < -2.0);
    CHECK(p["interval"][1].get<double>() > -2.0);
    CHECK(p["s"].get<double>() == 1.0);
    CHECK(p["mu"].get<double>() == -2.0);
    CHECK(p["theorem"].is_string());

    const json c = io::to_json(verdict(Geometry::cone(0.5), -0.5, Regularity::One));
    CHECK(c["class"] == "cone");
    CHECK(c["alpha"].get<double>() == 0.5);
    CHECK(c["interval"].is_null());

    const json z = io::to_json(verdict(Geometry::smooth(), 0.0, Regularity::ThreeHalves));
    CHECK(z["verdict"] == "ExcludedValue");
    CHECK(z["s"].get<double>() == 1.5);
}

TEST_CASE("format_double is lossless") {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::numbers::pi}) {
        CHECK(std::stod(io::format_double(x)) == x);
    }
}

TEST_CASE("atlas CSV") {
    const auto rows = contrast_atlas(0.05, std::numbers::pi - 0.05, 50);
    const auto ls = lines(io::atlas_csv(rows));
    REQUIRE(ls.size() == rows.size() + 1);
    CHECK(ls[0] == "omega,a,b,I32_lo,I32_hi,I1_lo,I1_hi");
    for (size_t k = 0; k < rows.size(); ++k) {
        const auto f = fields(ls[k + 1]);
        REQUIRE(f.size() == 7);
        CHECK(f[0] == rows[k].omega);
        CHECK(f[1] == rows[k].a);
        CHECK(f[2] == rows[k].b);
        CHECK(f[3] == rows[k].intervals.s32.lo);
        CHECK(f[4] == rows[k].intervals.s32.hi);
        CHECK(f[5] == rows[k].intervals.s1.lo);
        CHECK(f[6] == rows[k].intervals.s1.hi);
    }
}

TEST_CASE("atlas SVG") {
    const std::string svg = io::atlas_svg(contrast_atlas(0.05, std::numbers::pi - 0.05, 100));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("viewBox=\"0 0 800 300\"") != std::string::npos);
    CHECK(svg.find(">omega<") != std::string::npos);
    CHECK(svg.find(">interval endpoint value<") != std::string::npos);
    const auto a = svg.find("id=\"a\"");
    const auto b = svg.find("id=\"b\"");
    REQUIRE(a != std::string::npos);
    REQUIRE(b != std::string::npos);
    CHECK(svg.substr(a, svg.find('>', a) - a).find("stroke-dasharray") == std::string::npos);
    CHECK(svg.substr(b, 60).find("stroke-dasharray") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("solution and field CSV") {
    const auto sol = solve_transmission(build_mesh(make_ellipse(2, 1, 16), 64), 3.0, IncidentField::linear({1, 0}));
    const auto ls = lines(io::solution_csv(sol));
    REQUIRE(ls.size() == 65);
    CHECK(ls[0] == "node_index,x,y,phi");
    const auto f = fields(ls[11]);
    CHECK(f[0] == 10);
    CHECK(f[1] == sol.mesh->curve.nodes[10].x());
    CHECK(f[3] == sol.density[10]);

    const std::vector<Vec2> pts{{0.1, 0.2}, {4.0, 4.0}};
    const FieldSample s = evaluate_field(sol, pts);
    const auto fl = lines(io::field_csv(pts, s));
    REQUIRE(fl.size() == 3);
    CHECK(fl[0] == "x,y,u,ux,uy");
    const auto g = fields(fl[2]);
    CHECK(g[2] == s.values[1]);
    CHECK(g[4] == s.gradients[1].y());
}
