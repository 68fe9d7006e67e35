#include "npspec/cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "npspec/contrast.hpp"
#include "npspec/errors.hpp"
#include "npspec/io.hpp"
#include "npspec/npops.hpp"
#include "npspec/spectral.hpp"
#include "npspec/transmission.hpp"

namespace npspec {

namespace {

struct Options {
    std::string geometry;
    std::string geometry_class;
    std::optional<double> omega;
    std::optional<double> alpha;
    std::optional<double> mu;
    std::string s = "1.5";
    int n = 256;
    double grading = 0.0;
    std::string format;
    std::string out;
    double grid_start = 0.05;
    double grid_end = std::numbers::pi - 0.05;
    int grid_steps = 500;
    std::string incident = "x";
    std::string points;
    std::string op = "adjoint";
    bool symmetrized = false;
};

void emit(const Options& o, const std::string& text, std::ostream& out) {
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw InputError("cannot write output file '" + o.out + "'");
    f << text;
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (o.format == a) return;
    std::string msg = "format '" + o.format + "' is not available here (use";
    for (const char* a : allowed) msg += std::string(" ") + a;
    throw InputError(msg + ")");
}

MeshPtr mesh_from(const Options& o) {
    if (o.geometry.empty()) throw InputError("--geometry is required");
    const io::GeometryInput g = io::load_geometry(o.geometry, o.n, o.grading);
    return build_mesh(g.curve, o.n, o.grading);
}

std::vector<double> numbers_in(const std::string& text) {
    std::vector<double> v;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
            throw InputError("cannot parse number '" + item + "'");
        v.push_back(x);
    }
    return v;
}

Vec2 pair_of(const std::string& text) {
    const std::vector<double> v = numbers_in(text);
    if (v.size() != 2) throw InputError("expected 'x,y', got '" + text + "'");
    return {v[0], v[1]};
}

// "x", "y", "linear:dx,dy" or "point:x0,y0".
IncidentField parse_incident(const std::string& desc) {
    if (desc == "x") return IncidentField::linear({1.0, 0.0});
    if (desc == "y") return IncidentField::linear({0.0, 1.0});
    if (desc.rfind("linear:", 0) == 0) return IncidentField::linear(pair_of(desc.substr(7)));
    if (desc.rfind("point:", 0) == 0) return IncidentField::point_source(pair_of(desc.substr(6)));
    throw InputError("unknown incident field '" + desc + "'");
}

std::vector<Vec2> parse_points(const std::string& text) {
    std::vector<Vec2> pts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ';'))
        if (!item.empty()) pts.push_back(pair_of(item));
    if (pts.empty()) throw InputError("--points needs at least one 'x,y'");
    return pts;
}

int cmd_spectrum(Options o, std::ostream& out) {
    if (o.format.empty()) o.format = "json";
    require_format(o, {"json"});
    const MeshPtr mesh = mesh_from(o);
    const BoundaryOperatorMatrix kp = assemble_adj_double_layer(mesh);
    const SpectrumReport report =
        o.symmetrized ? symmetrized_spectrum(assemble_single_layer(mesh), kp) : np_spectrum(kp);
    emit(o, json_text(io::to_json(report)), out);
    return kExitOk;
}

int cmd_verdict(Options o, std::ostream& out, std::ostream& err) {
    if (o.format.empty()) o.format = "json";
    require_format(o, {"json"});
    if (o.geometry_class.empty()) throw InputError("--class is required");
    if (!o.mu) throw InputError("--mu is required");
    Geometry g{parse_geometry_class(o.geometry_class), 0.0};
    if (g.kind == GeometryClass::Polygon) {
        if (!o.omega) throw InputError("--class polygon needs --omega");
        g.angle = *o.omega;
    } else if (g.kind == GeometryClass::Cone) {
        if (!o.alpha) throw InputError("--class cone needs --alpha");
        g.angle = *o.alpha;
    }
    const ContrastVerdict v = verdict(g, *o.mu, parse_regularity(o.s));
    emit(o, json_text(io::to_json(v)), out);
    if (*o.mu == 0.0) {
        err << "error: mu = 0 is an excluded value\n";
        return kExitInput;
    }
    return kExitOk;
}

int cmd_atlas(Options o, std::ostream& out) {
    if (o.format.empty()) o.format = "csv";
    require_format(o, {"csv", "svg"});
    const std::vector<AtlasRow> rows = contrast_atlas(o.grid_start, o.grid_end, o.grid_steps);
    emit(o, o.format == "csv" ? io::atlas_csv(rows) : io::atlas_svg(rows), out);
    return kExitOk;
}

int cmd_solve(Options o, std::ostream& out) {
    if (o.format.empty()) o.format = "json";
    require_format(o, {"json", "csv", "field"});
    if (!o.mu) throw InputError("--mu is required");
    const IncidentField incident = parse_incident(o.incident);
    std::vector<Vec2> points;
    if (o.format == "field") points = parse_points(o.points);
    const MeshPtr mesh = mesh_from(o);
    const TransmissionSolution sol = solve_transmission(mesh, *o.mu, incident);
    if (o.format == "csv") {
        emit(o, io::solution_csv(sol), out);
    } else if (o.format == "field") {
        emit(o, io::field_csv(points, evaluate_field(sol, points)), out);
    } else {
        nlohmann::json report = {{"mu", sol.mu},
                                 {"lambda", sol.lambda},
                                 {"N", mesh->size()},
                                 {"incident", o.incident},
                                 {"spectrum_distance", sol.spectrum_distance},
                                 {"solve_residual", sol.solve_residual},
                                 {"flux_residual", flux_residual(sol)}};
        emit(o, json_text(report), out);
    }
    return kExitOk;
}

int cmd_dump(Options o) {
    if (o.out.empty()) throw InputError("dump needs --out");
    const MeshPtr mesh = mesh_from(o);
    BoundaryOperatorMatrix m;
    if (o.op == "single") m = assemble_single_layer(mesh);
    else if (o.op == "double") m = assemble_double_layer(mesh);
    else if (o.op == "adjoint") m = assemble_adj_double_layer(mesh);
    else throw InputError("unknown operator '" + o.op + "' (single, double, adjoint)");
    write_matrix_binary(o.out, m.entries);
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Neumann-Poincare spectra, critical contrasts and transmission solves"};
    app.require_subcommand(1, 1);
    app.set_help_all_flag("--help-all");

    auto geometry_opts = [&](CLI::App* c) {
        c->add_option("--geometry", o.geometry, "geometry JSON file or inline JSON");
        c->add_option("--n", o.n, "number of quadrature nodes");
        c->add_option("--grading", o.grading, "corner grading exponent for polygons (default 3)");
    };
    auto output_opts = [&](CLI::App* c) {
        c->add_option("--format", o.format, "output format");
        c->add_option("--out", o.out, "output file (default: stdout)");
    };

    CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues of K' in L2");
    geometry_opts(spectrum);
    output_opts(spectrum);
    spectrum->add_flag("--symmetrized", o.symmetrized, "real spectrum from the pencil (S K', S)");

    CLI::App* verdict_cmd = app.add_subcommand("verdict", "self-adjointness verdict for a contrast");
    verdict_cmd->add_option("--class", o.geometry_class, "sign-definite | smooth | polygon | cone");
    verdict_cmd->add_option("--omega", o.omega, "sharpest polygon corner in (0, pi)");
    verdict_cmd->add_option("--alpha", o.alpha, "cone opening angle in (0, pi)");
    verdict_cmd->add_option("--mu", o.mu, "contrast");
    verdict_cmd->add_option("--s", o.s, "regularity: 1 or 1.5");
    output_opts(verdict_cmd);

    CLI::App* atlas = app.add_subcommand("atlas", "a(omega), b(omega) and critical intervals");
    atlas->add_option("--grid-start", o.grid_start);
    atlas->add_option("--grid-end", o.grid_end);
    atlas->add_option("--grid-steps", o.grid_steps);
    output_opts(atlas);

    CLI::App* solve = app.add_subcommand("solve", "transmission solve with a single-layer ansatz");
    geometry_opts(solve);
    output_opts(solve);
    solve->add_option("--mu", o.mu, "contrast");
    solve->add_option("--s", o.s, "regularity (recorded only)");
    solve->add_option("--incident", o.incident, "x | y | linear:dx,dy | point:x0,y0");
    solve->add_option("--points", o.points, "field points 'x,y;x,y;...' for --format field");

    CLI::App* dump = app.add_subcommand("dump", "binary dump of an operator matrix");
    geometry_opts(dump);
    dump->add_option("--operator", o.op, "single | double | adjoint");
    dump->add_option("--out", o.out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        if (spectrum->parsed()) return cmd_spectrum(o, out);
        if (verdict_cmd->parsed()) return cmd_verdict(o, out, err);
        if (atlas->parsed()) return cmd_atlas(o, out);
        if (solve->parsed()) return cmd_solve(o, out);
        return cmd_dump(o);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ResonanceError& e) {
        err << "refused: " << e.what() << "\n";
        err << "distance_to_spectrum " << io::format_double(e.distance()) << "\n";
        return kExitResonance;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace npspec
