// Copyright 2026 The idp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file idp_main.cpp
 * @brief Command line front end: validate meshes, uniformize angle systems,
 * check and realize circle patterns, develop and render solutions, and
 * evaluate prism volumes.
 *
 * Exit codes: 0 success (or pattern satisfied), 1 diagnostic failure
 * (solver did not converge, pattern violated, cross-check failed), 2 input
 * error (unreadable file, malformed JSON, invalid mesh or numeric domain).
 * Errors are emitted as JSON objects on stderr; results go to stdout. All
 * numbers printed by the tool are rounded to 12 significant digits.
 */

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "idp/idp.hpp"

namespace
{

/** Round every number in a JSON tree to 12 significant digits. */
void round12(nlohmann::json& j)
{
    if (j.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.12g", j.get<double>());
        j = std::strtod(buf, nullptr);
    } else if (j.is_array() || j.is_object()) {
        for (auto& item : j) {
            round12(item);
        }
    }
}

void print_result(const nlohmann::json& j, const std::string& out_path)
{
    nlohmann::json rounded = j;
    round12(rounded);
    if (out_path.empty()) {
        std::cout << rounded.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) {
            throw idp::ParseError("cannot open output file: " + out_path);
        }
        out << rounded.dump(2) << "\n";
        std::cout << "wrote " << out_path << "\n";
    }
}

/** 1 for diagnostic failures, 2 for bad input. */
auto exit_code_for(const idp::Error& err) -> int
{
    const std::string& c = err.code();
    const bool diagnostic = c == "MaxIterExceeded" || c == "NotConverged" ||
                            c == "InfeasiblePattern" || c == "Phase2Failure" ||
                            c == "CrossCheckFailure" || c == "CircumcircleDegenerate";
    return diagnostic ? 1 : 2;
}

auto error_json(const idp::Error& err) -> nlohmann::json
{
    nlohmann::json j;
    j["error"] = err.code();
    j["message"] = err.what();
    if (const auto* infeasible = dynamic_cast<const idp::InfeasiblePattern*>(&err)) {
        j["condition"] = infeasible->which;
        j["certificate"] = infeasible->certificate;
        j["slack"] = infeasible->slack;
    } else if (const auto* maxiter = dynamic_cast<const idp::MaxIterExceeded*>(&err)) {
        j["residual"] = maxiter->residual;
    } else if (const auto* notconv = dynamic_cast<const idp::NotConvergedError*>(&err)) {
        j["residual"] = notconv->residual;
    } else if (const auto* cross = dynamic_cast<const idp::CrossCheckFailure*>(&err)) {
        j["primary"] = cross->primary;
        j["check"] = cross->check;
    } else if (const auto* phase2 = dynamic_cast<const idp::Phase2Failure*>(&err)) {
        j["best_slack"] = phase2->best_slack;
    }
    return j;
}

auto load_mesh(const std::string& path) -> idp::GluingSpec
{
    return idp::mesh_from_json(idp::load_json_file(path));
}

auto run_validate(const std::string& path) -> int
{
    const idp::GluingSpec spec = load_mesh(path);
    // Structural errors (dangling side, duplicate gluing, non-manifold side)
    // surface here as input errors with exit code 2.
    const idp::TriangularDecomposition td = idp::build_decomposition(spec);
    const idp::ValidationReport rep = idp::validate(spec);

    nlohmann::json j;
    j["triangles"] = rep.triangles;
    j["edges"] = rep.edges;
    j["boundary_edges"] = rep.boundary_edges;
    j["vertices"] = rep.vertices;
    j["boundary_vertices"] = rep.boundary_vertices;
    j["euler_characteristic"] = rep.euler_characteristic;
    j["structure_ok"] = rep.structure_ok;
    j["targets_admissible"] = rep.admissible;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : rep.checks) {
        nlohmann::json cj;
        cj["name"] = c.name;
        cj["ok"] = c.pass;
        if (!c.detail.empty()) {
            cj["detail"] = c.detail;
        }
        j["checks"].push_back(cj);
    }

    bool angles_ok = true;
    if (!spec.angles.empty()) {
        const idp::MembershipReport mem = idp::classify(td, spec.angles);
        nlohmann::json aj;
        aj["strict_angle_system"] = mem.in_N;
        aj["vertex_sums_met"] = mem.in_V;
        aj["max_vertex_error"] = mem.max_vertex_error;
        aj["min_angle"] = mem.min_angle;
        aj["max_angle"] = mem.max_angle;
        aj["max_curvature"] = mem.max_curvature;
        j["angles"] = aj;
        angles_ok = mem.in_N;
    }

    const bool ok = rep.structure_ok && rep.admissible && angles_ok;
    j["ok"] = ok;
    print_result(j, "");
    return ok ? 0 : 1;
}

auto run_uniformize(const std::string& path, double tol, int max_iter,
                    const std::string& out_path) -> int
{
    const idp::GluingSpec spec = load_mesh(path);
    const idp::TriangularDecomposition td = idp::build_decomposition(spec);
    const idp::AngleVector start =
        spec.angles.empty() ? idp::default_start(td) : idp::AngleVector(spec.angles);

    idp::SolverOptions opts;
    opts.tol_residual = tol;
    opts.max_iter = max_iter;
    const idp::SolverResult res = idp::maximize(td, start, opts);

    print_result(idp::solution_to_json(td, spec, res), out_path);
    return 0;
}

auto run_check_pattern(const std::string& path, const std::string& method) -> int
{
    const idp::PatternDocument doc = idp::pattern_from_json(idp::load_json_file(path));
    if (!doc.has_mesh) {
        throw idp::ParseError("pattern document must embed the mesh under \"mesh\"");
    }
    const idp::TriangularDecomposition td = idp::build_decomposition(doc.mesh);
    const idp::PatternVector& p = doc.pattern;
    if (static_cast<int>(p.theta.size()) != td.edge_count()) {
        throw idp::ParseError("pattern has " + std::to_string(p.theta.size()) +
                              " thetas, mesh has " + std::to_string(td.edge_count()) +
                              " edges");
    }

    nlohmann::json j;
    const double margin = idp::window_margin(td, p);
    j["window_margin"] = margin;
    const bool window_ok = margin > 0.0;

    const idp::N1Report n1 = idp::check_n1(td, p);
    nlohmann::json n1j;
    n1j["ok"] = n1.ok;
    n1j["max_error"] = n1.max_error;
    n1j["vertex_sums"] = nlohmann::json::array();
    for (const auto& s : n1.sums) {
        n1j["vertex_sums"].push_back({{"vertex", s.vertex}, {"sum", s.sum},
                                      {"target", s.target}});
    }
    j["n1"] = n1j;

    bool n2_ok = false;
    if (window_ok) {
        const idp::N2Report n2 = method == "brute" ? idp::check_n2_brute(td, p)
                                                   : idp::check_n2_flow(td, p);
        nlohmann::json n2j;
        n2j["ok"] = n2.satisfied;
        n2j["method"] = method;
        if (!n2.satisfied) {
            n2j["certificate"] = n2.witness;
            n2j["slack"] = n2.min_slack;
        } else if (method == "brute") {
            n2j["min_slack"] = n2.min_slack;
        }
        j["n2"] = n2j;
        n2_ok = n2.satisfied;
    } else {
        j["n2"] = {{"ok", false}, {"skipped", "theta outside the admissible window"}};
    }

    const bool satisfied = window_ok && n1.ok && n2_ok;
    j["satisfied"] = satisfied;
    print_result(j, "");
    return satisfied ? 0 : 1;
}

auto run_realize(const std::string& path, const std::string& out_path) -> int
{
    const idp::PatternDocument doc = idp::pattern_from_json(idp::load_json_file(path));
    if (!doc.has_mesh) {
        throw idp::ParseError("pattern document must embed the mesh under \"mesh\"");
    }
    const idp::TriangularDecomposition td = idp::build_decomposition(doc.mesh);
    const idp::RealizeResult res = idp::realize_pattern(td, doc.pattern);

    nlohmann::json j = idp::solution_to_json(td, doc.mesh, res.solver);
    j["pattern_error"] = res.pattern_error;
    j["phase2_slack"] = res.phase2_slack;
    print_result(j, out_path);
    return 0;
}

auto run_render(const std::string& path, bool circles, const std::string& svg_path) -> int
{
    const idp::SolutionDocument doc = idp::solution_from_json(idp::load_json_file(path));
    const idp::TriangularDecomposition td = idp::build_decomposition(doc.mesh);
    const idp::Layout layout = idp::develop(td, doc.angles);

    idp::RenderOptions opts;
    opts.circumcircles = circles;
    const std::string svg = idp::render_svg(td, layout, opts);
    if (svg_path.empty()) {
        std::cout << svg;
    } else {
        std::ofstream out(svg_path);
        if (!out) {
            throw idp::ParseError("cannot open output file: " + svg_path);
        }
        out << svg;
        std::cout << "wrote " << svg_path << "\n";
    }
    return 0;
}

auto run_volume(double a, double b, double c) -> int
{
    const double v = idp::prism_volume_checked({a, b, c});
    std::printf("%.12g\n", v);
    return 0;
}

} // namespace

auto main(int argc, char** argv) -> int
{
    CLI::App app{"Hyperbolic uniformization of glued triangle complexes: "
                 "maximize total ideal-prism volume over a conformal class, "
                 "check and realize circle patterns, and develop the result "
                 "in the Poincare disk."};
    app.require_subcommand(1);

    std::string mesh_path;
    std::string pattern_path;
    std::string solution_path;
    std::string out_path;
    std::string svg_path;
    std::string method{"flow"};
    double tol = 1e-10;
    int max_iter = 1000;
    bool circles = false;
    double va = 0.0;
    double vb = 0.0;
    double vc = 0.0;

    auto* validate_cmd = app.add_subcommand("validate", "Check a mesh JSON document");
    validate_cmd->add_option("mesh", mesh_path, "mesh JSON file")->required();

    auto* uniformize_cmd =
        app.add_subcommand("uniformize", "Find the uniform angle system in the conformal "
                                         "class of the mesh's angles");
    uniformize_cmd->add_option("mesh", mesh_path, "mesh JSON file")->required();
    uniformize_cmd->add_option("--tol", tol, "edge-length residual tolerance");
    uniformize_cmd->add_option("--max-iter", max_iter, "iteration cap");
    uniformize_cmd->add_option("-o", out_path, "write the solution JSON here");

    auto* check_cmd = app.add_subcommand("check-pattern",
                                         "Check pattern feasibility (window, n1, n2)");
    check_cmd->add_option("pattern", pattern_path, "pattern JSON file")->required();
    check_cmd->add_option("--method", method, "n2 check method")
        ->check(CLI::IsMember({"flow", "brute"}));

    auto* realize_cmd = app.add_subcommand("realize",
                                           "Find the uniform angle system carrying a pattern");
    realize_cmd->add_option("pattern", pattern_path, "pattern JSON file")->required();
    realize_cmd->add_option("-o", out_path, "write the solution JSON here");

    auto* render_cmd = app.add_subcommand("render",
                                          "Develop a solution and render it as SVG");
    render_cmd->add_option("solution", solution_path, "solution JSON file")->required();
    render_cmd->add_flag("--circles", circles, "draw circumcircles");
    render_cmd->add_option("--svg", svg_path, "write the SVG here (default stdout)");

    auto* volume_cmd = app.add_subcommand("volume",
                                          "Print the prism volume of an angle triple");
    volume_cmd->add_option("A", va, "first angle (radians)")->required();
    volume_cmd->add_option("B", vb, "second angle (radians)")->required();
    volume_cmd->add_option("C", vc, "third angle (radians)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help and friends
        }
        nlohmann::json j;
        j["error"] = "Usage";
        j["message"] = e.what();
        std::cerr << j.dump() << "\n";
        return 2;
    }

    try {
        if (validate_cmd->parsed()) {
            return run_validate(mesh_path);
        }
        if (uniformize_cmd->parsed()) {
            return run_uniformize(mesh_path, tol, max_iter, out_path);
        }
        if (check_cmd->parsed()) {
            return run_check_pattern(pattern_path, method);
        }
        if (realize_cmd->parsed()) {
            return run_realize(pattern_path, out_path);
        }
        if (render_cmd->parsed()) {
            return run_render(solution_path, circles, svg_path);
        }
        if (volume_cmd->parsed()) {
            return run_volume(va, vb, vc);
        }
    } catch (const idp::Error& err) {
        std::cerr << error_json(err).dump() << "\n";
        return exit_code_for(err);
    } catch (const std::exception& err) {
        nlohmann::json j;
        j["error"] = "Internal";
        j["message"] = err.what();
        std::cerr << j.dump() << "\n";
        return 2;
    }
    return 2;
}
