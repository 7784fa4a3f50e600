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

#pragma once

/** @file json_io.hpp
 * JSON document formats.
 *
 * Mesh:    {"triangles": F,
 *           "gluings": [{"a": [t, s], "b": [t2, s2], "flip": bool?}, ...],
 *           "vertex_targets": {"<vertex id>": radians, ...}?,
 *           "angles": [3F reals]?}
 * Pattern: {"theta": [E reals], "mesh": <mesh document>?}
 *          (theta follows the canonical edge order of the mesh)
 * Solution:{"mesh": ..., "angles": [3F], "objective": v, "residual": v,
 *           "grad_norm": v, "iterations": n, "theta": [E], "lengths": [E]}
 *
 * parse(serialize(doc)) is the identity; serializers emit full-precision
 * doubles. Structural violations raise ParseError with the offending path.
 */

#include <json.hpp>

#include <fstream>
#include <string>
#include <vector>

#include "idp/complex.hpp"
#include "idp/errors.hpp"
#include "idp/patterns.hpp"
#include "idp/uniformize.hpp"

namespace idp
{

namespace detail
{

inline auto require_field(const nlohmann::json& j, const char* key, const char* where)
    -> const nlohmann::json&
{
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string(where) + ": missing required field \"" + key + "\"");
    }
    return j.at(key);
}

inline auto as_int(const nlohmann::json& j, const char* where) -> int
{
    if (!j.is_number_integer()) {
        throw ParseError(std::string(where) + ": expected an integer");
    }
    return j.get<int>();
}

inline auto as_double(const nlohmann::json& j, const char* where) -> double
{
    if (!j.is_number()) {
        throw ParseError(std::string(where) + ": expected a number");
    }
    return j.get<double>();
}

inline auto as_side(const nlohmann::json& j, const char* where) -> std::array<int, 2>
{
    if (!j.is_array() || j.size() != 2) {
        throw ParseError(std::string(where) + ": expected [triangle, side]");
    }
    return {as_int(j[0], where), as_int(j[1], where)};
}

} // namespace detail

inline auto mesh_from_json(const nlohmann::json& j) -> GluingSpec
{
    if (!j.is_object()) {
        throw ParseError("mesh: expected an object");
    }
    GluingSpec spec;
    spec.triangles = detail::as_int(detail::require_field(j, "triangles", "mesh"),
                                    "mesh.triangles");

    if (j.contains("gluings")) {
        const auto& gl = j.at("gluings");
        if (!gl.is_array()) {
            throw ParseError("mesh.gluings: expected an array");
        }
        for (std::size_t i = 0; i < gl.size(); ++i) {
            const std::string where = "mesh.gluings[" + std::to_string(i) + "]";
            const auto& g = gl[i];
            Gluing out;
            const auto a = detail::as_side(detail::require_field(g, "a", where.c_str()),
                                           (where + ".a").c_str());
            const auto b = detail::as_side(detail::require_field(g, "b", where.c_str()),
                                           (where + ".b").c_str());
            out.a = {a[0], a[1]};
            out.b = {b[0], b[1]};
            out.flip = false;
            if (g.contains("flip")) {
                if (!g.at("flip").is_boolean()) {
                    throw ParseError(where + ".flip: expected a boolean");
                }
                out.flip = g.at("flip").get<bool>();
            }
            spec.gluings.push_back(out);
        }
    }

    if (j.contains("vertex_targets")) {
        const auto& vt = j.at("vertex_targets");
        if (!vt.is_object()) {
            throw ParseError("mesh.vertex_targets: expected an object");
        }
        for (const auto& [key, val] : vt.items()) {
            int v = -1;
            try {
                std::size_t used = 0;
                v = std::stoi(key, &used);
                if (used != key.size()) {
                    throw std::invalid_argument(key);
                }
            } catch (const std::exception&) {
                throw ParseError("mesh.vertex_targets: key \"" + key +
                                 "\" is not a vertex id");
            }
            spec.vertex_targets[v] =
                detail::as_double(val, ("mesh.vertex_targets[" + key + "]").c_str());
        }
    }

    if (j.contains("angles")) {
        const auto& an = j.at("angles");
        if (!an.is_array()) {
            throw ParseError("mesh.angles: expected an array");
        }
        for (std::size_t i = 0; i < an.size(); ++i) {
            spec.angles.push_back(
                detail::as_double(an[i], ("mesh.angles[" + std::to_string(i) + "]").c_str()));
        }
        if (spec.angles.size() != static_cast<std::size_t>(3 * spec.triangles)) {
            throw ParseError("mesh.angles: expected " + std::to_string(3 * spec.triangles) +
                             " values, got " + std::to_string(spec.angles.size()));
        }
    }
    return spec;
}

inline auto mesh_to_json(const GluingSpec& spec) -> nlohmann::json
{
    nlohmann::json j;
    j["triangles"] = spec.triangles;
    j["gluings"] = nlohmann::json::array();
    for (const auto& g : spec.gluings) {
        nlohmann::json e;
        e["a"] = nlohmann::json::array({g.a[0], g.a[1]});
        e["b"] = nlohmann::json::array({g.b[0], g.b[1]});
        if (g.flip) {
            e["flip"] = true;
        }
        j["gluings"].push_back(e);
    }
    if (!spec.vertex_targets.empty()) {
        nlohmann::json vt = nlohmann::json::object();
        for (const auto& [v, target] : spec.vertex_targets) {
            vt[std::to_string(v)] = target;
        }
        j["vertex_targets"] = vt;
    }
    if (!spec.angles.empty()) {
        j["angles"] = spec.angles;
    }
    return j;
}

/** @brief A pattern document: the per-edge thetas plus, optionally, the mesh
 * they refer to (required by the command-line tools, which have no other way
 * to learn the complex). */
struct PatternDocument {
    PatternVector pattern;
    bool has_mesh{false};
    GluingSpec mesh;
};

inline auto pattern_from_json(const nlohmann::json& j) -> PatternDocument
{
    PatternDocument doc;
    const auto& th = detail::require_field(j, "theta", "pattern");
    if (!th.is_array()) {
        throw ParseError("pattern.theta: expected an array");
    }
    for (std::size_t i = 0; i < th.size(); ++i) {
        doc.pattern.theta.push_back(
            detail::as_double(th[i], ("pattern.theta[" + std::to_string(i) + "]").c_str()));
    }
    if (j.contains("mesh")) {
        doc.has_mesh = true;
        doc.mesh = mesh_from_json(j.at("mesh"));
    }
    return doc;
}

inline auto pattern_to_json(const PatternVector& p, const GluingSpec* mesh = nullptr)
    -> nlohmann::json
{
    nlohmann::json j;
    j["theta"] = p.theta;
    if (mesh != nullptr) {
        j["mesh"] = mesh_to_json(*mesh);
    }
    return j;
}

/** @brief A solved structure with enough context to re-load and render it. */
struct SolutionDocument {
    GluingSpec mesh;
    AngleVector angles;
    double objective{0.0};
    double residual{0.0};
    double grad_norm{0.0};
    int iterations{0};
    std::vector<double> theta;   ///< pattern at the solution, canonical order
    std::vector<double> lengths; ///< hyperbolic edge lengths, canonical order
};

inline auto solution_from_json(const nlohmann::json& j) -> SolutionDocument
{
    SolutionDocument doc;
    doc.mesh = mesh_from_json(detail::require_field(j, "mesh", "solution"));
    const auto& an = detail::require_field(j, "angles", "solution");
    if (!an.is_array()) {
        throw ParseError("solution.angles: expected an array");
    }
    for (std::size_t i = 0; i < an.size(); ++i) {
        doc.angles.push_back(
            detail::as_double(an[i], ("solution.angles[" + std::to_string(i) + "]").c_str()));
    }
    if (j.contains("objective")) {
        doc.objective = detail::as_double(j.at("objective"), "solution.objective");
    }
    if (j.contains("residual")) {
        doc.residual = detail::as_double(j.at("residual"), "solution.residual");
    }
    if (j.contains("grad_norm")) {
        doc.grad_norm = detail::as_double(j.at("grad_norm"), "solution.grad_norm");
    }
    if (j.contains("iterations")) {
        doc.iterations = detail::as_int(j.at("iterations"), "solution.iterations");
    }
    if (j.contains("theta")) {
        doc.theta = j.at("theta").get<std::vector<double>>();
    }
    if (j.contains("lengths")) {
        doc.lengths = j.at("lengths").get<std::vector<double>>();
    }
    return doc;
}

inline auto solution_to_json(const TriangularDecomposition& td, const GluingSpec& mesh,
                             const SolverResult& result) -> nlohmann::json
{
    nlohmann::json j;
    j["mesh"] = mesh_to_json(mesh);
    j["angles"] = result.x;
    j["objective"] = result.objective;
    j["residual"] = result.residual;
    j["grad_norm"] = result.grad_norm;
    j["iterations"] = result.iterations;
    const PatternVector p = pattern_of(td, result.x);
    j["theta"] = p.theta;
    std::vector<double> lengths;
    lengths.reserve(static_cast<std::size_t>(td.edge_count()));
    for (int e = 0; e < td.edge_count(); ++e) {
        const Edge& ed = td.edge(e);
        lengths.push_back(side_length(result.x, ed.t1, ed.s1));
    }
    j["lengths"] = lengths;
    return j;
}

/** Parses a JSON document from a file, mapping syntax errors to ParseError. */
inline auto load_json_file(const std::string& path) -> nlohmann::json
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open file: " + path);
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
}

inline auto parse_json_text(const std::string& text) -> nlohmann::json
{
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

} // namespace idp
