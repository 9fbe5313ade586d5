#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gbl/cone.hpp"
#include "gbl/diagram.hpp"

namespace gbl {

// A path of shape arrows, outermost first; empty = the identity at `at`
// (needed so a diagram can assert v o u = Id[B] without an ambient loop).
struct ShapePath {
    std::vector<std::string> arrows;
    std::string at; // node anchoring the empty path; ignored otherwise

    bool empty() const { return arrows.empty(); }
};

struct PathEquation {
    ShapePath lhs;
    ShapePath rhs;
};

// One member of the sketch's diagram set D_S. When `equations` is empty the
// payload is every pair of distinct parallel arrow-simple paths of length
// >= 1 in the shape.
struct DiagramSpec {
    std::string name;
    Diagram diagram;
    std::vector<PathEquation> equations;

    // The effective equations (explicit ones, or the default payload).
    std::vector<PathEquation> payload() const;
};

// Source/target endpoints of a shape path within a diagram's shape.
// Throws on non-composable paths. Empty paths use `at`.
std::pair<std::string, std::string> path_endpoints(const Graph& shape, const ShapePath& p);

struct SketchCone {
    std::string name;
    Cone cone; // projections may be partial
};

// A finite-limit sketch: graph, diagrams D_S, cones.
struct FiniteLimitSketch {
    std::string name;
    std::shared_ptr<const Graph> graph;
    std::vector<DiagramSpec> diagrams;
    std::vector<SketchCone> cones;

    const DiagramSpec* find_diagram(const std::string& n) const;
    const SketchCone* find_cone(const std::string& n) const;
    // The cone whose vertex is this node, if any.
    const SketchCone* cone_of_vertex(const std::string& node) const;
};

struct ValidationIssue {
    std::string where;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string to_string() const;
};

// Checks the sketch type invariants: ambient agreement, arrow/projection
// typing, well-formed path equations, at most one cone per vertex, and
// acyclicity of the vertex -> base-node dependency (needed for interning
// cone vertices as canonical limits).
ValidationReport validate(const FiniteLimitSketch& s);

// A sketch together with the embedding of the Cat sketch (taken as an
// inclusion, Remark 5.1.4); `cat_part` names the Cat nodes/arrows.
struct ConstructorSpaceSketch {
    FiniteLimitSketch sketch;
    Subgraph cat_part;
};

// E[S]: a constructor space with one freely adjoined global element 1 -> v.
struct ESketch {
    ConstructorSpaceSketch base;
    std::string target_node;
    std::string constant; // the fresh arrow's id
};

ESketch adjoin_global_element(const ConstructorSpaceSketch& e, const std::string& v);

} // namespace gbl
