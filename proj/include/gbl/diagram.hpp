#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "gbl/canonical.hpp"
#include "gbl/graph.hpp"

namespace gbl {

// A diagram: a graph homomorphism from a shape graph into an ambient graph,
// taken up to isomorphism of the shape. Equality is canonical-key equality.
class Diagram {
public:
    Diagram() = default;
    Diagram(Graph shape, std::shared_ptr<const Graph> ambient,
            std::map<std::string, std::string> node_assign,
            std::map<std::string, std::string> arrow_assign);

    const Graph& shape() const { return shape_; }
    const std::shared_ptr<const Graph>& ambient() const { return ambient_; }
    const std::string& node_value(const std::string& n) const;
    const std::string& arrow_value(const std::string& a) const;
    const std::map<std::string, std::string>& node_assignment() const { return node_assign_; }
    const std::map<std::string, std::string>& arrow_assignment() const { return arrow_assign_; }

    GraphMorphism assignment() const;

    const std::string& canonical_key() const;

    bool same_ambient(const Diagram& other) const;
    bool same_ambient_graph(const Graph& g) const;

private:
    Graph shape_;
    std::shared_ptr<const Graph> ambient_;
    std::map<std::string, std::string> node_assign_;
    std::map<std::string, std::string> arrow_assign_;
    mutable std::optional<std::string> key_;
};

// True iff a shape isomorphism makes the two assignments agree (Diagram (1)).
// Requires both diagrams to live in the same ambient graph.
bool diagrams_equal(const Diagram& d1, const Diagram& d2);

// delta restricted along the inclusion of a subgraph of its shape.
Diagram restrict_diagram(const Diagram& d, const Subgraph& j);

// Optional labels attached to shape nodes/arrows (the superscript device).
// Annotations never change the underlying diagram.
struct AnnotatedDiagram {
    Diagram diagram;
    std::map<std::string, std::string> node_annotations;
    std::map<std::string, std::string> arrow_annotations;
};

} // namespace gbl
