#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gbl/diagram.hpp"

namespace gbl {

// A path of ambient arrow ids, outermost first: {f, g} denotes f o g.
using ArrowPath = std::vector<std::string>;

// Decides equality of two parallel ambient paths. Instantiations: finite-set
// function equality, or the kernel congruence.
using PathEq = std::function<bool(const ArrowPath&, const ArrowPath&)>;

// A cone over a diagram, vertex and projections living in the ambient graph.
// Projections may be partial (sketch cones name only some of them); kernel
// and semantic cones are total.
struct Cone {
    std::string vertex;
    Diagram base;
    std::map<std::string, std::string> projections; // base shape node -> ambient arrow

    bool total() const { return projections.size() == base.shape().node_count(); }
    void validate() const;
};

// Base-restriction of a cone to a subgraph of its base shape: same vertex,
// restricted base, projections reused (Def 3.1.1).
Cone base_restrict_cone(const Cone& c, const Subgraph& j);

// Commutativity: for every base arrow f : i -> j with both projections
// present, delta(f) o proj_i == proj_j under the given oracle (Diagram (7)).
bool cone_commutes(const Cone& c, const PathEq& eq);

} // namespace gbl
