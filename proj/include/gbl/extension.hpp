#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gbl/cone.hpp"
#include "gbl/diagram.hpp"

namespace gbl {

// Result of recognizing how delta' extends its restriction to J
// (Defs 3.3.1-3.3.3).
struct ExtensionKind {
    enum class Kind { Composite, CommutativeCocone, Limit, NotRecognized };
    Kind kind = Kind::NotRecognized;
    std::string new_arrow;                          // Composite
    std::string new_node;                           // Cocone / Limit
    std::map<std::string, std::string> projections; // Limit: J' node -> adjoined arrow
    Subgraph jprime;                                // Limit

    bool recognized() const { return kind != Kind::NotRecognized; }
};

// Equality/side-condition oracle for extension classification. Paths are
// sequences of *shape arrows of delta'*, outermost first; implementations map
// them into the ambient (finite-set functions or kernel terms) and decide.
struct ExtensionOracle {
    std::function<bool(const ArrowPath&, const ArrowPath&)> shape_path_eq;

    // Certificate that adjoining this arrow preserves dominance when no
    // two-path through J justifies it syntactically. Optional.
    std::function<bool(const std::string& new_arrow)> composite_cert;

    // Pairwise agreement of the candidate vertex projections for a cocone
    // adjunction when Diagram (12) triangles do not connect the new arrows.
    std::function<bool(const std::string& new_node,
                       const std::vector<std::string>& new_arrows)>
        cocone_cert;

    // True iff the adjoined vertex with the given projections is a limit cone
    // over the full subdiagram J' (Def 3.3.3 side condition).
    std::function<bool(const std::string& new_node, const Subgraph& jprime,
                       const std::map<std::string, std::string>& projections)>
        limit_cert;
};

// Recognizes a single extension step of delta' over J, per the order
// Composite, CommutativeCocone, Limit; anything else is NotRecognized.
ExtensionKind classify_extension(const Diagram& dprime, const Subgraph& j,
                                 const ExtensionOracle& eq);

// Candidate J' subgraphs for the Limit case, given the projection targets:
// the full subgraphs on the target set, on targets plus nodes incident to at
// least two of them, and on targets plus all adjacent nodes.
std::vector<Subgraph> limit_jprime_candidates(const Graph& shape_j,
                                              const std::set<std::string>& targets);

} // namespace gbl
