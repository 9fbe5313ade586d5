#pragma once

#include <string>
#include <vector>

namespace gbl {

// Canonical labeling of a small directed multigraph with colored nodes and
// colored edges. Two colored graphs get the same key iff they are isomorphic
// by a color-preserving isomorphism. Intended for shape graphs of diagrams;
// sizes stay tiny, so refinement plus exhaustive backtracking is fine.
struct ColoredGraph {
    std::vector<std::string> node_color;
    struct Edge {
        int src;
        int tgt;
        std::string color;
    };
    std::vector<Edge> edges;
};

struct CanonicalForm {
    // order[p] = original node index placed at canonical position p
    std::vector<int> order;
    std::string key;
};

CanonicalForm canonicalize(const ColoredGraph& g);

} // namespace gbl
