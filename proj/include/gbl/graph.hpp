#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "gbl/error.hpp"

namespace gbl {

struct Arrow {
    std::string id;
    std::string src;
    std::string tgt;

    friend bool operator==(const Arrow&, const Arrow&) = default;
    friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

// A finite graph with string-named nodes and arrows. Identifiers are unique
// within their kind; arrow endpoints must be nodes of the graph.
class Graph {
public:
    Graph() = default;

    void add_node(const std::string& n);
    void add_arrow(const std::string& id, const std::string& src, const std::string& tgt);

    bool has_node(const std::string& n) const { return nodes_.count(n) != 0; }
    bool has_arrow(const std::string& id) const { return arrows_.count(id) != 0; }
    const Arrow& arrow(const std::string& id) const;

    const std::set<std::string>& nodes() const { return nodes_; }
    const std::map<std::string, Arrow>& arrows() const { return arrows_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t arrow_count() const { return arrows_.size(); }

    std::vector<Arrow> arrows_from(const std::string& n) const;
    std::vector<Arrow> arrows_into(const std::string& n) const;
    // All arrows with both endpoints in the given node set.
    std::vector<Arrow> arrows_between(const std::set<std::string>& ns) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::set<std::string> nodes_;
    std::map<std::string, Arrow> arrows_;
};

// A subgraph given by explicit identifier subsets of some host graph.
struct Subgraph {
    std::set<std::string> nodes;
    std::set<std::string> arrows;

    static Subgraph full_of(const Graph& g);
    // The full subgraph on a node set: all host arrows between those nodes.
    static Subgraph full_on(const Graph& g, const std::set<std::string>& ns);

    friend bool operator==(const Subgraph&, const Subgraph&) = default;
};

// Checks that `j` names existing elements of `g` and is endpoint-closed.
bool is_subgraph(const Subgraph& j, const Graph& g);
void require_subgraph(const Subgraph& j, const Graph& g, const char* where);

// True iff every arrow of `g` between nodes of `j` lies in `j`.
bool is_full(const Subgraph& j, const Graph& g);

// Materialize the subgraph as a Graph.
Graph induced_graph(const Graph& g, const Subgraph& j);

struct GraphMorphism {
    std::shared_ptr<const Graph> dom;
    std::shared_ptr<const Graph> cod;
    std::map<std::string, std::string> node_map;
    std::map<std::string, std::string> arrow_map;

    // Totality plus source/target preservation through node_map.
    void validate() const;
    bool is_valid() const;
};

} // namespace gbl
