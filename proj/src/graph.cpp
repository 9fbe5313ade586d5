#include "gbl/graph.hpp"

namespace gbl {

void Graph::add_node(const std::string& n) {
    if (n.empty()) throw error("graph: empty node name");
    if (!nodes_.insert(n).second) throw error("graph: duplicate node '" + n + "'");
}

void Graph::add_arrow(const std::string& id, const std::string& src, const std::string& tgt) {
    if (id.empty()) throw error("graph: empty arrow name");
    if (!has_node(src)) throw error("graph: arrow '" + id + "' has unknown source '" + src + "'");
    if (!has_node(tgt)) throw error("graph: arrow '" + id + "' has unknown target '" + tgt + "'");
    if (arrows_.count(id)) throw error("graph: duplicate arrow '" + id + "'");
    arrows_.emplace(id, Arrow{id, src, tgt});
}

const Arrow& Graph::arrow(const std::string& id) const {
    auto it = arrows_.find(id);
    if (it == arrows_.end()) throw error("graph: unknown arrow '" + id + "'");
    return it->second;
}

std::vector<Arrow> Graph::arrows_from(const std::string& n) const {
    std::vector<Arrow> out;
    for (const auto& [id, a] : arrows_)
        if (a.src == n) out.push_back(a);
    return out;
}

std::vector<Arrow> Graph::arrows_into(const std::string& n) const {
    std::vector<Arrow> out;
    for (const auto& [id, a] : arrows_)
        if (a.tgt == n) out.push_back(a);
    return out;
}

std::vector<Arrow> Graph::arrows_between(const std::set<std::string>& ns) const {
    std::vector<Arrow> out;
    for (const auto& [id, a] : arrows_)
        if (ns.count(a.src) && ns.count(a.tgt)) out.push_back(a);
    return out;
}

Subgraph Subgraph::full_of(const Graph& g) {
    Subgraph j;
    j.nodes = g.nodes();
    for (const auto& [id, a] : g.arrows()) j.arrows.insert(id);
    return j;
}

Subgraph Subgraph::full_on(const Graph& g, const std::set<std::string>& ns) {
    Subgraph j;
    j.nodes = ns;
    for (const auto& a : g.arrows_between(ns)) j.arrows.insert(a.id);
    return j;
}

bool is_subgraph(const Subgraph& j, const Graph& g) {
    for (const auto& n : j.nodes)
        if (!g.has_node(n)) return false;
    for (const auto& id : j.arrows) {
        if (!g.has_arrow(id)) return false;
        const Arrow& a = g.arrow(id);
        if (!j.nodes.count(a.src) || !j.nodes.count(a.tgt)) return false;
    }
    return true;
}

void require_subgraph(const Subgraph& j, const Graph& g, const char* where) {
    if (!is_subgraph(j, g)) throw error(std::string(where) + ": not a subgraph");
}

bool is_full(const Subgraph& j, const Graph& g) {
    require_subgraph(j, g, "is_full");
    for (const auto& [id, a] : g.arrows())
        if (j.nodes.count(a.src) && j.nodes.count(a.tgt) && !j.arrows.count(id)) return false;
    return true;
}

Graph induced_graph(const Graph& g, const Subgraph& j) {
    require_subgraph(j, g, "induced_graph");
    Graph out;
    for (const auto& n : j.nodes) out.add_node(n);
    for (const auto& id : j.arrows) {
        const Arrow& a = g.arrow(id);
        out.add_arrow(id, a.src, a.tgt);
    }
    return out;
}

void GraphMorphism::validate() const {
    if (!dom || !cod) throw error("morphism: missing dom/cod");
    for (const auto& n : dom->nodes()) {
        auto it = node_map.find(n);
        if (it == node_map.end()) throw error("morphism: node '" + n + "' unmapped");
        if (!cod->has_node(it->second))
            throw error("morphism: node '" + n + "' maps outside codomain");
    }
    for (const auto& [id, a] : dom->arrows()) {
        auto it = arrow_map.find(id);
        if (it == arrow_map.end()) throw error("morphism: arrow '" + id + "' unmapped");
        if (!cod->has_arrow(it->second))
            throw error("morphism: arrow '" + id + "' maps outside codomain");
        const Arrow& b = cod->arrow(it->second);
        if (b.src != node_map.at(a.src) || b.tgt != node_map.at(a.tgt))
            throw error("morphism: arrow '" + id + "' does not preserve endpoints");
    }
}

bool GraphMorphism::is_valid() const {
    try {
        validate();
        return true;
    } catch (const error&) {
        return false;
    }
}

} // namespace gbl
