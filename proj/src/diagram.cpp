#include "gbl/diagram.hpp"

#include <algorithm>

namespace gbl {

Diagram::Diagram(Graph shape, std::shared_ptr<const Graph> ambient,
                 std::map<std::string, std::string> node_assign,
                 std::map<std::string, std::string> arrow_assign)
    : shape_(std::move(shape)),
      ambient_(std::move(ambient)),
      node_assign_(std::move(node_assign)),
      arrow_assign_(std::move(arrow_assign)) {
    assignment().validate();
}

const std::string& Diagram::node_value(const std::string& n) const {
    auto it = node_assign_.find(n);
    if (it == node_assign_.end()) throw error("diagram: unknown shape node '" + n + "'");
    return it->second;
}

const std::string& Diagram::arrow_value(const std::string& a) const {
    auto it = arrow_assign_.find(a);
    if (it == arrow_assign_.end()) throw error("diagram: unknown shape arrow '" + a + "'");
    return it->second;
}

GraphMorphism Diagram::assignment() const {
    GraphMorphism m;
    m.dom = std::make_shared<Graph>(shape_);
    m.cod = ambient_;
    m.node_map = node_assign_;
    m.arrow_map = arrow_assign_;
    return m;
}

const std::string& Diagram::canonical_key() const {
    if (!key_) {
        ColoredGraph cg;
        std::vector<std::string> names(shape_.nodes().begin(), shape_.nodes().end());
        std::map<std::string, int> index;
        for (int i = 0; i < static_cast<int>(names.size()); ++i) index[names[i]] = i;
        cg.node_color.reserve(names.size());
        for (const auto& n : names) cg.node_color.push_back(node_value(n));
        for (const auto& [id, a] : shape_.arrows())
            cg.edges.push_back({index[a.src], index[a.tgt], arrow_value(id)});
        key_ = canonicalize(cg).key;
    }
    return *key_;
}

bool Diagram::same_ambient(const Diagram& other) const {
    if (ambient_ == other.ambient_) return true;
    if (!ambient_ || !other.ambient_) return false;
    return *ambient_ == *other.ambient_;
}

bool Diagram::same_ambient_graph(const Graph& g) const {
    return ambient_ && *ambient_ == g;
}

bool diagrams_equal(const Diagram& d1, const Diagram& d2) {
    if (!d1.same_ambient(d2)) throw error("diagrams_equal: distinct ambient graphs");
    return d1.canonical_key() == d2.canonical_key();
}

Diagram restrict_diagram(const Diagram& d, const Subgraph& j) {
    require_subgraph(j, d.shape(), "restrict_diagram");
    Graph sub = induced_graph(d.shape(), j);
    std::map<std::string, std::string> na, aa;
    for (const auto& n : j.nodes) na[n] = d.node_value(n);
    for (const auto& a : j.arrows) aa[a] = d.arrow_value(a);
    return Diagram(std::move(sub), d.ambient(), std::move(na), std::move(aa));
}

} // namespace gbl
