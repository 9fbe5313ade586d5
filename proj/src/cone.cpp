#include "gbl/cone.hpp"

namespace gbl {

void Cone::validate() const {
    const Graph& amb = *base.ambient();
    if (!amb.has_node(vertex)) throw error("cone: vertex not in ambient graph");
    for (const auto& [i, p] : projections) {
        if (!base.shape().has_node(i))
            throw error("cone: projection for unknown base node '" + i + "'");
        const Arrow& a = amb.arrow(p);
        if (a.src != vertex)
            throw error("cone: projection '" + p + "' does not start at the vertex");
        if (a.tgt != base.node_value(i))
            throw error("cone: projection '" + p + "' does not end at the base node value");
    }
}

Cone base_restrict_cone(const Cone& c, const Subgraph& j) {
    require_subgraph(j, c.base.shape(), "base_restrict_cone");
    Cone out;
    out.vertex = c.vertex;
    out.base = restrict_diagram(c.base, j);
    for (const auto& n : j.nodes) {
        auto it = c.projections.find(n);
        if (it != c.projections.end()) out.projections[n] = it->second;
    }
    return out;
}

bool cone_commutes(const Cone& c, const PathEq& eq) {
    for (const auto& [id, a] : c.base.shape().arrows()) {
        auto pi = c.projections.find(a.src);
        auto pj = c.projections.find(a.tgt);
        if (pi == c.projections.end() || pj == c.projections.end()) continue;
        if (!eq({c.base.arrow_value(id), pi->second}, {pj->second})) return false;
    }
    return true;
}

} // namespace gbl
