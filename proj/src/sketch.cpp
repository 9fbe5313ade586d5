#include "gbl/sketch.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace gbl {

std::pair<std::string, std::string> path_endpoints(const Graph& shape, const ShapePath& p) {
    if (p.empty()) {
        if (!shape.has_node(p.at)) throw error("path: empty path at unknown node '" + p.at + "'");
        return {p.at, p.at};
    }
    // outermost first: arrows[k] is applied after arrows[k+1]
    std::string tgt = shape.arrow(p.arrows.front()).tgt;
    std::string cur = tgt;
    for (const auto& id : p.arrows) {
        const Arrow& a = shape.arrow(id);
        if (a.tgt != cur) throw error("path: arrows do not compose at '" + id + "'");
        cur = a.src;
    }
    return {cur, tgt};
}

namespace {

// Enumerate arrow-simple paths (no repeated arrow) between all node pairs.
void simple_paths_from(const Graph& g, const std::string& start, std::vector<std::string>& cur,
                       std::set<std::string>& used, const std::string& at,
                       std::map<std::pair<std::string, std::string>,
                                std::vector<std::vector<std::string>>>& out) {
    for (const auto& a : g.arrows_from(at)) {
        if (used.count(a.id)) continue;
        used.insert(a.id);
        cur.push_back(a.id);
        std::vector<std::string> rev(cur.rbegin(), cur.rend()); // outermost first
        out[{start, a.tgt}].push_back(rev);
        simple_paths_from(g, start, cur, used, a.tgt, out);
        cur.pop_back();
        used.erase(a.id);
    }
}

} // namespace

std::vector<PathEquation> DiagramSpec::payload() const {
    if (!equations.empty()) return equations;
    std::map<std::pair<std::string, std::string>, std::vector<std::vector<std::string>>> paths;
    const Graph& g = diagram.shape();
    for (const auto& n : g.nodes()) {
        std::vector<std::string> cur;
        std::set<std::string> used;
        simple_paths_from(g, n, cur, used, n, paths);
    }
    std::vector<PathEquation> out;
    for (const auto& [ends, ps] : paths) {
        for (std::size_t i = 0; i < ps.size(); ++i)
            for (std::size_t k = i + 1; k < ps.size(); ++k)
                out.push_back(PathEquation{ShapePath{ps[i], ""}, ShapePath{ps[k], ""}});
    }
    return out;
}

const DiagramSpec* FiniteLimitSketch::find_diagram(const std::string& n) const {
    for (const auto& d : diagrams)
        if (d.name == n) return &d;
    return nullptr;
}

const SketchCone* FiniteLimitSketch::find_cone(const std::string& n) const {
    for (const auto& c : cones)
        if (c.name == n) return &c;
    return nullptr;
}

const SketchCone* FiniteLimitSketch::cone_of_vertex(const std::string& node) const {
    for (const auto& c : cones)
        if (c.cone.vertex == node) return &c;
    return nullptr;
}

std::string ValidationReport::to_string() const {
    std::ostringstream s;
    for (const auto& i : issues) s << i.where << ": " << i.message << "\n";
    return s.str();
}

ValidationReport validate(const FiniteLimitSketch& s) {
    ValidationReport rep;
    auto issue = [&](const std::string& where, const std::string& msg) {
        rep.issues.push_back({where, msg});
    };
    if (!s.graph) {
        issue(s.name, "sketch has no graph");
        return rep;
    }
    for (const auto& d : s.diagrams) {
        if (!d.diagram.same_ambient_graph(*s.graph)) {
            issue("diagram " + d.name, "ambient is not the sketch graph");
            continue;
        }
        for (const auto& e : d.equations) {
            try {
                auto l = path_endpoints(d.diagram.shape(), e.lhs);
                auto r = path_endpoints(d.diagram.shape(), e.rhs);
                if (l != r) issue("diagram " + d.name, "equation sides are not parallel");
            } catch (const error& err) {
                issue("diagram " + d.name, err.what());
            }
        }
    }
    std::set<std::string> vertices;
    for (const auto& c : s.cones) {
        if (!c.cone.base.same_ambient_graph(*s.graph)) {
            issue("cone " + c.name, "base ambient is not the sketch graph");
            continue;
        }
        if (!s.graph->has_node(c.cone.vertex)) {
            issue("cone " + c.name, "vertex is not a sketch node");
            continue;
        }
        try {
            c.cone.validate();
        } catch (const error& err) {
            issue("cone " + c.name, err.what());
        }
        if (!vertices.insert(c.cone.vertex).second)
            issue("cone " + c.name, "vertex already has a cone");
    }
    // vertex -> base-node dependency must be a DAG
    std::map<std::string, int> state; // 0 unvisited, 1 in progress, 2 done
    std::function<bool(const std::string&)> visit = [&](const std::string& v) -> bool {
        int& st = state[v];
        if (st == 1) return false;
        if (st == 2) return true;
        st = 1;
        if (const SketchCone* c = s.cone_of_vertex(v)) {
            for (const auto& [n, val] : c->cone.base.node_assignment())
                if (!visit(val)) return false;
        }
        st = 2;
        return true;
    };
    for (const auto& c : s.cones)
        if (!visit(c.cone.vertex)) {
            issue("cone " + c.name, "cyclic cone-vertex dependency");
            break;
        }
    return rep;
}

ESketch adjoin_global_element(const ConstructorSpaceSketch& e, const std::string& v) {
    const FiniteLimitSketch& s = e.sketch;
    if (!s.graph->has_node(v)) throw error("adjoin_global_element: unknown node '" + v + "'");
    const SketchCone* one = s.cone_of_vertex("1");
    if (!s.graph->has_node("1") || !one || one->cone.base.shape().node_count() != 0)
        throw error("adjoin_global_element: sketch lacks the terminal node with its empty cone");

    ESketch out;
    out.base = e;
    out.target_node = v;
    std::string name = "S";
    int k = 2;
    while (s.graph->has_arrow(name)) name = "S" + std::to_string(k++);
    out.constant = name;

    auto g = std::make_shared<Graph>(*s.graph);
    g->add_arrow(name, "1", v);
    FiniteLimitSketch& ns = out.base.sketch;
    ns.graph = g;
    // diagrams and cones carry the ambient by pointer; rebuild them on the
    // extended graph so the sketch stays internally consistent
    for (auto& d : ns.diagrams)
        d.diagram = Diagram(d.diagram.shape(), g, d.diagram.node_assignment(),
                            d.diagram.arrow_assignment());
    for (auto& c : ns.cones)
        c.cone.base = Diagram(c.cone.base.shape(), g, c.cone.base.node_assignment(),
                              c.cone.base.arrow_assignment());
    return out;
}

} // namespace gbl
