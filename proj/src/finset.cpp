#include "gbl/finset.hpp"

#include <algorithm>
#include <sstream>

namespace gbl {

const ElemSet& FinSetModel::set_of(const std::string& node) const {
    auto it = sets.find(node);
    if (it == sets.end()) throw error("model: no set for node '" + node + "'");
    return it->second;
}

const Func& FinSetModel::func_of(const std::string& arrow) const {
    auto it = funcs.find(arrow);
    if (it == funcs.end()) throw error("model: no function for arrow '" + arrow + "'");
    return it->second;
}

Elem encode_tuple(const std::map<std::string, Elem>& coords) {
    std::ostringstream s;
    s << '{';
    for (const auto& [n, e] : coords) s << n << ':' << e.size() << ':' << e << ';';
    s << '}';
    return s.str();
}

FinsetLimit finset_limit(const SetDiagram& d) {
    std::vector<std::string> nodes(d.shape.nodes().begin(), d.shape.nodes().end());
    FinsetLimit out;
    const std::size_t n = nodes.size();
    std::vector<const ElemSet*> sets;
    sets.reserve(n);
    for (const auto& nd : nodes) {
        auto it = d.sets.find(nd);
        if (it == d.sets.end()) throw error("finset_limit: node '" + nd + "' has no set");
        sets.push_back(&it->second);
    }
    if (n == 0) {
        out.elements.push_back(encode_tuple({}));
        return out;
    }
    bool empty = false;
    for (const auto& s : sets)
        if (s->empty()) empty = true;
    if (!empty) {
        std::vector<std::size_t> idx(n, 0);
        while (true) {
            std::map<std::string, Elem> coords;
            for (std::size_t i = 0; i < n; ++i) coords[nodes[i]] = (*sets[i])[idx[i]];
            bool ok = true;
            for (const auto& [id, a] : d.shape.arrows()) {
                const Func& f = d.funcs.at(id);
                auto it = f.find(coords[a.src]);
                if (it == f.end() || it->second != coords[a.tgt]) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                Elem t = encode_tuple(coords);
                out.elements.push_back(t);
                for (const auto& [nd, e] : coords) out.projections[nd][t] = e;
            }
            std::size_t i = 0;
            while (i < n && ++idx[i] == sets[i]->size()) idx[i++] = 0;
            if (i == n) break;
        }
    }
    std::sort(out.elements.begin(), out.elements.end());
    for (const auto& nd : nodes) out.projections[nd];
    return out;
}

SetDiagram eval_diagram(const FinSetModel& m, const Diagram& d) {
    SetDiagram out;
    out.shape = d.shape();
    for (const auto& n : d.shape().nodes()) out.sets[n] = m.set_of(d.node_value(n));
    for (const auto& [id, a] : d.shape().arrows()) out.funcs[id] = m.func_of(d.arrow_value(id));
    return out;
}

Elem apply_value_path(const FinSetModel& m, const std::vector<std::string>& arrows,
                      const Elem& x) {
    Elem cur = x;
    for (auto it = arrows.rbegin(); it != arrows.rend(); ++it) {
        const Func& f = m.func_of(*it);
        auto v = f.find(cur);
        if (v == f.end()) throw error("apply: element '" + cur + "' outside domain of '" + *it + "'");
        cur = v->second;
    }
    return cur;
}

std::string ModelCheckReport::to_string() const {
    std::ostringstream s;
    for (const auto& v : violations) s << v.where << ": " << v.message << "\n";
    return s.str();
}

namespace {

std::vector<std::string> value_path(const Diagram& d, const ShapePath& p) {
    std::vector<std::string> out;
    out.reserve(p.arrows.size());
    for (const auto& a : p.arrows) out.push_back(d.arrow_value(a));
    return out;
}

} // namespace

ModelCheckReport check_model(const FinSetModel& m) {
    ModelCheckReport rep;
    auto issue = [&](const std::string& where, const std::string& msg) {
        rep.violations.push_back({where, msg});
    };
    if (!m.sketch || !m.sketch->graph) {
        issue("model", "no sketch attached");
        return rep;
    }
    const Graph& g = *m.sketch->graph;

    for (const auto& n : g.nodes()) {
        auto it = m.sets.find(n);
        if (it == m.sets.end()) {
            issue("node " + n, "no set assigned");
            continue;
        }
        ElemSet sorted = it->second;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        if (sorted != it->second) issue("node " + n, "element list not sorted/unique");
    }
    for (const auto& [id, a] : g.arrows()) {
        auto it = m.funcs.find(id);
        if (it == m.funcs.end()) {
            issue("arrow " + id, "no function assigned");
            continue;
        }
        if (!m.sets.count(a.src) || !m.sets.count(a.tgt)) continue;
        const ElemSet& dom = m.sets.at(a.src);
        const ElemSet& cod = m.sets.at(a.tgt);
        for (const auto& x : dom) {
            auto v = it->second.find(x);
            if (v == it->second.end()) {
                issue("arrow " + id, "not total at '" + x + "'");
            } else if (!std::binary_search(cod.begin(), cod.end(), v->second)) {
                issue("arrow " + id, "value '" + v->second + "' outside target set");
            }
        }
        if (it->second.size() != dom.size()) issue("arrow " + id, "domain mismatch");
    }
    if (!rep.ok()) return rep;

    for (const auto& ds : m.sketch->diagrams) {
        for (const auto& e : ds.payload()) {
            auto ends = path_endpoints(ds.diagram.shape(), e.lhs);
            auto src_value = ds.diagram.node_value(ends.first);
            auto lhs = value_path(ds.diagram, e.lhs);
            auto rhs = value_path(ds.diagram, e.rhs);
            for (const auto& x : m.set_of(src_value)) {
                if (apply_value_path(m, lhs, x) != apply_value_path(m, rhs, x)) {
                    issue("diagram " + ds.name, "fails at element '" + x + "'");
                    break;
                }
            }
        }
    }

    for (const auto& sc : m.sketch->cones) {
        FinsetLimit lim = finset_limit(eval_diagram(m, sc.cone.base));
        const ElemSet& vertex = m.set_of(sc.cone.vertex);
        if (vertex.size() != lim.elements.size()) {
            issue("cone " + sc.name, "vertex cardinality differs from limit");
            continue;
        }
        auto partial = [&](const std::map<std::string, Elem>& coords) {
            return encode_tuple(coords);
        };
        std::map<Elem, long> fibers;
        for (const auto& v : vertex) {
            std::map<std::string, Elem> coords;
            for (const auto& [node, proj] : sc.cone.projections)
                coords[node] = m.func_of(proj).at(v);
            fibers[partial(coords)]++;
        }
        for (const auto& t : lim.elements) {
            std::map<std::string, Elem> coords;
            for (const auto& [node, proj] : sc.cone.projections)
                coords[node] = lim.projections.at(node).at(t);
            fibers[partial(coords)]--;
        }
        for (const auto& [key, count] : fibers)
            if (count != 0) {
                issue("cone " + sc.name, "no projection-compatible bijection with the limit");
                break;
            }
    }
    return rep;
}

std::string model_to_text(const FinSetModel& m) {
    std::ostringstream s;
    for (const auto& [n, set] : m.sets) {
        s << "node " << n << " = {";
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (i) s << ", ";
            s << set[i];
        }
        s << "}\n";
    }
    for (const auto& [a, f] : m.funcs) {
        s << "arrow " << a << " =";
        for (const auto& [x, y] : f) s << " " << x << ">" << y << ";";
        s << "\n";
    }
    return s.str();
}

} // namespace gbl
