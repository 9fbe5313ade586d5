#include "gbl/kernel.hpp"

#include <algorithm>
#include <sstream>

#include "gbl/canonical.hpp"

namespace gbl {

namespace {

template <typename T>
int intern_into(std::deque<T>& pool, std::map<std::string, int>& index, const std::string& key,
                T&& value) {
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(pool.size());
    pool.push_back(std::move(value));
    index.emplace(key, id);
    return id;
}

} // namespace

ObId TermUniverse::intern_node_ob(const std::string& sketch_node) {
    ObTermData d;
    d.kind = ObTermData::Kind::Node;
    d.node = sketch_node;
    d.key = "N(" + sketch_node + ")";
    std::string key = d.key;
    return intern_into(obs_, ob_index_, key, std::move(d));
}

ObId TermUniverse::intern_lim_ob(DiagId base) {
    ObTermData d;
    d.kind = ObTermData::Kind::Lim;
    d.diagram = base;
    d.key = "L(" + std::to_string(base) + ")";
    std::string key = d.key;
    return intern_into(obs_, ob_index_, key, std::move(d));
}

DiagramInterned TermUniverse::intern_diagram(const TermDiagram& raw) {
    std::vector<std::string> names(raw.shape.nodes().begin(), raw.shape.nodes().end());
    std::map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(names.size()); ++i) index[names[i]] = i;
    ColoredGraph cg;
    cg.node_color.reserve(names.size());
    for (const auto& n : names) cg.node_color.push_back("o" + std::to_string(raw.nodes.at(n)));
    std::vector<std::string> arrow_names;
    for (const auto& [id, a] : raw.shape.arrows()) {
        cg.edges.push_back({index[a.src], index[a.tgt], "a" + std::to_string(raw.arrows.at(id))});
        arrow_names.push_back(id);
    }
    CanonicalForm cf = canonicalize(cg);

    DiagramInterned out;
    std::vector<int> pos(names.size());
    for (int p = 0; p < static_cast<int>(cf.order.size()); ++p) pos[cf.order[p]] = p;
    for (std::size_t i = 0; i < names.size(); ++i)
        out.node_map[names[i]] = "n" + std::to_string(pos[index[names[i]]]);

    struct E {
        int s, t;
        std::string color;
        std::string raw;
    };
    std::vector<E> es;
    for (const auto& id : arrow_names) {
        const Arrow& a = raw.shape.arrow(id);
        es.push_back({pos[index[a.src]], pos[index[a.tgt]],
                      "a" + std::to_string(raw.arrows.at(id)), id});
    }
    std::sort(es.begin(), es.end(), [](const E& x, const E& y) {
        return std::tie(x.s, x.t, x.color, x.raw) < std::tie(y.s, y.t, y.color, y.raw);
    });
    TermDiagram canon;
    for (std::size_t p = 0; p < names.size(); ++p) {
        std::string cn = "n" + std::to_string(p);
        canon.shape.add_node(cn);
        canon.nodes[cn] = raw.nodes.at(names[cf.order[p]]);
    }
    for (std::size_t k = 0; k < es.size(); ++k) {
        std::string ce = "e" + std::to_string(k);
        canon.shape.add_arrow(ce, "n" + std::to_string(es[k].s), "n" + std::to_string(es[k].t));
        canon.arrows[ce] = raw.arrows.at(es[k].raw);
        out.arrow_map[es[k].raw] = ce;
    }
    out.id = intern_into(diagrams_, diagram_index_, cf.key, std::move(canon));
    return out;
}

ConeId TermUniverse::intern_cone(ObId vertex, DiagId base, std::map<std::string, ArrId> projections) {
    const TermDiagram& b = diagrams_[base];
    for (const auto& [n, p] : projections)
        if (!b.shape.has_node(n)) throw error("cone: projection for unknown base node '" + n + "'");
    std::vector<std::string> names(b.shape.nodes().begin(), b.shape.nodes().end());
    std::map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(names.size()); ++i) index[names[i]] = i;
    ColoredGraph cg;
    for (const auto& n : names) {
        auto it = projections.find(n);
        std::string proj = it == projections.end() ? "-" : std::to_string(it->second);
        cg.node_color.push_back("o" + std::to_string(b.nodes.at(n)) + "|p" + proj);
    }
    for (const auto& [id, a] : b.shape.arrows())
        cg.edges.push_back({index[a.src], index[a.tgt], "a" + std::to_string(b.arrows.at(id))});
    std::string key = "C(" + std::to_string(vertex) + ";" + std::to_string(base) + ";" +
                      canonicalize(cg).key + ")";
    TermCone c;
    c.vertex = vertex;
    c.base = base;
    c.projections = std::move(projections);
    return intern_into(cones_, cone_index_, key, std::move(c));
}

StepId TermUniverse::intern_gen(const std::string& arrow, ObId src, ObId tgt) {
    StepData s;
    s.kind = StepData::Kind::Gen;
    s.gen = arrow;
    s.src = src;
    s.tgt = tgt;
    s.key = "g:" + arrow;
    std::string key = s.key;
    return intern_into(steps_, step_index_, key, std::move(s));
}

StepId TermUniverse::intern_proj(ObId lim, const std::string& node) {
    const ObTermData& o = obs_[lim];
    if (o.kind != ObTermData::Kind::Lim) throw error("proj: object is not a canonical limit");
    const TermDiagram& d = diagrams_[o.diagram];
    if (!d.shape.has_node(node)) throw error("proj: unknown base node '" + node + "'");
    StepData s;
    s.kind = StepData::Kind::Proj;
    s.lim = lim;
    s.proj_node = node;
    s.src = lim;
    s.tgt = d.nodes.at(node);
    s.key = "p:" + std::to_string(lim) + ":" + node;
    std::string key = s.key;
    return intern_into(steps_, step_index_, key, std::move(s));
}

StepId TermUniverse::intern_fillin(ConeId cone) {
    const TermCone& c = cones_[cone];
    StepData s;
    s.kind = StepData::Kind::Fillin;
    s.cone = cone;
    s.src = c.vertex;
    s.tgt = intern_lim_ob(c.base);
    s.key = "f:" + std::to_string(cone);
    std::string key = s.key;
    return intern_into(steps_, step_index_, key, std::move(s));
}

ArrId TermUniverse::intern_arr(ObId src, ObId tgt, std::vector<StepId> steps) {
    if (steps.empty()) {
        if (src != tgt) throw error("arr: empty path needs equal endpoints");
    } else {
        ObId cur = src;
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
            const StepData& s = steps_[*it];
            if (s.src != cur) throw error("arr: steps do not compose");
            cur = s.tgt;
        }
        if (cur != tgt) throw error("arr: endpoint mismatch");
    }
    std::ostringstream k;
    k << "A" << src << ">" << tgt << "[";
    for (auto s : steps) k << s << ",";
    k << "]";
    ArrTermData d;
    d.src = src;
    d.tgt = tgt;
    d.steps = std::move(steps);
    d.key = k.str();
    std::string key = d.key;
    return intern_into(arrs_, arr_index_, key, std::move(d));
}

ArrId TermUniverse::compose(ArrId g, ArrId f) {
    const ArrTermData a = arrs_[g];
    const ArrTermData b = arrs_[f];
    if (b.tgt != a.src) throw error("compose: terms are not composable");
    std::vector<StepId> steps = a.steps;
    steps.insert(steps.end(), b.steps.begin(), b.steps.end());
    return intern_arr(b.src, a.tgt, std::move(steps));
}

std::string TermUniverse::show_ob(ObId i) const {
    const ObTermData& o = obs_[i];
    if (o.kind == ObTermData::Kind::Node) return "(node " + o.node + ")";
    return "(lim " + show_diagram(o.diagram) + ")";
}

std::string TermUniverse::show_diagram(DiagId i) const {
    const TermDiagram& d = diagrams_[i];
    std::ostringstream s;
    s << "(diag (nodes";
    for (const auto& [n, ob] : d.nodes) s << " (" << n << " " << show_ob(ob) << ")";
    s << ") (arrows";
    for (const auto& [e, arr] : d.arrows) {
        const Arrow& a = d.shape.arrow(e);
        s << " (" << e << " " << a.src << " " << a.tgt << " " << show_arr(arr) << ")";
    }
    s << "))";
    return s.str();
}

std::string TermUniverse::show_cone(ConeId i) const {
    const TermCone& c = cones_[i];
    std::ostringstream s;
    s << "(cone " << show_ob(c.vertex) << " " << show_diagram(c.base) << " (projs";
    for (const auto& [n, p] : c.projections) s << " (" << n << " " << show_arr(p) << ")";
    s << "))";
    return s.str();
}

std::string TermUniverse::show_arr(ArrId i) const {
    const ArrTermData& a = arrs_[i];
    std::ostringstream s;
    s << "(arr " << show_ob(a.src) << " " << show_ob(a.tgt) << " (steps";
    for (auto st : a.steps) {
        const StepData& sd = steps_[st];
        switch (sd.kind) {
            case StepData::Kind::Gen:
                s << " (gen " << sd.gen << ")";
                break;
            case StepData::Kind::Proj:
                s << " (proj " << show_ob(sd.lim) << " " << sd.proj_node << ")";
                break;
            case StepData::Kind::Fillin:
                s << " (fillin " << show_cone(sd.cone) << ")";
                break;
        }
    }
    s << "))";
    return s.str();
}

const char* rule_name(Rule r) {
    switch (r) {
        case Rule::EXOB: return "EXOB";
        case Rule::EXARR: return "EXARR";
        case Rule::EXCOMP: return "EXCOMP";
        case Rule::EXID: return "EXID";
        case Rule::EXLIM: return "EXLIM";
        case Rule::EXFIA: return "EXFIA";
        case Rule::REF: return "REF";
        case Rule::TRANS: return "TRANS";
        case Rule::EXDIAG: return "EXDIAG";
        case Rule::COMPDIAG: return "COMPDIAG";
        case Rule::IDL: return "IDL";
        case Rule::IDR: return "IDR";
        case Rule::ASSOC: return "ASSOC";
        case Rule::CFIA: return "CFIA";
        case Rule::BANGFIA: return "BANGFIA";
    }
    return "?";
}

Rule rule_from_name(const std::string& n) {
    for (int i = 0; i <= static_cast<int>(Rule::BANGFIA); ++i)
        if (n == rule_name(static_cast<Rule>(i))) return static_cast<Rule>(i);
    throw error("unknown rule '" + n + "'");
}

} // namespace gbl
