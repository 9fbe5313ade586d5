#include <algorithm>
#include <sstream>

#include "gbl/kernel.hpp"

namespace gbl {

KnowledgeBase::KnowledgeBase(const ConstructorSpaceSketch& s) : sketch_(&s), eq_(&u_) {
    ValidationReport rep = validate(s.sketch);
    if (!rep.ok()) throw error("kb: sketch invalid:\n" + rep.to_string());
}

void KnowledgeBase::record(std::string op, std::vector<std::string> args) {
    log_.push_back(LogRecord{std::move(op), std::move(args)});
}

void KnowledgeBase::insert_fact(ArrId a, ArrId b, const std::string& provenance) {
    facts_.push_back(Fact{a, b, provenance});
    eq_.add_fact(a, b);
}

void KnowledgeBase::insert_fact_raw(ArrId a, ArrId b, const std::string& provenance) {
    std::string prov = provenance;
    std::replace(prov.begin(), prov.end(), ' ', '_');
    record("fact", {u_.show_arr(a), u_.show_arr(b), prov});
    insert_fact(a, b, prov);
}

ObId KnowledgeBase::intern_ob_impl(const std::string& node) {
    auto it = node_cache_.find(node);
    if (it != node_cache_.end()) return it->second;
    if (!sketch_->sketch.graph->has_node(node)) throw error("EXOB: unknown node '" + node + "'");
    ObId result;
    if (const SketchCone* c = sketch_->sketch.cone_of_vertex(node)) {
        // sketch cone vertices are the canonical limits of their bases
        const Diagram& b = c->cone.base;
        TermDiagram raw;
        raw.shape = b.shape();
        for (const auto& n : b.shape().nodes()) raw.nodes[n] = intern_ob_impl(b.node_value(n));
        for (const auto& [e, a] : b.shape().arrows())
            raw.arrows[e] = intern_arr_impl(b.arrow_value(e));
        DiagramInterned base = u_.intern_diagram(raw);
        result = u_.intern_lim_ob(base.id);
        vertex_info_[node] = base;
    } else {
        result = u_.intern_node_ob(node);
    }
    node_cache_[node] = result;
    return result;
}

ArrId KnowledgeBase::intern_arr_impl(const std::string& arrow) {
    auto it = arrow_cache_.find(arrow);
    if (it != arrow_cache_.end()) return it->second;
    const Arrow& a = sketch_->sketch.graph->arrow(arrow);
    ObId src = intern_ob_impl(a.src);
    ObId tgt = intern_ob_impl(a.tgt);
    ArrId result = -1;
    if (const SketchCone* c = sketch_->sketch.cone_of_vertex(a.src)) {
        for (const auto& [n, p] : c->cone.projections) {
            if (p != arrow) continue;
            // named cone projections are canonical projections
            const DiagramInterned& info = vertex_info_.at(a.src);
            StepId st = u_.intern_proj(src, info.node_map.at(n));
            result = u_.intern_arr(src, tgt, {st});
            break;
        }
    }
    if (result < 0) {
        StepId st = u_.intern_gen(arrow, src, tgt);
        result = u_.intern_arr(src, tgt, {st});
    }
    eq_.register_term(result);
    arrow_cache_[arrow] = result;
    return result;
}

ObId KnowledgeBase::ex_ob(const std::string& node) {
    bool fresh = !node_cache_.count(node);
    ObId r = intern_ob_impl(node);
    if (fresh) record("exob", {node});
    return r;
}

ArrId KnowledgeBase::ex_arr(const std::string& arrow) {
    bool fresh = !arrow_cache_.count(arrow);
    ArrId r = intern_arr_impl(arrow);
    if (fresh) record("exarr", {arrow});
    return r;
}

ArrId KnowledgeBase::ex_comp(ArrId g, ArrId f) {
    ArrId r = u_.compose(g, f);
    eq_.register_term(r);
    return r;
}

ArrId KnowledgeBase::ex_id(ObId c) {
    ArrId r = u_.intern_id(c);
    eq_.register_term(r);
    return r;
}

ArrId KnowledgeBase::proj(ObId lim, const std::string& canonical_node) {
    StepId st = u_.intern_proj(lim, canonical_node);
    ArrId r = u_.intern_arr(u_.step(st).src, u_.step(st).tgt, {st});
    eq_.register_term(r);
    return r;
}

ObId KnowledgeBase::ex_lim(DiagId d) {
    ObId L = u_.intern_lim_ob(d);
    if (!lims_built_.count(d)) {
        lims_built_.insert(d);
        record("exlim", {u_.show_diagram(d)});
        // the limit cone commutes: delta(e) o Proj_i == Proj_j per base arrow
        const TermDiagram& td = u_.diagram(d);
        for (const auto& [e, a] : td.shape.arrows()) {
            ArrId w = td.arrows.at(e);
            ArrId lhs = ex_comp(w, proj(L, a.src));
            ArrId rhs = proj(L, a.tgt);
            insert_fact(lhs, rhs, "EXLIM");
        }
    }
    return L;
}

bool KnowledgeBase::cone_commutative(const TermCone& c) {
    const TermDiagram& base = u_.diagram(c.base);
    for (const auto& n : base.shape.nodes())
        if (!c.projections.count(n)) return false;
    for (const auto& [e, a] : base.shape.arrows()) {
        ArrId w = base.arrows.at(e);
        ArrId lhs = ex_comp(w, c.projections.at(a.src));
        if (!arrows_equal(lhs, c.projections.at(a.tgt))) return false;
    }
    return true;
}

ArrId KnowledgeBase::ex_fia(ConeId theta) {
    const TermCone& c = u_.cone(theta);
    for (const auto& [n, p] : c.projections) {
        const ArrTermData& pd = u_.arr(p);
        if (pd.src != c.vertex) throw error("EXFIA: projection does not start at the vertex");
        if (pd.tgt != u_.diagram(c.base).nodes.at(n))
            throw error("EXFIA: projection does not land on the base value");
    }
    if (!cone_commutative(c)) throw error("EXFIA: cone is not commutative");
    ex_lim(c.base);
    StepId st = u_.intern_fillin(theta);
    ArrId r = u_.intern_arr(u_.step(st).src, u_.step(st).tgt, {st});
    eq_.register_term(r);
    record("exfia", {u_.show_cone(theta)});
    return r;
}

Fact KnowledgeBase::ref(ArrId f) {
    record("ref", {u_.show_arr(f)});
    eq_.register_term(f);
    return Fact{f, f, "REF"};
}

Fact KnowledgeBase::trans(ArrId f, ArrId g, ArrId h) {
    if (!arrows_equal(f, g) || !arrows_equal(g, h))
        throw error("TRANS: premises are not known facts");
    record("trans", {u_.show_arr(f), u_.show_arr(g), u_.show_arr(h)});
    return Fact{f, h, "TRANS"};
}

void KnowledgeBase::ex_diag(const std::string& name) {
    const DiagramSpec* ds = sketch_->sketch.find_diagram(name);
    if (!ds) throw error("EXDIAG: unknown sketch diagram '" + name + "'");
    record("exdiag", {name});
    auto term_of_path = [&](const ShapePath& p) {
        if (p.empty()) return ex_id(ex_ob(ds->diagram.node_value(p.at)));
        ArrId t = ex_arr(ds->diagram.arrow_value(p.arrows.back()));
        for (auto it = std::next(p.arrows.rbegin()); it != p.arrows.rend(); ++it)
            t = ex_comp(ex_arr(ds->diagram.arrow_value(*it)), t);
        return t;
    };
    for (const auto& e : ds->payload()) {
        ArrId lhs = term_of_path(e.lhs);
        ArrId rhs = term_of_path(e.rhs);
        insert_fact(lhs, rhs, "EXDIAG " + name);
    }
}

Fact KnowledgeBase::compdiag(ArrId g, ArrId f) {
    ArrId c = ex_comp(g, f);
    record("compdiag", {u_.show_arr(g), u_.show_arr(f)});
    return Fact{c, c, "COMPDIAG"};
}

Fact KnowledgeBase::idl(ArrId g) {
    ArrId c = ex_comp(g, ex_id(u_.arr(g).src));
    record("idl", {u_.show_arr(g)});
    return Fact{c, g, "IDL"}; // identical terms under path representation
}

Fact KnowledgeBase::idr(ArrId f) {
    ArrId c = ex_comp(ex_id(u_.arr(f).tgt), f);
    record("idr", {u_.show_arr(f)});
    return Fact{c, f, "IDR"};
}

Fact KnowledgeBase::assoc(ArrId h, ArrId g, ArrId f) {
    ArrId l = ex_comp(ex_comp(h, g), f);
    ArrId r = ex_comp(h, ex_comp(g, f));
    record("assoc", {u_.show_arr(h), u_.show_arr(g), u_.show_arr(f)});
    return Fact{l, r, "ASSOC"};
}

void KnowledgeBase::cfia(ArrId fillin_term) {
    const ArrTermData& a = u_.arr(fillin_term);
    if (a.steps.size() != 1 || u_.step(a.steps[0]).kind != StepData::Kind::Fillin)
        throw error("CFIA: term is not a fill-in arrow");
    const TermCone& c = u_.cone(u_.step(a.steps[0]).cone);
    record("cfia", {u_.show_arr(fillin_term)});
    ObId L = u_.intern_lim_ob(c.base);
    for (const auto& [n, p] : c.projections) {
        ArrId lhs = ex_comp(proj(L, n), fillin_term);
        insert_fact(lhs, p, "CFIA");
    }
}

Fact KnowledgeBase::bangfia(ObId lim, ArrId h, ArrId k) {
    const ObTermData& o = u_.ob(lim);
    if (o.kind != ObTermData::Kind::Lim) throw error("!FIA: object is not a canonical limit");
    const ArrTermData& hd = u_.arr(h);
    const ArrTermData& kd = u_.arr(k);
    if (hd.tgt != lim || kd.tgt != lim || hd.src != kd.src)
        throw error("!FIA: arrows are not a parallel pair into the limit");
    const TermDiagram& base = u_.diagram(o.diagram);
    for (const auto& n : base.shape.nodes()) {
        ArrId pn = proj(lim, n);
        if (!arrows_equal(ex_comp(pn, h), ex_comp(pn, k)))
            throw error("!FIA: arrows do not commute with projection '" + n + "'");
    }
    record("bangfia", {u_.show_ob(lim), u_.show_arr(h), u_.show_arr(k)});
    insert_fact(h, k, "!FIA");
    return Fact{h, k, "!FIA"};
}

bool KnowledgeBase::arrows_equal(ArrId f, ArrId g) {
    const ArrTermData& fd = u_.arr(f);
    const ArrTermData& gd = u_.arr(g);
    if (fd.src != gd.src || fd.tgt != gd.tgt) throw error("arrows_equal: terms are not parallel");
    return eq_.equal(f, g);
}

namespace {
using Seen = std::set<std::pair<ArrId, ArrId>>;
}

bool KnowledgeBase::equal_with_universal(ArrId f, ArrId g, int depth) {
    struct Worker {
        KnowledgeBase* kb;
        Seen seen;
        bool run(ArrId f, ArrId g, int depth) {
            if (f == g) return true;
            const ArrTermData& fd = kb->u_.arr(f);
            const ArrTermData& gd = kb->u_.arr(g);
            if (fd.src != gd.src || fd.tgt != gd.tgt) return false;
            if (kb->arrows_equal(f, g)) return true;
            if (depth <= 0) return false;
            auto key = std::minmax(f, g);
            if (!seen.insert(key).second) return false;
            const ObTermData& t = kb->u_.ob(fd.tgt);
            if (t.kind != ObTermData::Kind::Lim) return false;
            const TermDiagram& base = kb->u_.diagram(t.diagram);
            for (const auto& n : base.shape.nodes()) {
                ArrId pn = kb->proj(fd.tgt, n);
                if (!run(kb->ex_comp(pn, f), kb->ex_comp(pn, g), depth - 1)) return false;
            }
            kb->bangfia(fd.tgt, f, g);
            return true;
        }
    };
    Worker w{this, {}};
    return w.run(f, g, depth);
}

DiagramInterned KnowledgeBase::lift_diagram(const Diagram& d) {
    if (!d.same_ambient_graph(*sketch_->sketch.graph))
        throw error("lift: diagram is not over the sketch graph");
    TermDiagram raw;
    raw.shape = d.shape();
    for (const auto& n : d.shape().nodes()) raw.nodes[n] = ex_ob(d.node_value(n));
    for (const auto& [e, a] : d.shape().arrows()) raw.arrows[e] = ex_arr(d.arrow_value(e));
    return u_.intern_diagram(raw);
}

DiagramInterned KnowledgeBase::intern_term_diagram(const TermDiagram& raw) {
    return u_.intern_diagram(raw);
}

namespace {

TermDiagram restrict_term_diagram(const TermDiagram& d, const Subgraph& j) {
    require_subgraph(j, d.shape, "restrict_term_diagram");
    TermDiagram out;
    out.shape = induced_graph(d.shape, j);
    for (const auto& n : j.nodes) out.nodes[n] = d.nodes.at(n);
    for (const auto& a : j.arrows) out.arrows[a] = d.arrows.at(a);
    return out;
}

} // namespace

ArrId KnowledgeBase::lim_fillin(DiagId d, const Subgraph& j) {
    const TermDiagram& td = u_.diagram(d);
    require_subgraph(j, td.shape, "lim_fillin");
    DiagramInterned gamma = u_.intern_diagram(restrict_term_diagram(td, j));
    ObId L = ex_lim(d);
    ex_lim(gamma.id);
    std::map<std::string, ArrId> projections;
    for (const auto& n : j.nodes) projections[gamma.node_map.at(n)] = proj(L, n);
    ConeId theta = u_.intern_cone(L, gamma.id, std::move(projections));
    ArrId phi = ex_fia(theta);
    cfia(phi);
    return phi;
}

ExtensionOracle KnowledgeBase::extension_oracle(DiagId dprime, const Subgraph& j) {
    const TermDiagram& td = u_.diagram(dprime);
    require_subgraph(j, td.shape, "extension_oracle");
    DiagramInterned gamma = u_.intern_diagram(restrict_term_diagram(td, j));
    ObId LJ = ex_lim(gamma.id);

    auto term_of_shape_path = [this, dprime](const ArrowPath& p) {
        const TermDiagram& d = u_.diagram(dprime);
        ArrId t = d.arrows.at(p.back());
        for (auto it = std::next(p.rbegin()); it != p.rend(); ++it)
            t = ex_comp(d.arrows.at(*it), t);
        return t;
    };

    ExtensionOracle eq;
    eq.shape_path_eq = [this, term_of_shape_path](const ArrowPath& l, const ArrowPath& r) {
        return equal_with_universal(term_of_shape_path(l), term_of_shape_path(r));
    };
    eq.composite_cert = [this, dprime, gamma, LJ](const std::string& aid) {
        const TermDiagram& d = u_.diagram(dprime);
        const Arrow& a = d.shape.arrow(aid);
        ArrId lhs = ex_comp(d.arrows.at(aid), proj(LJ, gamma.node_map.at(a.src)));
        ArrId rhs = proj(LJ, gamma.node_map.at(a.tgt));
        return equal_with_universal(lhs, rhs);
    };
    eq.cocone_cert = [this, dprime, gamma, LJ](const std::string& v,
                                               const std::vector<std::string>& new_arrows) {
        (void)v;
        const TermDiagram& d = u_.diagram(dprime);
        std::vector<ArrId> values;
        for (const auto& aid : new_arrows) {
            const Arrow& a = d.shape.arrow(aid);
            values.push_back(ex_comp(d.arrows.at(aid), proj(LJ, gamma.node_map.at(a.src))));
        }
        for (std::size_t i = 1; i < values.size(); ++i)
            if (!equal_with_universal(values[0], values[i])) return false;
        return true;
    };
    eq.limit_cert = [this, dprime](const std::string& v, const Subgraph& jprime,
                                   const std::map<std::string, std::string>& projs) {
        const TermDiagram& d = u_.diagram(dprime);
        ObId vv = d.nodes.at(v);
        const ObTermData& vo = u_.ob(vv);
        if (vo.kind != ObTermData::Kind::Lim) return false;
        DiagramInterned sub = u_.intern_diagram(restrict_term_diagram(d, jprime));
        if (sub.id != vo.diagram) return false;
        for (const auto& [t, parrow] : projs) {
            ArrId want = proj(vv, sub.node_map.at(t));
            if (!equal_with_universal(d.arrows.at(parrow), want)) return false;
        }
        return true;
    };
    return eq;
}

ExtensionKind KnowledgeBase::classify_term_extension(DiagId dprime, const Subgraph& j) {
    // present the term diagram as a graph diagram over a synthetic ambient
    const TermDiagram& td = u_.diagram(dprime);
    auto ambient = std::make_shared<Graph>();
    for (const auto& [n, ob] : td.nodes) {
        std::string name = "o" + std::to_string(ob);
        if (!ambient->has_node(name)) ambient->add_node(name);
    }
    std::map<std::string, std::string> aa;
    for (const auto& [e, arr] : td.arrows) {
        std::string name = "a" + std::to_string(arr);
        const ArrTermData& ad = u_.arr(arr);
        if (!ambient->has_arrow(name))
            ambient->add_arrow(name, "o" + std::to_string(ad.src), "o" + std::to_string(ad.tgt));
        aa[e] = name;
    }
    std::map<std::string, std::string> na;
    for (const auto& [n, ob] : td.nodes) na[n] = "o" + std::to_string(ob);
    Diagram view(td.shape, ambient, na, aa);
    return classify_extension(view, j, extension_oracle(dprime, j));
}

KnowledgeBase::Iso KnowledgeBase::dominance_iso(DiagId dprime, const Subgraph& j) {
    const TermDiagram& td = u_.diagram(dprime);
    require_subgraph(j, td.shape, "dominance_iso");
    Subgraph full = Subgraph::full_of(td.shape);
    if (j == full) throw error("dominance_iso: trivial extension");

    // decompose into single-step extensions: limit/cocone nodes, then arrows
    std::vector<Subgraph> stages;
    Subgraph cur = j;
    std::set<std::string> new_nodes;
    for (const auto& n : td.shape.nodes())
        if (!cur.nodes.count(n)) new_nodes.insert(n);
    bool progress = true;
    while (progress && !new_nodes.empty()) {
        progress = false;
        for (const auto& v : new_nodes) {
            bool touches_other_new = false;
            std::set<std::string> out_arrows, in_arrows;
            for (const auto& [e, a] : td.shape.arrows()) {
                if (cur.arrows.count(e)) continue;
                if (a.src == v) {
                    if (!cur.nodes.count(a.tgt)) {
                        if (new_nodes.count(a.tgt)) touches_other_new = true;
                        continue;
                    }
                    out_arrows.insert(e);
                }
                if (a.tgt == v) {
                    if (!cur.nodes.count(a.src)) {
                        if (new_nodes.count(a.src)) touches_other_new = true;
                        continue;
                    }
                    in_arrows.insert(e);
                }
            }
            // projections out of a limit node go in with the node; incoming
            // arrows are later composite steps (and vice versa for cocones)
            Subgraph next = cur;
            next.nodes.insert(v);
            if (!out_arrows.empty()) {
                for (const auto& e : out_arrows) next.arrows.insert(e);
            } else if (!in_arrows.empty()) {
                for (const auto& e : in_arrows) next.arrows.insert(e);
            } else if (touches_other_new) {
                continue; // try again once neighbours are in
            }
            stages.push_back(next);
            cur = next;
            new_nodes.erase(v);
            progress = true;
            break;
        }
    }
    if (!new_nodes.empty()) throw error("dominance_iso: extension not recognized (node order)");
    for (const auto& [e, a] : td.shape.arrows()) {
        if (cur.arrows.count(e)) continue;
        Subgraph next = cur;
        next.arrows.insert(e);
        stages.push_back(next);
        cur = next;
    }

    // walk the chain
    ObId LJ = ex_lim(u_.intern_diagram(restrict_term_diagram(td, j)).id);
    std::vector<ArrId> psis, phis;
    Subgraph prev = j;
    for (const auto& stage : stages) {
        TermDiagram stage_raw = restrict_term_diagram(td, stage);
        DiagramInterned stage_int = u_.intern_diagram(stage_raw);
        // translate prev into the stage's canonical names
        Subgraph prev_in_stage;
        for (const auto& n : prev.nodes) prev_in_stage.nodes.insert(stage_int.node_map.at(n));
        for (const auto& a : prev.arrows) prev_in_stage.arrows.insert(stage_int.arrow_map.at(a));
        auto step = single_step_iso(stage_int.id, prev_in_stage);
        psis.push_back(step.backward);
        phis.push_back(step.forward);
        prev = stage;
    }

    ArrId psi_total = psis[0];
    for (std::size_t i = 1; i < psis.size(); ++i) psi_total = ex_comp(psis[i], psi_total);
    ArrId phi_total = lim_fillin(dprime, j);
    ArrId phi_chain = phis[0];
    for (std::size_t i = 1; i < phis.size(); ++i) phi_chain = ex_comp(phi_chain, phis[i]);
    if (!equal_with_universal(phi_total, phi_chain))
        throw error("dominance_iso: fill-in chain mismatch");
    ObId L = ex_lim(dprime);
    if (!equal_with_universal(ex_comp(phi_total, psi_total), ex_id(LJ)))
        throw error("dominance_iso: phi o psi != id");
    if (!equal_with_universal(ex_comp(psi_total, phi_total), ex_id(L)))
        throw error("dominance_iso: psi o phi != id");
    return Iso{phi_total, psi_total};
}

KnowledgeBase::Iso KnowledgeBase::single_step_iso(DiagId dk, const Subgraph& j) {
    ExtensionKind kind = classify_term_extension(dk, j);
    if (!kind.recognized()) throw error("dominance_iso: extension step not recognized");

    const TermDiagram& td = u_.diagram(dk);
    DiagramInterned gamma = u_.intern_diagram(restrict_term_diagram(td, j));
    ObId L0 = ex_lim(gamma.id);
    ObId L1 = ex_lim(dk);

    std::map<std::string, ArrId> psi_projs;
    for (const auto& n : j.nodes) psi_projs[n] = proj(L0, gamma.node_map.at(n));

    if (kind.kind == ExtensionKind::Kind::CommutativeCocone) {
        // compose through the first incoming arrow
        std::string first;
        for (const auto& [e, a] : td.shape.arrows())
            if (!j.arrows.count(e) && a.tgt == kind.new_node) {
                first = e;
                break;
            }
        const Arrow& a = td.shape.arrow(first);
        psi_projs[kind.new_node] = ex_comp(td.arrows.at(first), psi_projs.at(a.src));
    } else if (kind.kind == ExtensionKind::Kind::Limit) {
        ObId vv = td.nodes.at(kind.new_node);
        DiagramInterned sub = u_.intern_diagram(restrict_term_diagram(td, kind.jprime));
        std::map<std::string, ArrId> theta;
        for (const auto& n : kind.jprime.nodes)
            theta[sub.node_map.at(n)] = proj(L0, gamma.node_map.at(n));
        ConeId tc = u_.intern_cone(L0, u_.ob(vv).diagram, std::move(theta));
        ArrId fill = ex_fia(tc);
        cfia(fill);
        psi_projs[kind.new_node] = fill;
    }

    ConeId psi_cone = u_.intern_cone(L0, dk, std::move(psi_projs));
    ArrId psi = ex_fia(psi_cone);
    cfia(psi);
    ArrId phi = lim_fillin(dk, j);
    if (!equal_with_universal(ex_comp(phi, psi), ex_id(L0)))
        throw error("dominance_iso: step phi o psi != id");
    if (!equal_with_universal(ex_comp(psi, phi), ex_id(L1)))
        throw error("dominance_iso: step psi o phi != id");
    return Iso{phi, psi};
}

std::string KnowledgeBase::export_log() const {
    std::ostringstream s;
    s << "gbllog 1\n";
    for (const auto& r : log_) {
        s << "(" << r.op;
        for (const auto& a : r.args) s << " " << a;
        s << ")\n";
    }
    return s.str();
}

namespace {

struct SExpr {
    std::string atom;
    std::vector<SExpr> kids;
    bool leaf = true;

    const SExpr& kid(std::size_t i) const {
        if (leaf || i >= kids.size()) throw error("log: malformed expression");
        return kids[i];
    }
    const std::string& head() const { return kid(0).atom; }
};

SExpr parse_sexpr(const std::string& s, std::size_t& pos) {
    while (pos < s.size() && s[pos] == ' ') ++pos;
    if (pos >= s.size()) throw error("log: unexpected end of record");
    if (s[pos] == '(') {
        ++pos;
        SExpr e;
        e.leaf = false;
        while (true) {
            while (pos < s.size() && s[pos] == ' ') ++pos;
            if (pos >= s.size()) throw error("log: missing ')'");
            if (s[pos] == ')') {
                ++pos;
                return e;
            }
            e.kids.push_back(parse_sexpr(s, pos));
        }
    }
    std::size_t b = pos;
    while (pos < s.size() && s[pos] != ' ' && s[pos] != '(' && s[pos] != ')') ++pos;
    SExpr e;
    e.atom = s.substr(b, pos - b);
    return e;
}

} // namespace

struct LogParser {
    KnowledgeBase& kb;

    ObId ob(const SExpr& e) {
        if (e.head() == "node") return kb.u_.intern_node_ob(e.kid(1).atom);
        if (e.head() == "lim") return kb.u_.intern_lim_ob(diagram(e.kid(1)));
        throw error("log: bad object term");
    }

    DiagId diagram(const SExpr& e) {
        if (e.head() != "diag") throw error("log: bad diagram");
        TermDiagram raw;
        for (std::size_t i = 1; i < e.kid(1).kids.size(); ++i) {
            const SExpr& n = e.kid(1).kids[i];
            raw.shape.add_node(n.kid(0).atom);
            raw.nodes[n.kid(0).atom] = ob(n.kid(1));
        }
        for (std::size_t i = 1; i < e.kid(2).kids.size(); ++i) {
            const SExpr& a = e.kid(2).kids[i];
            raw.shape.add_arrow(a.kid(0).atom, a.kid(1).atom, a.kid(2).atom);
            raw.arrows[a.kid(0).atom] = arr(a.kid(3));
        }
        return kb.u_.intern_diagram(raw).id;
    }

    ConeId cone(const SExpr& e) {
        if (e.head() != "cone") throw error("log: bad cone");
        ObId v = ob(e.kid(1));
        DiagId base = diagram(e.kid(2));
        std::map<std::string, ArrId> projs;
        for (std::size_t i = 1; i < e.kid(3).kids.size(); ++i) {
            const SExpr& p = e.kid(3).kids[i];
            projs[p.kid(0).atom] = arr(p.kid(1));
        }
        return kb.u_.intern_cone(v, base, std::move(projs));
    }

    ArrId arr(const SExpr& e) {
        if (e.head() != "arr") throw error("log: bad arrow term");
        ObId src = ob(e.kid(1));
        ObId tgt = ob(e.kid(2));
        std::vector<StepId> steps;
        const SExpr& st = e.kid(3);
        for (std::size_t i = 1; i < st.kids.size(); ++i) {
            const SExpr& s = st.kids[i];
            if (s.head() == "gen") {
                ArrId whole = kb.intern_arr_impl(s.kid(1).atom);
                steps.push_back(kb.u_.arr(whole).steps.at(0));
            } else if (s.head() == "proj") {
                steps.push_back(kb.u_.intern_proj(ob(s.kid(1)), s.kid(2).atom));
            } else if (s.head() == "fillin") {
                steps.push_back(kb.u_.intern_fillin(cone(s.kid(1))));
            } else {
                throw error("log: bad step");
            }
        }
        ArrId r = kb.u_.intern_arr(src, tgt, std::move(steps));
        kb.eq_.register_term(r);
        return r;
    }

    void run(const SExpr& e) {
        const std::string& op = e.head();
        if (op == "exob") kb.ex_ob(e.kid(1).atom);
        else if (op == "exarr") kb.ex_arr(e.kid(1).atom);
        else if (op == "exlim") kb.ex_lim(diagram(e.kid(1)));
        else if (op == "exfia") kb.ex_fia(cone(e.kid(1)));
        else if (op == "exdiag") kb.ex_diag(e.kid(1).atom);
        else if (op == "cfia") kb.cfia(arr(e.kid(1)));
        else if (op == "bangfia") kb.bangfia(ob(e.kid(1)), arr(e.kid(2)), arr(e.kid(3)));
        else if (op == "ref") kb.ref(arr(e.kid(1)));
        else if (op == "trans") kb.trans(arr(e.kid(1)), arr(e.kid(2)), arr(e.kid(3)));
        else if (op == "compdiag") kb.compdiag(arr(e.kid(1)), arr(e.kid(2)));
        else if (op == "idl") kb.idl(arr(e.kid(1)));
        else if (op == "idr") kb.idr(arr(e.kid(1)));
        else if (op == "assoc") kb.assoc(arr(e.kid(1)), arr(e.kid(2)), arr(e.kid(3)));
        else if (op == "fact")
            kb.insert_fact_raw(arr(e.kid(1)), arr(e.kid(2)), e.kid(3).atom);
        else throw error("log: unknown op '" + op + "'");
    }
};

std::unique_ptr<KnowledgeBase> replay_log(const ConstructorSpaceSketch& s,
                                          const std::string& text) {
    auto kb = std::make_unique<KnowledgeBase>(s);
    LogParser parser{*kb};
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            if (line.rfind("gbllog", 0) != 0) throw error("log: missing header");
            header = false;
            continue;
        }
        std::size_t pos = 0;
        SExpr e = parse_sexpr(line, pos);
        parser.run(e);
    }
    return kb;
}

} // namespace gbl
