#include "gbl/enumerate.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace gbl {

namespace {

struct GroundEq {
    std::string src_node; // sketch node where the paths start
    std::vector<std::string> lhs, rhs; // sketch arrows, outermost first
    std::string origin;
};

std::vector<GroundEq> compile_equations(const FiniteLimitSketch& s) {
    std::vector<GroundEq> out;
    for (const auto& ds : s.diagrams) {
        for (const auto& e : ds.payload()) {
            GroundEq ge;
            auto ends = path_endpoints(ds.diagram.shape(), e.lhs);
            ge.src_node = ds.diagram.node_value(ends.first);
            for (const auto& a : e.lhs.arrows) ge.lhs.push_back(ds.diagram.arrow_value(a));
            for (const auto& a : e.rhs.arrows) ge.rhs.push_back(ds.diagram.arrow_value(a));
            ge.origin = ds.name;
            out.push_back(std::move(ge));
        }
    }
    return out;
}

struct Search {
    const FiniteLimitSketch* sk;
    const Bounds* bounds;
    std::vector<GroundEq> eqs;
    std::vector<std::string> free_nodes;
    long steps = 0;

    std::map<std::string, ElemSet> sets;
    std::map<std::string, Func> funcs;
    std::map<std::string, std::map<std::string, Func>> limit_coords;

    std::vector<EnumeratedModel> found;

    bool assigned(const std::string& arrow) const { return funcs.count(arrow) != 0; }
    bool has_set(const std::string& node) const { return sets.count(node) != 0; }

    void tick() {
        if (++steps > bounds->budget) throw error("enumerate_models: search budget exceeded");
    }

    std::optional<Elem> apply(const std::vector<std::string>& path, const Elem& x) const {
        Elem cur = x;
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            auto f = funcs.find(*it);
            if (f == funcs.end()) return std::nullopt;
            auto v = f->second.find(cur);
            if (v == f->second.end()) return std::nullopt;
            cur = v->second;
        }
        return cur;
    }

    bool eq_evaluable(const GroundEq& e) const {
        if (!has_set(e.src_node)) return false;
        for (const auto& a : e.lhs)
            if (!assigned(a)) return false;
        for (const auto& a : e.rhs)
            if (!assigned(a)) return false;
        return true;
    }

    bool eq_holds(const GroundEq& e) const {
        for (const auto& x : sets.at(e.src_node)) {
            auto l = apply(e.lhs, x);
            auto r = apply(e.rhs, x);
            if (!l || !r || *l != *r) return false;
        }
        return true;
    }

    // Candidate values for f at element x, narrowed by pin equations whose
    // innermost arrow is f and whose remaining arrows are assigned.
    std::vector<Elem> candidates_at(const Arrow& f, const Elem& x) const {
        std::vector<Elem> cands = sets.at(f.tgt);
        for (const auto& e : eqs) {
            const std::vector<std::string>* with_f = nullptr;
            const std::vector<std::string>* other = nullptr;
            if (!e.lhs.empty() && e.lhs.back() == f.id) {
                with_f = &e.lhs;
                other = &e.rhs;
            } else if (!e.rhs.empty() && e.rhs.back() == f.id) {
                with_f = &e.rhs;
                other = &e.lhs;
            } else {
                continue;
            }
            // exactly one occurrence of f, rest assigned
            bool usable = std::count(with_f->begin(), with_f->end(), f.id) == 1 &&
                          std::count(other->begin(), other->end(), f.id) == 0;
            if (!usable) continue;
            std::vector<std::string> w(with_f->begin(), with_f->end() - 1);
            for (const auto& a : w)
                if (!assigned(a)) usable = false;
            for (const auto& a : *other)
                if (!assigned(a)) usable = false;
            if (!usable) continue;
            auto want = apply(*other, x);
            if (!want) continue;
            std::vector<Elem> keep;
            for (const auto& v : cands) {
                auto got = apply(w, v);
                if (got && *got == *want) keep.push_back(v);
            }
            cands = std::move(keep);
        }
        return cands;
    }

    // Returns false on conflict.
    bool propagate() {
        bool progress = true;
        while (progress) {
            progress = false;
            tick();
            // compute limit vertices whose base is fully assigned
            for (const auto& sc : sk->cones) {
                const std::string& v = sc.cone.vertex;
                if (has_set(v)) continue;
                bool ready = true;
                for (const auto& [n, val] : sc.cone.base.node_assignment())
                    if (!has_set(val)) ready = false;
                for (const auto& [a, val] : sc.cone.base.arrow_assignment())
                    if (!assigned(val)) ready = false;
                if (!ready) continue;
                SetDiagram sd;
                sd.shape = sc.cone.base.shape();
                for (const auto& [n, val] : sc.cone.base.node_assignment()) sd.sets[n] = sets.at(val);
                for (const auto& [a, val] : sc.cone.base.arrow_assignment()) sd.funcs[a] = funcs.at(val);
                FinsetLimit lim = finset_limit(sd);
                sets[v] = lim.elements;
                limit_coords[v] = lim.projections;
                for (const auto& [n, proj] : sc.cone.projections) {
                    if (funcs.count(proj)) {
                        if (funcs.at(proj) != lim.projections.at(n)) return false;
                    } else {
                        funcs[proj] = lim.projections.at(n);
                    }
                }
                progress = true;
            }
            // check every fully evaluable equation
            for (const auto& e : eqs)
                if (eq_evaluable(e) && !eq_holds(e)) return false;
            // derive arrows pinned to a unique candidate everywhere
            for (const auto& [id, a] : sk->graph->arrows()) {
                if (assigned(id) || !has_set(a.src) || !has_set(a.tgt)) continue;
                Func f;
                bool unique = true;
                for (const auto& x : sets.at(a.src)) {
                    auto c = candidates_at(a, x);
                    if (c.empty()) return false;
                    if (c.size() > 1) {
                        unique = false;
                        break;
                    }
                    f[x] = c[0];
                }
                if (unique) {
                    funcs[id] = std::move(f);
                    progress = true;
                }
            }
        }
        return true;
    }

    void finalize() {
        FinSetModel m;
        m.sketch = sk;
        m.sets = sets;
        m.funcs = funcs;
        if (!check_model(m).ok()) return;
        EnumeratedModel em;
        em.model = std::move(m);
        em.limit_coords = limit_coords;
        found.push_back(std::move(em));
    }

    void search() {
        tick();
        // next searchable arrow: endpoint sets known, minimal branch factor
        std::string best;
        double best_score = 0;
        std::vector<std::vector<Elem>> best_cands;
        std::vector<Elem> best_dom;
        for (const auto& [id, a] : sk->graph->arrows()) {
            if (assigned(id) || !has_set(a.src) || !has_set(a.tgt)) continue;
            std::vector<std::vector<Elem>> cands;
            double score = 1;
            for (const auto& x : sets.at(a.src)) {
                cands.push_back(candidates_at(a, x));
                score *= static_cast<double>(cands.back().size());
                if (score > 1e18) break;
            }
            if (best.empty() || score < best_score) {
                best = id;
                best_score = score;
                best_cands = std::move(cands);
                best_dom = sets.at(a.src);
            }
        }
        if (best.empty()) {
            // everything assigned?
            for (const auto& [id, a] : sk->graph->arrows())
                if (!assigned(id)) return; // stuck: some set never materialized
            for (const auto& n : sk->graph->nodes())
                if (!has_set(n)) return;
            finalize();
            return;
        }

        std::vector<std::size_t> idx(best_dom.size(), 0);
        for (const auto& c : best_cands)
            if (c.empty()) return;
        while (true) {
            tick();
            auto saved_sets = sets;
            auto saved_funcs = funcs;
            auto saved_coords = limit_coords;
            Func f;
            for (std::size_t i = 0; i < best_dom.size(); ++i) f[best_dom[i]] = best_cands[i][idx[i]];
            funcs[best] = std::move(f);
            if (propagate()) search();
            sets = std::move(saved_sets);
            funcs = std::move(saved_funcs);
            limit_coords = std::move(saved_coords);

            std::size_t i = 0;
            while (i < idx.size() && ++idx[i] == best_cands[i].size()) idx[i++] = 0;
            if (i == idx.size() || idx.empty()) break;
        }
    }
};

// Canonical form of a model under permutations of the free node sets.
std::string canonical_form(const Search& ctx, const EnumeratedModel& em,
                           const std::vector<std::string>& free_nodes) {
    const FiniteLimitSketch& sk = *em.model.sketch;
    // cone vertices in dependency order
    std::vector<std::string> vertex_order;
    std::set<std::string> done;
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& sc : sk.cones) {
            if (done.count(sc.cone.vertex)) continue;
            bool ready = true;
            for (const auto& [n, val] : sc.cone.base.node_assignment())
                if (sk.cone_of_vertex(val) && !done.count(val)) ready = false;
            if (!ready) continue;
            vertex_order.push_back(sc.cone.vertex);
            done.insert(sc.cone.vertex);
            progress = true;
        }
    }

    std::vector<std::vector<std::vector<int>>> perms; // per free node: list of perms
    for (const auto& n : free_nodes) {
        int k = static_cast<int>(em.model.set_of(n).size());
        std::vector<int> p(k);
        for (int i = 0; i < k; ++i) p[i] = i;
        std::vector<std::vector<int>> all;
        do all.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
        perms.push_back(std::move(all));
    }

    std::string best;
    std::vector<std::size_t> pick(free_nodes.size(), 0);
    while (true) {
        std::map<std::string, Func> rename; // per node: old elem -> new elem
        for (std::size_t i = 0; i < free_nodes.size(); ++i) {
            const ElemSet& old = em.model.set_of(free_nodes[i]);
            const auto& p = perms[i][pick[i]];
            Func r;
            for (std::size_t j = 0; j < old.size(); ++j) r[old[j]] = old[p[j]];
            rename[free_nodes[i]] = std::move(r);
        }
        for (const auto& v : vertex_order) {
            const SketchCone* sc = sk.cone_of_vertex(v);
            Func r;
            for (const auto& t : em.model.set_of(v)) {
                std::map<std::string, Elem> coords;
                for (const auto& [n, val] : sc->cone.base.node_assignment())
                    coords[n] = rename.at(val).at(em.limit_coords.at(v).at(n).at(t));
                r[t] = encode_tuple(coords);
            }
            rename[v] = std::move(r);
        }
        FinSetModel rm;
        rm.sketch = em.model.sketch;
        for (const auto& [n, s] : em.model.sets) {
            ElemSet ns;
            for (const auto& e : s) ns.push_back(rename.at(n).at(e));
            std::sort(ns.begin(), ns.end());
            rm.sets[n] = std::move(ns);
        }
        for (const auto& [id, f] : em.model.funcs) {
            const Arrow& a = sk.graph->arrow(id);
            Func nf;
            for (const auto& [x, y] : f) nf[rename.at(a.src).at(x)] = rename.at(a.tgt).at(y);
            rm.funcs[id] = std::move(nf);
        }
        std::string text = model_to_text(rm);
        if (best.empty() || text < best) best = text;

        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == perms[i].size()) pick[i++] = 0;
        if (i == pick.size() || pick.empty()) break;
    }
    (void)ctx;
    return best.empty() ? model_to_text(em.model) : best;
}

} // namespace

Enumeration enumerate_models(const FiniteLimitSketch& s, const Bounds& b) {
    ValidationReport vr = validate(s);
    if (!vr.ok()) throw error("enumerate_models: sketch invalid:\n" + vr.to_string());

    std::vector<std::string> free_nodes;
    for (const auto& n : s.graph->nodes())
        if (!s.cone_of_vertex(n)) free_nodes.push_back(n);

    Search ctx;
    ctx.sk = &s;
    ctx.bounds = &b;
    ctx.eqs = compile_equations(s);

    auto card_range = [&](const std::string& n) {
        int mx = b.max_card.count(n) ? b.max_card.at(n) : b.default_max;
        int mn = b.min_card.count(n) ? b.min_card.at(n) : 0;
        return std::pair<int, int>(mn, mx);
    };

    // iterate cardinality vectors
    std::vector<int> card(free_nodes.size(), 0);
    for (std::size_t i = 0; i < free_nodes.size(); ++i) card[i] = card_range(free_nodes[i]).first;
    bool more = true;
    while (more) {
        ctx.sets.clear();
        ctx.funcs.clear();
        ctx.limit_coords.clear();
        for (std::size_t i = 0; i < free_nodes.size(); ++i) {
            ElemSet es;
            for (int k = 0; k < card[i]; ++k) es.push_back(std::to_string(k));
            ctx.sets[free_nodes[i]] = std::move(es);
        }
        if (ctx.propagate()) ctx.search();

        std::size_t i = 0;
        while (i < free_nodes.size()) {
            auto [mn, mx] = card_range(free_nodes[i]);
            if (++card[i] <= mx) break;
            card[i] = mn;
            ++i;
        }
        if (i == free_nodes.size()) more = false;
        if (free_nodes.empty()) more = false;
    }

    // canonicalize and dedup
    std::map<std::string, EnumeratedModel> unique;
    for (auto& em : ctx.found) {
        em.canonical = canonical_form(ctx, em, free_nodes);
        if (!unique.count(em.canonical)) unique.emplace(em.canonical, std::move(em));
    }
    Enumeration out;
    out.search_steps = ctx.steps;
    for (auto& [key, em] : unique) out.models.push_back(std::move(em));
    return out;
}

struct ModelBuilder::Impl {
    Search ctx;
};

ModelBuilder::ModelBuilder(const FiniteLimitSketch& s) : impl_(new Impl) {
    impl_->ctx.sk = &s;
    static const Bounds unlimited = [] {
        Bounds b;
        b.budget = 100000000;
        return b;
    }();
    impl_->ctx.bounds = &unlimited;
    impl_->ctx.eqs = compile_equations(s);
}

ModelBuilder::~ModelBuilder() = default;

void ModelBuilder::set_node(const std::string& node, ElemSet elems) {
    std::sort(elems.begin(), elems.end());
    impl_->ctx.sets[node] = std::move(elems);
}

void ModelBuilder::set_arrow(const std::string& arrow, Func f) {
    impl_->ctx.funcs[arrow] = std::move(f);
}

void ModelBuilder::propagate() {
    if (!impl_->ctx.propagate()) throw error("ModelBuilder: seeds conflict with the sketch");
}

bool ModelBuilder::has_node(const std::string& node) const {
    return impl_->ctx.has_set(node);
}

const ElemSet& ModelBuilder::node_set(const std::string& node) const {
    auto it = impl_->ctx.sets.find(node);
    if (it == impl_->ctx.sets.end()) throw error("ModelBuilder: node '" + node + "' not derived yet");
    return it->second;
}

Elem ModelBuilder::element_by_coords(const std::string& vertex,
                                     const std::map<std::string, Elem>& coords) const {
    auto it = impl_->ctx.limit_coords.find(vertex);
    if (it == impl_->ctx.limit_coords.end())
        throw error("ModelBuilder: '" + vertex + "' is not a derived limit vertex");
    std::vector<Elem> matches;
    for (const auto& t : impl_->ctx.sets.at(vertex)) {
        bool ok = true;
        for (const auto& [n, v] : coords) {
            auto pj = it->second.find(n);
            if (pj == it->second.end() || pj->second.at(t) != v) ok = false;
        }
        if (ok) matches.push_back(t);
    }
    if (matches.size() != 1)
        throw error("ModelBuilder: coordinates select " + std::to_string(matches.size()) +
                    " elements of '" + vertex + "'");
    return matches[0];
}

EnumeratedModel ModelBuilder::build() const {
    FinSetModel m;
    m.sketch = impl_->ctx.sk;
    m.sets = impl_->ctx.sets;
    m.funcs = impl_->ctx.funcs;
    for (const auto& n : impl_->ctx.sk->graph->nodes())
        if (!m.sets.count(n)) throw error("ModelBuilder: node '" + n + "' still unassigned");
    for (const auto& [id, a] : impl_->ctx.sk->graph->arrows())
        if (!m.funcs.count(id)) throw error("ModelBuilder: arrow '" + id + "' still unassigned");
    ModelCheckReport rep = check_model(m);
    if (!rep.ok()) throw error("ModelBuilder: model invalid:\n" + rep.to_string());
    EnumeratedModel em;
    em.model = std::move(m);
    em.limit_coords = impl_->ctx.limit_coords;
    return em;
}

} // namespace gbl
