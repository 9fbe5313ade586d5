#include "gbl/modules.hpp"

#include <algorithm>
#include <sstream>

namespace gbl {

namespace {

struct AnnParser {
    const std::string& s;
    std::size_t i = 0;

    explicit AnnParser(const std::string& text) : s(text) {}

    void skip() {
        while (i < s.size() && s[i] == ' ') ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    char peek() {
        skip();
        return i < s.size() ? s[i] : '\0';
    }

    static bool ident_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
               c == '_';
    }

    std::string ident() {
        skip();
        std::size_t b = i;
        while (i < s.size() && ident_char(s[i])) ++i;
        if (b == i) throw error("annotation: expected identifier in '" + s + "'");
        return s.substr(b, i - b);
    }

    Ann factor() {
        if (peek() == '(') {
            eat('(');
            std::vector<Ann> parts;
            parts.push_back(expr());
            while (eat(',')) parts.push_back(expr());
            if (!eat(')')) throw error("annotation: missing ')' in '" + s + "'");
            if (parts.size() == 1) return parts[0];
            Ann t;
            t.k = Ann::K::Tuple;
            t.args = std::move(parts);
            return t;
        }
        std::string id = ident();
        if (peek() == '[') {
            eat('[');
            Ann a;
            a.k = Ann::K::App;
            a.head = id;
            a.args.push_back(expr());
            while (eat(',')) a.args.push_back(expr());
            if (!eat(']')) throw error("annotation: missing ']' in '" + s + "'");
            return a;
        }
        Ann a;
        a.k = Ann::K::Atom;
        a.head = id;
        return a;
    }

    Ann power() {
        Ann left = factor();
        while (peek() == '^') {
            eat('^');
            Ann right = factor();
            Ann p;
            p.k = Ann::K::Pow;
            p.args = {std::move(left), std::move(right)};
            left = std::move(p);
        }
        return left;
    }

    Ann expr() {
        Ann left = power();
        while (peek() == '*') {
            eat('*');
            Ann right = power();
            Ann t;
            t.k = Ann::K::Times;
            t.args = {std::move(left), std::move(right)};
            left = std::move(t);
        }
        return left;
    }
};

std::string wrap(const Ann& a, bool parenthesize_times) {
    std::string r = a.str();
    bool need = (a.k == Ann::K::Times) || (parenthesize_times && a.k == Ann::K::Pow);
    return need ? "(" + r + ")" : r;
}

} // namespace

bool operator==(const Ann& a, const Ann& b) {
    return a.k == b.k && a.head == b.head && a.args == b.args;
}

std::string Ann::str() const {
    switch (k) {
        case K::Atom:
            return head;
        case K::Times:
            return wrap(args[0], false) + "*" + wrap(args[1], true);
        case K::Pow:
            return wrap(args[0], true) + "^" + wrap(args[1], true);
        case K::App: {
            std::string r = head + "[";
            for (std::size_t i = 0; i < args.size(); ++i) {
                if (i) r += ",";
                r += args[i].str();
            }
            return r + "]";
        }
        case K::Tuple: {
            std::string r = "(";
            for (std::size_t i = 0; i < args.size(); ++i) {
                if (i) r += ",";
                r += args[i].str();
            }
            return r + ")";
        }
    }
    return "";
}

bool Ann::has_metavar(const std::set<std::string>& vars) const {
    if (k == K::Atom) return vars.count(head) != 0;
    for (const auto& a : args)
        if (a.has_metavar(vars)) return true;
    return false;
}

Ann parse_ann(const std::string& s) {
    AnnParser p(s);
    Ann a = p.expr();
    p.skip();
    if (p.i != s.size()) throw error("annotation: trailing characters in '" + s + "'");
    return a;
}

bool unify_ann(const Ann& pattern, const Ann& concrete, const std::set<std::string>& metavars,
               AnnBinding& binding) {
    if (pattern.k == Ann::K::Atom && metavars.count(pattern.head)) {
        auto it = binding.find(pattern.head);
        if (it != binding.end()) return it->second == concrete;
        binding.emplace(pattern.head, concrete);
        return true;
    }
    if (pattern.k != concrete.k || pattern.head != concrete.head ||
        pattern.args.size() != concrete.args.size())
        return false;
    for (std::size_t i = 0; i < pattern.args.size(); ++i)
        if (!unify_ann(pattern.args[i], concrete.args[i], metavars, binding)) return false;
    return true;
}

Ann subst_ann(const Ann& pattern, const AnnBinding& binding) {
    if (pattern.k == Ann::K::Atom) {
        auto it = binding.find(pattern.head);
        return it != binding.end() ? it->second : pattern;
    }
    Ann out = pattern;
    for (auto& a : out.args) a = subst_ann(a, binding);
    return out;
}

std::vector<std::string> ModuleTemplate::interface_nodes() const {
    std::vector<std::string> out;
    for (const auto& [n, ann] : body.node_annotations) out.push_back(n);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Atoms that are metavariables and not yet bound. A bound metavariable may
// substitute to an atom with the same spelling (the (66) host literally uses
// M and N), so unbound-ness is a property of pattern plus binding, not of the
// substituted tree.
bool has_unbound(const Ann& pattern, const std::set<std::string>& metavars,
                 const AnnBinding& binding) {
    if (pattern.k == Ann::K::Atom)
        return metavars.count(pattern.head) && !binding.count(pattern.head);
    for (const auto& a : pattern.args)
        if (has_unbound(a, metavars, binding)) return true;
    return false;
}

struct Expander {
    const std::vector<ModuleTemplate>* templates;
    AnnotatedDiagram host;
    std::set<std::pair<std::string, std::string>> applied; // (host node, template)
    int fresh_counter = 0;

    std::string host_ann(const std::string& node) const {
        auto it = host.node_annotations.find(node);
        return it == host.node_annotations.end() ? std::string() : it->second;
    }

    // One application of template m anchored at host node h. Returns true if
    // the host changed.
    bool apply(const ModuleTemplate& m, const std::string& h, const AnnBinding& binding0);

    bool pass();
};

bool Expander::apply(const ModuleTemplate& m, const std::string& h, const AnnBinding& binding0) {
    AnnBinding binding = binding0;
    const Diagram& bd = m.body.diagram;
    std::map<std::string, std::string> node_match; // body node -> host node
    node_match[m.trigger_body_node] = h;

    auto body_ann = [&](const std::string& n) -> const std::string* {
        auto it = m.body.node_annotations.find(n);
        return it == m.body.node_annotations.end() ? nullptr : &it->second;
    };

    // Resolve matches: merge by instantiated annotation, or bind leftover
    // metavariables through uniquely-valued edges anchored at matched nodes.
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& bn : bd.shape().nodes()) {
            if (node_match.count(bn)) continue;
            const std::string* anns = body_ann(bn);
            if (!anns) continue;
            Ann pat = parse_ann(*anns);
            Ann inst = subst_ann(pat, binding);
            if (!has_unbound(pat, m.metavars, binding)) {
                std::string want = inst.str();
                for (const auto& hn : host.diagram.shape().nodes()) {
                    if (host.diagram.node_value(hn) == bd.node_value(bn) &&
                        host_ann(hn) == want) {
                        node_match[bn] = hn;
                        progress = true;
                        break;
                    }
                }
                continue;
            }
            // try to bind through an incident edge with a matched endpoint
            for (const auto& [eid, e] : bd.shape().arrows()) {
                std::string other;
                bool from_matched;
                if (e.src == bn && node_match.count(e.tgt)) {
                    other = node_match.at(e.tgt);
                    from_matched = false;
                } else if (e.tgt == bn && node_match.count(e.src)) {
                    other = node_match.at(e.src);
                    from_matched = true;
                } else {
                    continue;
                }
                const std::string& val = bd.arrow_value(eid);
                std::vector<std::string> candidates;
                auto host_arrows = from_matched ? host.diagram.shape().arrows_from(other)
                                                : host.diagram.shape().arrows_into(other);
                for (const auto& ha : host_arrows) {
                    if (host.diagram.arrow_value(ha.id) != val) continue;
                    const std::string& cand = from_matched ? ha.tgt : ha.src;
                    if (host.diagram.node_value(cand) != bd.node_value(bn)) continue;
                    std::string ca = host_ann(cand);
                    if (ca.empty()) continue;
                    AnnBinding trial = binding;
                    if (unify_ann(inst, parse_ann(ca), m.metavars, trial)) candidates.push_back(cand);
                }
                std::sort(candidates.begin(), candidates.end());
                candidates.erase(std::unique(candidates.begin(), candidates.end()),
                                 candidates.end());
                if (candidates.size() == 1) {
                    AnnBinding trial = binding;
                    unify_ann(inst, parse_ann(host_ann(candidates[0])), m.metavars, trial);
                    binding = std::move(trial);
                    node_match[bn] = candidates[0];
                    progress = true;
                    break;
                }
            }
        }
    }

    // Everything still unmatched is adjoined fresh; unbound metavariables in
    // fresh annotations are inconsistent interfaces.
    std::map<std::string, std::string> fresh_ann;
    for (const auto& bn : bd.shape().nodes()) {
        if (node_match.count(bn)) continue;
        const std::string* anns = body_ann(bn);
        std::string rendered;
        if (anns) {
            Ann pat = parse_ann(*anns);
            if (has_unbound(pat, m.metavars, binding))
                throw error("expand_modules: module '" + m.name +
                            "' leaves metavariables unbound at node '" + bn + "'");
            rendered = subst_ann(pat, binding).str();
        }
        fresh_ann[bn] = rendered;
    }

    // consistency of merged annotations
    for (const auto& [bn, hn] : node_match) {
        if (host.diagram.node_value(hn) != bd.node_value(bn))
            throw error("expand_modules: module '" + m.name + "' merges nodes of distinct values");
    }

    bool changed = false;
    Graph shape = host.diagram.shape();
    auto node_assign = host.diagram.node_assignment();
    auto arrow_assign = host.diagram.arrow_assignment();

    for (const auto& bn : bd.shape().nodes()) {
        if (node_match.count(bn)) continue;
        std::string id = bn + "__" + m.name + std::to_string(fresh_counter);
        while (shape.has_node(id)) id += "x";
        shape.add_node(id);
        node_assign[id] = bd.node_value(bn);
        node_match[bn] = id;
        if (!fresh_ann[bn].empty()) host.node_annotations[id] = fresh_ann[bn];
        changed = true;
    }
    for (const auto& [eid, e] : bd.shape().arrows()) {
        const std::string hs = node_match.at(e.src);
        const std::string ht = node_match.at(e.tgt);
        const std::string& val = bd.arrow_value(eid);
        bool exists = false;
        for (const auto& [hid, ha] : shape.arrows())
            if (ha.src == hs && ha.tgt == ht && arrow_assign.at(hid) == val) {
                exists = true;
                break;
            }
        if (exists) continue;
        std::string id = eid + "__" + m.name + std::to_string(fresh_counter);
        while (shape.has_arrow(id)) id += "x";
        shape.add_arrow(id, hs, ht);
        arrow_assign[id] = val;
        changed = true;
    }
    ++fresh_counter;

    host.diagram = Diagram(std::move(shape), host.diagram.ambient(), std::move(node_assign),
                           std::move(arrow_assign));
    return changed;
}

bool Expander::pass() {
    for (const auto& n : host.diagram.shape().nodes()) {
        auto it = host.node_annotations.find(n);
        if (it == host.node_annotations.end()) continue;
        for (const auto& m : *templates) {
            if (host.diagram.node_value(n) != m.trigger_value) continue;
            if (applied.count({n, m.name})) continue;
            AnnBinding binding;
            Ann concrete = parse_ann(it->second);
            if (!unify_ann(parse_ann(m.pattern), concrete, m.metavars, binding)) continue;
            applied.insert({n, m.name});
            apply(m, n, binding);
            return true; // node set changed; restart iteration
        }
    }
    return false;
}

} // namespace

AnnotatedDiagram expand_modules(const AnnotatedDiagram& host,
                                const std::vector<ModuleTemplate>& templates) {
    Expander ex;
    ex.templates = &templates;
    ex.host = host;
    int guard = 0;
    while (ex.pass())
        if (++guard > 10000) throw error("expand_modules: expansion did not reach a fixpoint");
    return std::move(ex.host);
}

const std::string* find_node_by_annotation(const AnnotatedDiagram& d, const std::string& value,
                                           const std::string& annotation) {
    for (const auto& [n, a] : d.node_annotations)
        if (a == annotation && d.diagram.node_value(n) == value) return &n;
    return nullptr;
}

namespace {

AnnotatedDiagram make_body(const std::shared_ptr<const Graph>& g,
                           const std::vector<std::tuple<std::string, std::string, std::string>>& nodes,
                           const std::vector<std::tuple<std::string, std::string, std::string, std::string>>& arrows) {
    Graph shape;
    std::map<std::string, std::string> na, aa, anns;
    for (const auto& [id, value, ann] : nodes) {
        shape.add_node(id);
        na[id] = value;
        if (!ann.empty()) anns[id] = ann;
    }
    int k = 0;
    for (const auto& [src, tgt, value, unused] : arrows) {
        (void)unused;
        std::string id = "e" + std::to_string(k++);
        shape.add_arrow(id, src, tgt);
        aa[id] = value;
    }
    AnnotatedDiagram out;
    out.diagram = Diagram(std::move(shape), g, std::move(na), std::move(aa));
    out.node_annotations = std::move(anns);
    return out;
}

} // namespace

std::vector<ModuleTemplate> standard_modules(const std::shared_ptr<const Graph>& g) {
    std::vector<ModuleTemplate> out;
    if (g->has_arrow("prod") && g->has_node("obxob")) {
        // product of two objects (the M x N module)
        ModuleTemplate t;
        t.name = "prod_ob";
        t.trigger_value = "ob";
        t.pattern = "M*N";
        t.metavars = {"M", "N"};
        t.trigger_body_node = "mn";
        t.body = make_body(
            g,
            {{"m", "ob", "M"},
             {"n", "ob", "N"},
             {"mn", "ob", "M*N"},
             {"pr", "obxob", "(M,N)"},
             {"cn", "cone", "cone[M,N]"},
             {"pone", "ar", "p1[M*N]"},
             {"ptwo", "ar", "p2[M*N]"}},
            {{"pr", "m", "p1", ""},
             {"pr", "n", "p2", ""},
             {"pr", "cn", "prod", ""},
             {"cn", "pone", "lproj", ""},
             {"cn", "ptwo", "rproj", ""},
             {"pone", "mn", "source", ""},
             {"pone", "m", "target", ""},
             {"ptwo", "mn", "source", ""},
             {"ptwo", "n", "target", ""}});
        out.push_back(std::move(t));

        // product of an arrow with an identity (the u x Id[N] module); the
        // shared comp targets pin the product arrow componentwise
        ModuleTemplate a;
        a.name = "prod_arrow";
        a.trigger_value = "ar";
        a.pattern = "U*Id[N]";
        a.metavars = {"U", "N", "K", "M"};
        a.trigger_body_node = "arux";
        a.body = make_body(
            g,
            {{"aru", "ar", "U"},
             {"arux", "ar", "U*Id[N]"},
             {"obk", "ob", "K"},
             {"obm", "ob", "M"},
             {"obkn", "ob", "K*N"},
             {"obmn", "ob", "M*N"},
             {"ponem", "ar", "p1[M*N]"},
             {"ponek", "ar", "p1[K*N]"},
             {"ptwom", "ar", "p2[M*N]"},
             {"ptwok", "ar", "p2[K*N]"},
             {"cone1", "ar2", "pair[p1[M*N],U*Id[N]]"},
             {"cone2", "ar2", "pair[U,p1[K*N]]"},
             {"cone3", "ar2", "pair[p2[M*N],U*Id[N]]"},
             {"ucomp", "ar", "comp[U,p1[K*N]]"}},
            {{"aru", "obk", "source", ""},
             {"aru", "obm", "target", ""},
             {"arux", "obkn", "source", ""},
             {"arux", "obmn", "target", ""},
             {"cone1", "ponem", "lfac2", ""},
             {"cone1", "arux", "rfac2", ""},
             {"cone1", "ucomp", "comp", ""},
             {"cone2", "aru", "lfac2", ""},
             {"cone2", "ponek", "rfac2", ""},
             {"cone2", "ucomp", "comp", ""},
             {"cone3", "ptwom", "lfac2", ""},
             {"cone3", "arux", "rfac2", ""},
             {"cone3", "ptwok", "comp", ""}});
        out.push_back(std::move(a));
    }
    if (g->has_arrow("fs")) {
        // function spaces (the M^N module)
        ModuleTemplate t;
        t.name = "fun_ob";
        t.trigger_value = "ob";
        t.pattern = "M^N";
        t.metavars = {"M", "N"};
        t.trigger_body_node = "mn";
        t.body = make_body(g,
                           {{"m", "ob", "M"},
                            {"n", "ob", "N"},
                            {"pr", "obxob", "(M,N)"},
                            {"mn", "ob", "M^N"}},
                           {{"pr", "m", "p1", ""},
                            {"pr", "n", "p2", ""},
                            {"pr", "mn", "fs", ""}});
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace gbl
