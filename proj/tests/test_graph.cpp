#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "gbl/cone.hpp"
#include "gbl/diagram.hpp"
#include "gbl/extension.hpp"

using namespace gbl;

namespace {

std::shared_ptr<Graph> ambient_square() {
    // ambient for the Section 2.3.2 examples: objects A..D, arrows as drawn
    auto g = std::make_shared<Graph>();
    for (const auto& n : {"A", "B", "C", "D"}) g->add_node(n);
    g->add_arrow("f", "A", "A");
    g->add_arrow("g", "A", "B");
    g->add_arrow("idB", "B", "B");
    g->add_arrow("h", "B", "D");
    g->add_arrow("k", "C", "D");
    g->add_arrow("u", "A", "C");
    return g;
}

Diagram square_diagram(const std::shared_ptr<Graph>& g,
                       const std::map<std::string, std::string>& nodes,
                       const std::map<std::string, std::string>& arrows) {
    // shape (3): t: h->i ; u: h->j ; v: i->k ; x: j->k
    Graph shape;
    for (const auto& n : {"h", "i", "j", "k"}) shape.add_node(n);
    shape.add_arrow("t", "h", "i");
    shape.add_arrow("u", "h", "j");
    shape.add_arrow("v", "i", "k");
    shape.add_arrow("x", "j", "k");
    return Diagram(shape, g, nodes, arrows);
}

// Brute-force diagram equivalence: search all node bijections + arrow match.
bool iso_equal(const Diagram& a, const Diagram& b) {
    const Graph& sa = a.shape();
    const Graph& sb = b.shape();
    if (sa.node_count() != sb.node_count() || sa.arrow_count() != sb.arrow_count()) return false;
    std::vector<std::string> na(sa.nodes().begin(), sa.nodes().end());
    std::vector<std::string> nb(sb.nodes().begin(), sb.nodes().end());
    std::sort(nb.begin(), nb.end());
    do {
        std::map<std::string, std::string> m;
        bool ok = true;
        for (std::size_t i = 0; i < na.size(); ++i) {
            m[na[i]] = nb[i];
            if (a.node_value(na[i]) != b.node_value(nb[i])) ok = false;
        }
        if (!ok) continue;
        std::vector<Arrow> ea;
        for (const auto& [id, ar] : sa.arrows()) ea.push_back(ar);
        std::vector<Arrow> eb;
        for (const auto& [id, ar] : sb.arrows()) eb.push_back(ar);
        std::vector<bool> used(eb.size(), false);
        std::function<bool(std::size_t)> match = [&](std::size_t i) -> bool {
            if (i == ea.size()) return true;
            for (std::size_t j = 0; j < eb.size(); ++j) {
                if (used[j]) continue;
                if (eb[j].src != m[ea[i].src] || eb[j].tgt != m[ea[i].tgt]) continue;
                if (a.arrow_value(ea[i].id) != b.arrow_value(eb[j].id)) continue;
                used[j] = true;
                if (match(i + 1)) return true;
                used[j] = false;
            }
            return false;
        };
        if (match(0)) return true;
    } while (std::next_permutation(nb.begin(), nb.end()));
    return false;
}

Diagram random_diagram(std::mt19937& rng, const std::shared_ptr<Graph>& ambient, int max_nodes) {
    std::uniform_int_distribution<int> nd(1, max_nodes);
    int n = nd(rng);
    std::vector<std::string> ambient_nodes(ambient->nodes().begin(), ambient->nodes().end());
    Graph shape;
    std::map<std::string, std::string> na, aa;
    for (int i = 0; i < n; ++i) {
        std::string id = "s" + std::to_string(i);
        shape.add_node(id);
        na[id] = ambient_nodes[rng() % ambient_nodes.size()];
    }
    int edges = static_cast<int>(rng() % (2 * n + 1));
    int added = 0;
    for (int tries = 0; tries < 40 && added < edges; ++tries) {
        std::string s = "s" + std::to_string(rng() % n);
        std::string t = "s" + std::to_string(rng() % n);
        std::vector<std::string> cands;
        for (const auto& [id, a] : ambient->arrows())
            if (a.src == na[s] && a.tgt == na[t]) cands.push_back(id);
        if (cands.empty()) continue;
        std::string id = "e" + std::to_string(added++);
        shape.add_arrow(id, s, t);
        aa[id] = cands[rng() % cands.size()];
    }
    return Diagram(shape, ambient, na, aa);
}

Diagram relabel(const Diagram& d, std::mt19937& rng) {
    std::vector<std::string> nodes(d.shape().nodes().begin(), d.shape().nodes().end());
    std::vector<std::string> perm = nodes;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::map<std::string, std::string> rename;
    for (std::size_t i = 0; i < nodes.size(); ++i) rename[nodes[i]] = "r" + perm[i];
    Graph shape;
    std::map<std::string, std::string> na, aa;
    for (const auto& n : nodes) shape.add_node(rename[n]);
    for (const auto& n : nodes) na[rename[n]] = d.node_value(n);
    for (const auto& [id, a] : d.shape().arrows()) {
        std::string nid = "r" + id;
        shape.add_arrow(nid, rename[a.src], rename[a.tgt]);
        aa[nid] = d.arrow_value(id);
    }
    return Diagram(shape, d.ambient(), na, aa);
}

} // namespace

TEST_CASE("diagram equality follows Section 2.3.2") {
    auto g = ambient_square();
    Diagram d2 = square_diagram(g, {{"h", "A"}, {"i", "A"}, {"j", "B"}, {"k", "B"}},
                                {{"t", "f"}, {"u", "g"}, {"v", "g"}, {"x", "idB"}});
    Diagram d4 = square_diagram(g, {{"h", "A"}, {"i", "B"}, {"j", "C"}, {"k", "D"}},
                                {{"t", "g"}, {"u", "u"}, {"v", "h"}, {"x", "k"}});
    CHECK_FALSE(diagrams_equal(d2, d4));
    CHECK(diagrams_equal(d2, d2));

    // Diagram (5): triangle shape (6), not the same diagram as (2)
    Graph tri;
    for (const auto& n : {"i", "j", "k"}) tri.add_node(n);
    tri.add_arrow("u", "i", "j");
    tri.add_arrow("v", "i", "k");
    tri.add_arrow("w", "j", "k");
    Diagram d5(tri, g, {{"i", "A"}, {"j", "A"}, {"k", "B"}}, {{"u", "f"}, {"v", "g"}, {"w", "g"}});
    CHECK_FALSE(diagrams_equal(d2, d5));

    auto tiny = std::make_shared<Graph>();
    tiny->add_node("Z");
    Diagram dz(Graph{}, tiny, {}, {});
    CHECK_THROWS_AS((void)diagrams_equal(d2, dz), error);
}

TEST_CASE("diagram keys are relabeling-invariant and match brute-force iso") {
    auto g = ambient_square();
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Diagram a = random_diagram(rng, g, 4);
        Diagram b = relabel(a, rng);
        CHECK(diagrams_equal(a, b));
        CHECK(a.canonical_key() == b.canonical_key());
        Diagram c = random_diagram(rng, g, 4);
        CHECK(diagrams_equal(a, c) == iso_equal(a, c));
    }
}

TEST_CASE("restrict_diagram restricts shape and assignment") {
    auto g = ambient_square();
    Diagram d4 = square_diagram(g, {{"h", "A"}, {"i", "B"}, {"j", "C"}, {"k", "D"}},
                                {{"t", "g"}, {"u", "u"}, {"v", "h"}, {"x", "k"}});

    Subgraph full = Subgraph::full_of(d4.shape());
    CHECK(diagrams_equal(restrict_diagram(d4, full), d4));

    Subgraph j;
    j.nodes = {"h", "i"};
    j.arrows = {"t"};
    Diagram r = restrict_diagram(d4, j);
    CHECK(r.shape().node_count() == 2);
    CHECK(r.arrow_value("t") == "g");

    Subgraph bad;
    bad.nodes = {"h"};
    bad.arrows = {"t"};
    CHECK_THROWS_AS(restrict_diagram(d4, bad), error);

    std::mt19937 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        Diagram a = random_diagram(rng, g, 4);
        std::vector<std::string> nodes(a.shape().nodes().begin(), a.shape().nodes().end());
        Subgraph sub;
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) sub.nodes.insert(nodes[i]);
        if (sub.nodes.empty()) sub.nodes.insert(nodes[0]);
        for (const auto& [id, ar] : a.shape().arrows())
            if (sub.nodes.count(ar.src) && sub.nodes.count(ar.tgt)) sub.arrows.insert(id);
        Diagram r2 = restrict_diagram(a, sub);
        Diagram r3 = relabel(r2, rng);
        CHECK(iso_equal(r2, r3));
        CHECK(diagrams_equal(r2, r3));
    }
}

TEST_CASE("is_full per Section 2.2") {
    auto g = ambient_square();
    Diagram d2 = square_diagram(g, {{"h", "A"}, {"i", "A"}, {"j", "B"}, {"k", "B"}},
                                {{"t", "f"}, {"u", "g"}, {"v", "g"}, {"x", "idB"}});
    const Graph& shape = d2.shape();
    CHECK(is_full(Subgraph::full_of(shape), shape));

    Subgraph j;
    j.nodes = {"h", "i"}; // omits arrow t between them
    CHECK_FALSE(is_full(j, shape));

    std::mt19937 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        Diagram a = random_diagram(rng, g, 4);
        if (a.shape().arrow_count() == 0) continue;
        Subgraph full = Subgraph::full_of(a.shape());
        std::string victim = *full.arrows.begin();
        full.arrows.erase(victim);
        bool oracle = false;
        for (const auto& [id, ar] : a.shape().arrows())
            if (full.nodes.count(ar.src) && full.nodes.count(ar.tgt) && !full.arrows.count(id))
                oracle = true;
        CHECK(is_full(full, a.shape()) == !oracle);
    }
}

TEST_CASE("base_restrict_cone reuses projections and preserves commutativity") {
    auto g = std::make_shared<Graph>();
    for (const auto& n : {"V", "X", "Y", "Z"}) g->add_node(n);
    g->add_arrow("p", "V", "X");
    g->add_arrow("q", "V", "Y");
    g->add_arrow("r", "V", "Z");
    g->add_arrow("a", "X", "Y");
    g->add_arrow("b", "Y", "Z");

    std::map<std::string, std::map<int, int>> fn = {{"p", {{0, 0}, {1, 1}}},
                                                    {"q", {{0, 1}, {1, 0}}},
                                                    {"r", {{0, 1}, {1, 0}}},
                                                    {"a", {{0, 1}, {1, 0}}},
                                                    {"b", {{0, 0}, {1, 1}}}};
    PathEq eq = [&](const ArrowPath& l, const ArrowPath& r2) {
        auto apply = [&](const ArrowPath& p, int x) {
            for (auto it = p.rbegin(); it != p.rend(); ++it) x = fn.at(*it).at(x);
            return x;
        };
        for (int x = 0; x < 2; ++x)
            if (apply(l, x) != apply(r2, x)) return false;
        return true;
    };

    Graph shape;
    for (const auto& n : {"x", "y", "z"}) shape.add_node(n);
    shape.add_arrow("e1", "x", "y");
    shape.add_arrow("e2", "y", "z");
    Diagram base(shape, g, {{"x", "X"}, {"y", "Y"}, {"z", "Z"}}, {{"e1", "a"}, {"e2", "b"}});

    Cone cone{"V", base, {{"x", "p"}, {"y", "q"}, {"z", "r"}}};
    cone.validate();
    CHECK(cone_commutes(cone, eq));

    Subgraph j;
    j.nodes = {"x", "y"};
    j.arrows = {"e1"};
    Cone rc = base_restrict_cone(cone, j);
    CHECK(rc.vertex == "V");
    CHECK(rc.projections.size() == 2);
    CHECK(rc.projections.at("x") == "p");
    CHECK(cone_commutes(rc, eq)); // Remark 3.1.2

    Subgraph empty;
    Cone ec = base_restrict_cone(cone, empty);
    CHECK(ec.projections.empty());
    CHECK(ec.base.shape().node_count() == 0);

    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        Subgraph sub;
        for (const auto& n : cone.base.shape().nodes())
            if (rng() % 2) sub.nodes.insert(n);
        for (const auto& [id, ar] : cone.base.shape().arrows())
            if (sub.nodes.count(ar.src) && sub.nodes.count(ar.tgt)) sub.arrows.insert(id);
        Cone rc2 = base_restrict_cone(cone, sub);
        CHECK(cone_commutes(rc2, eq));
    }
}

TEST_CASE("classify_extension recognizes the syntactic certificates") {
    auto g = std::make_shared<Graph>();
    for (const auto& n : {"P", "Q", "R"}) g->add_node(n);
    g->add_arrow("f", "P", "Q");
    g->add_arrow("g", "Q", "R");
    g->add_arrow("gf", "P", "R");

    std::map<std::string, std::map<int, int>> fn = {{"f", {{0, 1}}}, {"g", {{1, 0}}}, {"gf", {{0, 0}}}};

    Graph shape;
    for (const auto& n : {"x", "y", "z"}) shape.add_node(n);
    shape.add_arrow("e1", "x", "y");
    shape.add_arrow("e2", "y", "z");
    shape.add_arrow("e3", "x", "z");
    Diagram d(shape, g, {{"x", "P"}, {"y", "Q"}, {"z", "R"}},
              {{"e1", "f"}, {"e2", "g"}, {"e3", "gf"}});

    ExtensionOracle real_eq;
    real_eq.shape_path_eq = [&](const ArrowPath& l, const ArrowPath& r) {
        auto apply = [&](const ArrowPath& p, int x) {
            for (auto it = p.rbegin(); it != p.rend(); ++it) x = fn.at(d.arrow_value(*it)).at(x);
            return x;
        };
        return apply(l, 0) == apply(r, 0);
    };

    Subgraph j;
    j.nodes = {"x", "y", "z"};
    j.arrows = {"e1", "e2"};
    auto k = classify_extension(d, j, real_eq);
    CHECK(k.kind == ExtensionKind::Kind::Composite);
    CHECK(k.new_arrow == "e3");

    auto none = classify_extension(d, Subgraph::full_of(shape), real_eq);
    CHECK(none.kind == ExtensionKind::Kind::NotRecognized);

    // cocone: new node with all new arrows into it
    Graph shape2;
    for (const auto& n : {"x", "y", "v"}) shape2.add_node(n);
    shape2.add_arrow("e1", "x", "y");
    shape2.add_arrow("a", "x", "v");
    shape2.add_arrow("b", "y", "v");
    Diagram d2(shape2, g, {{"x", "P"}, {"y", "Q"}, {"v", "R"}},
               {{"e1", "f"}, {"a", "gf"}, {"b", "g"}});
    ExtensionOracle eq2;
    eq2.shape_path_eq = [&](const ArrowPath& l, const ArrowPath& r) {
        auto apply = [&](const ArrowPath& p, int x) {
            for (auto it = p.rbegin(); it != p.rend(); ++it) x = fn.at(d2.arrow_value(*it)).at(x);
            return x;
        };
        return apply(l, 0) == apply(r, 0);
    };
    Subgraph j2;
    j2.nodes = {"x", "y"};
    j2.arrows = {"e1"};
    auto k2 = classify_extension(d2, j2, eq2);
    CHECK(k2.kind == ExtensionKind::Kind::CommutativeCocone);
    CHECK(k2.new_node == "v");
}
