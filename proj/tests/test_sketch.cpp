#include <doctest.h>

#include <set>

#include "gbl/builtins.hpp"

using namespace gbl;

namespace {

std::set<std::string> node_set(const Graph& g) { return g.nodes(); }

std::set<std::string> arrow_set(const Graph& g) {
    std::set<std::string> out;
    for (const auto& [id, a] : g.arrows()) out.insert(id);
    return out;
}

} // namespace

TEST_CASE("all four builtins validate") {
    for (auto which : {Builtin::Cat, Builtin::FinProd, Builtin::FinLim, Builtin::CCC}) {
        const auto& cs = builtin(which);
        ValidationReport rep = validate(cs.sketch);
        INFO(cs.sketch.name, ": ", rep.to_string());
        CHECK(rep.ok());
    }
}

TEST_CASE("Cat has the B.2.1 nodes and arrows") {
    const auto& cat = builtin(Builtin::Cat).sketch;
    CHECK(node_set(*cat.graph) == std::set<std::string>{"1", "ob", "ar", "ar2", "ar3"});
    std::set<std::string> expected = {
        "unit", "source", "target", "comp",
        "lfac2", "rfac2", "lfac3", "mfac3", "rfac3",
        "lasc", "rasc", "lunit", "runit",
        // pairing arrows (Section 9.1's <lfac,mfac>, <mfac,rfac>)
        "lpair", "rpair",
        // one id per node (B.2.1 item 8)
        "id_1", "id_ob", "id_ar", "id_ar2", "id_ar3"};
    CHECK(arrow_set(*cat.graph) == expected);
    CHECK(cat.graph->arrow("unit").src == "ob");
    CHECK(cat.graph->arrow("unit").tgt == "ar");
    CHECK(cat.graph->arrow("comp").src == "ar2");
    CHECK(cat.graph->arrow("lasc").tgt == "ar2");
    CHECK(cat.graph->arrow("lunit").src == "ar");
}

TEST_CASE("FinProd adds the B.3 nodes and arrows") {
    const auto& cat = builtin(Builtin::Cat).sketch;
    const auto& fp = builtin(Builtin::FinProd).sketch;
    std::set<std::string> new_nodes;
    for (const auto& n : node_set(*fp.graph))
        if (!cat.graph->has_node(n)) new_nodes.insert(n);
    CHECK(new_nodes == std::set<std::string>{"ta", "cone", "fid", "obxob"});

    std::set<std::string> new_arrows;
    for (const auto& a : arrow_set(*fp.graph))
        if (!cat.graph->has_arrow(a)) new_arrows.insert(a);
    std::set<std::string> expected = {
        "ter", "bang", "inc", "prod", "soco", "taco", "ufid", "fia",
        // implied product structure (B.1) and cone (58) projections
        "p1", "p2", "lproj", "rproj", "coneobs",
        "id_ta", "id_cone", "id_fid", "id_obxob"};
    CHECK(new_arrows == expected);

    // cone (56) per B.3.1: base is ar -> ob <- 1, inc the named projection
    const SketchCone* ta = fp.cone_of_vertex("ta");
    REQUIRE(ta != nullptr);
    CHECK(ta->cone.base.shape().node_count() == 3);
    CHECK(ta->cone.projections.size() == 1);

    // FinLim adds the B.5 material on top
    const auto& fl = builtin(Builtin::FinLim).sketch;
    std::set<std::string> fl_nodes;
    for (const auto& n : node_set(*fl.graph))
        if (!fp.graph->has_node(n)) fl_nodes.insert(n);
    CHECK(fl_nodes == std::set<std::string>{"ppair", "econe", "efid"});
    CHECK(fl.graph->has_arrow("equ"));
    CHECK(fl.graph->arrow("eufid").src == "econe");
    CHECK(fl.cone_of_vertex("ppair") != nullptr);
    CHECK(fl.cone_of_vertex("econe") != nullptr);
    CHECK(fl.cone_of_vertex("efid") != nullptr);
}

TEST_CASE("validate reports broken cones and accepts the empty sketch") {
    FiniteLimitSketch empty;
    empty.name = "empty";
    empty.graph = std::make_shared<Graph>();
    CHECK(validate(empty).ok());

    auto g = std::make_shared<Graph>();
    g->add_node("v");
    g->add_node("x");
    g->add_arrow("p", "x", "x"); // wrong source
    FiniteLimitSketch s;
    s.name = "bad";
    s.graph = g;
    Graph base_shape;
    base_shape.add_node("n");
    Diagram base(base_shape, g, {{"n", "x"}}, {});
    s.cones.push_back({"c", Cone{"v", base, {{"n", "p"}}}});
    ValidationReport rep = validate(s);
    CHECK(rep.issues.size() == 1);
}

TEST_CASE("adjoin_global_element freely adds one constant") {
    const auto& fl = builtin(Builtin::FinLim);
    auto n0 = fl.sketch.graph->node_count();
    auto a0 = fl.sketch.graph->arrow_count();
    ESketch e1 = adjoin_global_element(fl, "ob");
    CHECK(e1.base.sketch.graph->node_count() == n0);
    CHECK(e1.base.sketch.graph->arrow_count() == a0 + 1);
    CHECK(e1.base.sketch.graph->arrow(e1.constant).src == "1");
    CHECK(e1.base.sketch.graph->arrow(e1.constant).tgt == "ob");
    CHECK(validate(e1.base.sketch).ok());

    ESketch e2 = adjoin_global_element(e1.base, "ob");
    CHECK(e2.constant != e1.constant);
    CHECK(e2.base.sketch.graph->arrow_count() == a0 + 2);

    CHECK_THROWS_AS(adjoin_global_element(fl, "nosuch"), error);
}

TEST_CASE("expand_modules: host without annotations is unchanged") {
    const auto& fp = builtin(Builtin::FinProd);
    const auto& mods = builtin_modules(Builtin::FinProd);
    Graph shape;
    shape.add_node("x");
    shape.add_node("y");
    shape.add_arrow("e", "x", "y");
    AnnotatedDiagram host;
    host.diagram = Diagram(shape, fp.sketch.graph, {{"x", "ob"}, {"y", "ob"}},
                           {{"e", "id_ob"}});
    AnnotatedDiagram out = expand_modules(host, mods);
    CHECK(diagrams_equal(out.diagram, host.diagram));
}

namespace {

// Diagram (66): the product-of-arrows module host, drawn without its two
// object-product modules.
AnnotatedDiagram make_host66(const std::shared_ptr<const Graph>& g) {
    Graph sh;
    for (const auto& n : {"aru", "arux", "obk", "obm", "obkn", "obmn", "p1m", "p1k", "p2m",
                          "p2k", "c1", "c2", "c3", "ucomp"})
        sh.add_node(n);
    std::map<std::string, std::string> na = {
        {"aru", "ar"},  {"arux", "ar"}, {"obk", "ob"},  {"obm", "ob"},  {"obkn", "ob"},
        {"obmn", "ob"}, {"p1m", "ar"},  {"p1k", "ar"},  {"p2m", "ar"},  {"p2k", "ar"},
        {"c1", "ar2"},  {"c2", "ar2"},  {"c3", "ar2"},  {"ucomp", "ar"}};
    std::map<std::string, std::string> aa;
    auto arrow = [&](const std::string& id, const std::string& s, const std::string& t,
                     const std::string& v) {
        sh.add_arrow(id, s, t);
        aa[id] = v;
    };
    arrow("e0", "aru", "obk", "source");
    arrow("e1", "aru", "obm", "target");
    arrow("e2", "arux", "obkn", "source");
    arrow("e3", "arux", "obmn", "target");
    arrow("e4", "c1", "p1m", "lfac2");
    arrow("e5", "c1", "arux", "rfac2");
    arrow("e6", "c1", "ucomp", "comp");
    arrow("e7", "c2", "aru", "lfac2");
    arrow("e8", "c2", "p1k", "rfac2");
    arrow("e9", "c2", "ucomp", "comp");
    arrow("e10", "c3", "p2m", "lfac2");
    arrow("e11", "c3", "arux", "rfac2");
    arrow("e12", "c3", "p2k", "comp");
    AnnotatedDiagram host;
    host.diagram = Diagram(std::move(sh), g, std::move(na), std::move(aa));
    host.node_annotations = {
        {"aru", "u"},          {"arux", "u*Id[N]"},  {"obk", "K"},
        {"obm", "M"},          {"obkn", "K*N"},      {"obmn", "M*N"},
        {"p1m", "p1[M*N]"},    {"p1k", "p1[K*N]"},   {"p2m", "p2[M*N]"},
        {"p2k", "p2[K*N]"},    {"c1", "pair[p1[M*N],u*Id[N]]"},
        {"c2", "pair[u,p1[K*N]]"}, {"c3", "pair[p2[M*N],u*Id[N]]"},
        {"ucomp", "comp[u,p1[K*N]]"}};
    return host;
}

// Diagram (65): the union of (66) and the two object-product modules.
Diagram make_hand65(const std::shared_ptr<const Graph>& g) {
    AnnotatedDiagram d = make_host66(g);
    Graph sh = d.diagram.shape();
    auto na = d.diagram.node_assignment();
    auto aa = d.diagram.arrow_assignment();
    auto node = [&](const std::string& id, const std::string& v) {
        sh.add_node(id);
        na[id] = v;
    };
    int k = 20;
    auto arrow = [&](const std::string& s, const std::string& t, const std::string& v) {
        std::string id = "e" + std::to_string(k++);
        sh.add_arrow(id, s, t);
        aa[id] = v;
    };
    node("obn", "ob");
    node("pr_mn", "obxob");
    node("cn_mn", "cone");
    arrow("pr_mn", "obm", "p1");
    arrow("pr_mn", "obn", "p2");
    arrow("pr_mn", "cn_mn", "prod");
    arrow("cn_mn", "p1m", "lproj");
    arrow("cn_mn", "p2m", "rproj");
    arrow("p1m", "obmn", "source");
    arrow("p1m", "obm", "target");
    arrow("p2m", "obmn", "source");
    arrow("p2m", "obn", "target");
    node("pr_kn", "obxob");
    node("cn_kn", "cone");
    arrow("pr_kn", "obk", "p1");
    arrow("pr_kn", "obn", "p2");
    arrow("pr_kn", "cn_kn", "prod");
    arrow("cn_kn", "p1k", "lproj");
    arrow("cn_kn", "p2k", "rproj");
    arrow("p1k", "obkn", "source");
    arrow("p1k", "obk", "target");
    arrow("p2k", "obkn", "source");
    arrow("p2k", "obn", "target");
    return Diagram(std::move(sh), g, std::move(na), std::move(aa));
}

} // namespace

TEST_CASE("expand_modules reproduces Diagram (65) from Diagram (66)") {
    const auto& fp = builtin(Builtin::FinProd);
    const auto& mods = builtin_modules(Builtin::FinProd);
    AnnotatedDiagram host = make_host66(fp.sketch.graph);
    AnnotatedDiagram out = expand_modules(host, mods);
    Diagram hand65 = make_hand65(fp.sketch.graph);
    CHECK(diagrams_equal(out.diagram, hand65));

    AnnotatedDiagram again = expand_modules(out, mods);
    CHECK(diagrams_equal(again.diagram, out.diagram));

    for (const auto& n : host.diagram.shape().nodes()) {
        CHECK(out.diagram.shape().has_node(n));
        CHECK(out.diagram.node_value(n) == host.diagram.node_value(n));
    }
    for (const auto& [id, a] : host.diagram.shape().arrows())
        CHECK(out.diagram.arrow_value(id) == host.diagram.arrow_value(id));
}

TEST_CASE("expand_modules reproduces Diagram (81) from Diagram (80)") {
    const auto& ccc = builtin(Builtin::CCC);
    const auto& mods = builtin_modules(Builtin::CCC);

    Graph sh;
    sh.add_node("baa");
    sh.add_node("ev");
    sh.add_node("b");
    sh.add_arrow("e0", "ev", "baa");
    sh.add_arrow("e1", "ev", "b");
    AnnotatedDiagram host80;
    host80.diagram = Diagram(sh, ccc.sketch.graph, {{"baa", "ob"}, {"ev", "ar"}, {"b", "ob"}},
                             {{"e0", "source"}, {"e1", "target"}});
    host80.node_annotations = {{"baa", "B^A*A"}, {"ev", "eval"}, {"b", "B"}};
    AnnotatedDiagram out = expand_modules(host80, mods);

    Graph h;
    for (const auto& n : {"baa", "ev", "b", "ba", "a", "pr1", "cn", "pone", "ptwo", "pr2"})
        h.add_node(n);
    std::map<std::string, std::string> na = {{"baa", "ob"},  {"ev", "ar"},   {"b", "ob"},
                                             {"ba", "ob"},   {"a", "ob"},    {"pr1", "obxob"},
                                             {"cn", "cone"}, {"pone", "ar"}, {"ptwo", "ar"},
                                             {"pr2", "obxob"}};
    std::map<std::string, std::string> aa;
    int k = 0;
    auto arrow = [&](const std::string& s, const std::string& t, const std::string& v) {
        std::string id = "h" + std::to_string(k++);
        h.add_arrow(id, s, t);
        aa[id] = v;
    };
    arrow("ev", "baa", "source");
    arrow("ev", "b", "target");
    arrow("pr1", "ba", "p1");
    arrow("pr1", "a", "p2");
    arrow("pr1", "cn", "prod");
    arrow("cn", "pone", "lproj");
    arrow("cn", "ptwo", "rproj");
    arrow("pone", "baa", "source");
    arrow("pone", "ba", "target");
    arrow("ptwo", "baa", "source");
    arrow("ptwo", "a", "target");
    arrow("pr2", "b", "p1");
    arrow("pr2", "a", "p2");
    arrow("pr2", "ba", "fs");
    Diagram hand81(h, ccc.sketch.graph, na, aa);
    CHECK(diagrams_equal(out.diagram, hand81));
}
