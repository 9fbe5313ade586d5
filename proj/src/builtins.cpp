#include "gbl/builtins.hpp"

#include <mutex>

namespace gbl {

namespace {

// Small builder for sketch diagrams with explicit path equations.
struct DiagB {
    Graph shape;
    std::map<std::string, std::string> na, aa;
    std::vector<PathEquation> eqs;

    DiagB& node(const std::string& id, const std::string& value) {
        shape.add_node(id);
        na[id] = value;
        return *this;
    }
    DiagB& arrow(const std::string& id, const std::string& src, const std::string& tgt,
                 const std::string& value) {
        shape.add_arrow(id, src, tgt);
        aa[id] = value;
        return *this;
    }
    // outermost-first arrow lists; an empty lhs/rhs is the identity at `at`
    DiagB& eq(std::vector<std::string> lhs, std::vector<std::string> rhs, std::string at = "") {
        eqs.push_back(PathEquation{ShapePath{std::move(lhs), at}, ShapePath{std::move(rhs), at}});
        return *this;
    }

    DiagramSpec build(const std::string& name, const std::shared_ptr<const Graph>& g) {
        DiagramSpec d;
        d.name = name;
        d.diagram = Diagram(std::move(shape), g, std::move(na), std::move(aa));
        d.equations = std::move(eqs);
        return d;
    }
};

Cone make_cone(const std::shared_ptr<const Graph>& g, const std::string& vertex, DiagB base,
               std::map<std::string, std::string> projections) {
    Cone c;
    c.vertex = vertex;
    c.base = Diagram(std::move(base.shape), g, std::move(base.na), std::move(base.aa));
    c.projections = std::move(projections);
    c.validate();
    return c;
}

void add_id_arrows(Graph& g, const std::vector<std::string>& nodes) {
    for (const auto& n : nodes) g.add_arrow("id_" + n, n, n);
}

DiagramSpec id_diagram(const std::string& name, const std::shared_ptr<const Graph>& g,
                       const std::vector<std::string>& nodes) {
    DiagB d;
    int k = 0;
    for (const auto& n : nodes) {
        std::string sn = "n" + std::to_string(k);
        std::string se = "e" + std::to_string(k);
        d.node(sn, n);
        d.arrow(se, sn, sn, "id_" + n);
        d.eq({se}, {}, sn);
        ++k;
    }
    return d.build(name, g);
}

// B.2: the sketch Cat for categories. Cones (52) and diagrams (53) are not
// printed in the source; they are reconstructed from the standard
// finite-limit sketch for categories in Barr-Wells. The pairing arrows
// lpair/rpair (the <lfac,mfac>, <mfac,rfac> of Section 9.1) are needed to pin
// lasc/rasc by diagrams. The empty cone on 1 lives here so that 1 is
// genuinely terminal in models.
ConstructorSpaceSketch make_cat() {
    auto g = std::make_shared<Graph>();
    for (const auto& n : {"1", "ob", "ar", "ar2", "ar3"}) g->add_node(n);
    g->add_arrow("unit", "ob", "ar");
    g->add_arrow("source", "ar", "ob");
    g->add_arrow("target", "ar", "ob");
    g->add_arrow("comp", "ar2", "ar");
    g->add_arrow("lfac2", "ar2", "ar");
    g->add_arrow("rfac2", "ar2", "ar");
    g->add_arrow("lfac3", "ar3", "ar");
    g->add_arrow("mfac3", "ar3", "ar");
    g->add_arrow("rfac3", "ar3", "ar");
    g->add_arrow("lasc", "ar3", "ar2");
    g->add_arrow("rasc", "ar3", "ar2");
    g->add_arrow("lunit", "ar", "ar2");
    g->add_arrow("runit", "ar", "ar2");
    g->add_arrow("lpair", "ar3", "ar2");
    g->add_arrow("rpair", "ar3", "ar2");
    add_id_arrows(*g, {"1", "ob", "ar", "ar2", "ar3"});

    FiniteLimitSketch s;
    s.name = "Cat";
    s.graph = g;

    // cones: 1 over the empty diagram; ar2/ar3 over composability diagrams.
    s.cones.push_back({"c_one", make_cone(g, "1", DiagB{}, {})});
    {
        DiagB b;
        b.node("l", "ar").node("m", "ob").node("r", "ar");
        b.arrow("sl", "l", "m", "source").arrow("tr", "r", "m", "target");
        s.cones.push_back({"c_ar2", make_cone(g, "ar2", std::move(b),
                                              {{"l", "lfac2"}, {"r", "rfac2"}})});
    }
    {
        DiagB b;
        b.node("l", "ar").node("m1", "ob").node("m", "ar").node("m2", "ob").node("r", "ar");
        b.arrow("sl", "l", "m1", "source").arrow("tm", "m", "m1", "target");
        b.arrow("sm", "m", "m2", "source").arrow("tr", "r", "m2", "target");
        s.cones.push_back({"c_ar3", make_cone(g, "ar3", std::move(b),
                                              {{"l", "lfac3"}, {"m", "mfac3"}, {"r", "rfac3"}})});
    }

    // diagrams (53): unit endpoints, identities, endpoint coherence of comp,
    // pairings, associativity, unit laws.
    {
        DiagB d;
        d.node("o", "ob").node("a", "ar");
        d.arrow("u", "o", "a", "unit").arrow("s", "a", "o", "source").arrow("t", "a", "o", "target");
        d.eq({"s", "u"}, {}, "o").eq({"t", "u"}, {}, "o");
        s.diagrams.push_back(d.build("d_unit", g));
    }
    s.diagrams.push_back(id_diagram("d_ids", g, {"1", "ob", "ar", "ar2", "ar3"}));
    {
        DiagB d;
        d.node("p", "ar2").node("c", "ar").node("l", "ar").node("r", "ar");
        d.node("so", "ob").node("to", "ob");
        d.arrow("pc", "p", "c", "comp").arrow("pl", "p", "l", "lfac2").arrow("pr", "p", "r", "rfac2");
        d.arrow("cs", "c", "so", "source").arrow("ct", "c", "to", "target");
        d.arrow("rs", "r", "so", "source").arrow("lt", "l", "to", "target");
        d.eq({"cs", "pc"}, {"rs", "pr"}).eq({"ct", "pc"}, {"lt", "pl"});
        s.diagrams.push_back(d.build("d_comp", g));
    }
    {
        DiagB d;
        d.node("t", "ar3").node("p", "ar2").node("l", "ar").node("m", "ar");
        d.arrow("tp", "t", "p", "lpair").arrow("pl", "p", "l", "lfac2").arrow("pm", "p", "m", "rfac2");
        d.arrow("tl", "t", "l", "lfac3").arrow("tm", "t", "m", "mfac3");
        d.eq({"pl", "tp"}, {"tl"}).eq({"pm", "tp"}, {"tm"});
        s.diagrams.push_back(d.build("d_lpair", g));
    }
    {
        DiagB d;
        d.node("t", "ar3").node("p", "ar2").node("m", "ar").node("r", "ar");
        d.arrow("tp", "t", "p", "rpair").arrow("pm", "p", "m", "lfac2").arrow("pr", "p", "r", "rfac2");
        d.arrow("tm", "t", "m", "mfac3").arrow("tr", "t", "r", "rfac3");
        d.eq({"pm", "tp"}, {"tm"}).eq({"pr", "tp"}, {"tr"});
        s.diagrams.push_back(d.build("d_rpair", g));
    }
    {
        // lasc <h,g,f> = <h o g, f>
        DiagB d;
        d.node("t", "ar3").node("p", "ar2").node("q", "ar2").node("a", "ar").node("r", "ar");
        d.arrow("tp", "t", "p", "lasc").arrow("tq", "t", "q", "lpair");
        d.arrow("pa", "p", "a", "lfac2").arrow("qa", "q", "a", "comp");
        d.arrow("pr", "p", "r", "rfac2").arrow("tr", "t", "r", "rfac3");
        d.eq({"pa", "tp"}, {"qa", "tq"}).eq({"pr", "tp"}, {"tr"});
        s.diagrams.push_back(d.build("d_lasc", g));
    }
    {
        // rasc <h,g,f> = <h, g o f>
        DiagB d;
        d.node("t", "ar3").node("p", "ar2").node("q", "ar2").node("a", "ar").node("l", "ar");
        d.arrow("tp", "t", "p", "rasc").arrow("tq", "t", "q", "rpair");
        d.arrow("pa", "p", "a", "rfac2").arrow("qa", "q", "a", "comp");
        d.arrow("pl", "p", "l", "lfac2").arrow("tl", "t", "l", "lfac3");
        d.eq({"pa", "tp"}, {"qa", "tq"}).eq({"pl", "tp"}, {"tl"});
        s.diagrams.push_back(d.build("d_rasc", g));
    }
    {
        DiagB d;
        d.node("t", "ar3").node("p", "ar2").node("q", "ar2").node("c", "ar");
        d.arrow("tp", "t", "p", "lasc").arrow("tq", "t", "q", "rasc");
        d.arrow("pc", "p", "c", "comp").arrow("qc", "q", "c", "comp");
        d.eq({"pc", "tp"}, {"qc", "tq"});
        s.diagrams.push_back(d.build("d_assoc", g));
    }
    {
        // lunit f = <Id[target f], f>
        DiagB d;
        d.node("a", "ar").node("p", "ar2").node("i", "ar").node("o", "ob");
        d.arrow("ap", "a", "p", "lunit").arrow("pl", "p", "i", "lfac2");
        d.arrow("pr", "p", "a", "rfac2").arrow("pc", "p", "a", "comp");
        d.arrow("at", "a", "o", "target").arrow("ou", "o", "i", "unit");
        d.eq({"pl", "ap"}, {"ou", "at"}).eq({"pr", "ap"}, {}, "a").eq({"pc", "ap"}, {}, "a");
        s.diagrams.push_back(d.build("d_lunit", g));
    }
    {
        // runit f = <f, Id[source f]>
        DiagB d;
        d.node("a", "ar").node("p", "ar2").node("i", "ar").node("o", "ob");
        d.arrow("ap", "a", "p", "runit").arrow("pr", "p", "i", "rfac2");
        d.arrow("pl", "p", "a", "lfac2").arrow("pc", "p", "a", "comp");
        d.arrow("as", "a", "o", "source").arrow("ou", "o", "i", "unit");
        d.eq({"pr", "ap"}, {"ou", "as"}).eq({"pl", "ap"}, {}, "a").eq({"pc", "ap"}, {}, "a");
        s.diagrams.push_back(d.build("d_runit", g));
    }

    ConstructorSpaceSketch cs;
    cs.sketch = std::move(s);
    cs.cat_part = Subgraph::full_of(*g);
    return cs;
}

// B.3: FinProd. Figures (59)-(61) are not printed; reconstructed so that the
// chosen terminal object is terminal and prod-cones are genuine products
// (existence and uniqueness of fill-ins via cone ~ fid). The node obxob with
// p1/p2 is implied by the arrow prod : ob x ob -> cone and the B.1 notation;
// lproj/rproj are the named projections of cone (58); coneobs extracts the
// pair of leg targets.
ConstructorSpaceSketch make_finprod() {
    ConstructorSpaceSketch cat = make_cat();
    auto g = std::make_shared<Graph>(*cat.sketch.graph);
    for (const auto& n : {"ta", "cone", "fid", "obxob"}) g->add_node(n);
    g->add_arrow("ter", "1", "ob");
    g->add_arrow("bang", "ob", "ta");
    g->add_arrow("inc", "ta", "ar");
    g->add_arrow("prod", "obxob", "cone");
    g->add_arrow("soco", "fid", "cone");
    g->add_arrow("taco", "fid", "cone");
    g->add_arrow("ufid", "cone", "fid");
    g->add_arrow("fia", "fid", "ar");
    g->add_arrow("p1", "obxob", "ob");
    g->add_arrow("p2", "obxob", "ob");
    g->add_arrow("lproj", "cone", "ar");
    g->add_arrow("rproj", "cone", "ar");
    g->add_arrow("coneobs", "cone", "obxob");
    add_id_arrows(*g, {"ta", "cone", "fid", "obxob"});

    FiniteLimitSketch s;
    s.name = "FinProd";
    s.graph = g;
    for (auto& d : cat.sketch.diagrams) {
        d.diagram = Diagram(d.diagram.shape(), g, d.diagram.node_assignment(),
                            d.diagram.arrow_assignment());
        s.diagrams.push_back(std::move(d));
    }
    for (auto& c : cat.sketch.cones) {
        c.cone.base = Diagram(c.cone.base.shape(), g, c.cone.base.node_assignment(),
                              c.cone.base.arrow_assignment());
        s.cones.push_back(std::move(c));
    }

    {
        DiagB b;
        b.node("m", "ob").node("n", "ob");
        s.cones.push_back({"c_obxob", make_cone(g, "obxob", std::move(b), {{"m", "p1"}, {"n", "p2"}})});
    }
    {
        // cone (56): ta is the set of arrows into the chosen terminal
        DiagB b;
        b.node("a", "ar").node("o", "ob").node("u", "1");
        b.arrow("at", "a", "o", "target").arrow("ut", "u", "o", "ter");
        s.cones.push_back({"c_ta", make_cone(g, "ta", std::move(b), {{"a", "inc"}})});
    }
    {
        // cone (58): two legs with a common source
        DiagB b;
        b.node("l", "ar").node("v", "ob").node("r", "ar");
        b.arrow("ls", "l", "v", "source").arrow("rs", "r", "v", "source");
        s.cones.push_back({"c_cone", make_cone(g, "cone", std::move(b), {{"l", "lproj"}, {"r", "rproj"}})});
    }
    {
        // cone (59): sawhorse diagrams; ar2 nodes with shared comp targets
        // encode that the fill-in commutes with both legs
        DiagB b;
        b.node("gamma", "cone").node("lambda", "cone").node("h", "ar");
        b.node("p1g", "ar").node("p2g", "ar").node("p1l", "ar").node("p2l", "ar");
        b.node("q1", "ar2").node("q2", "ar2");
        b.arrow("gl", "gamma", "p1g", "lproj").arrow("gr", "gamma", "p2g", "rproj");
        b.arrow("ll", "lambda", "p1l", "lproj").arrow("lr", "lambda", "p2l", "rproj");
        b.arrow("q1l", "q1", "p1l", "lfac2").arrow("q1r", "q1", "h", "rfac2");
        b.arrow("q1c", "q1", "p1g", "comp");
        b.arrow("q2l", "q2", "p2l", "lfac2").arrow("q2r", "q2", "h", "rfac2");
        b.arrow("q2c", "q2", "p2g", "comp");
        s.cones.push_back({"c_fid", make_cone(g, "fid", std::move(b),
                                              {{"gamma", "soco"}, {"lambda", "taco"}, {"h", "fia"}})});
    }

    {
        // (60): bang's value has the right source; every arrow into the
        // terminal is the chosen one
        DiagB d;
        d.node("o", "ob").node("t", "ta").node("a", "ar");
        d.arrow("ob", "o", "t", "bang").arrow("ti", "t", "a", "inc").arrow("as", "a", "o", "source");
        d.eq({"as", "ti", "ob"}, {}, "o");
        s.diagrams.push_back(d.build("d_bang", g));
    }
    {
        DiagB d;
        d.node("t", "ta").node("a", "ar").node("o", "ob").node("t2", "ta");
        d.arrow("ti", "t", "a", "inc").arrow("as", "a", "o", "source");
        d.arrow("ob", "o", "t2", "bang").arrow("ti2", "t2", "a", "inc");
        d.eq({"ti2", "ob", "as", "ti"}, {"ti"});
        s.diagrams.push_back(d.build("d_ta_unique", g));
    }
    {
        // (61): the fill-in into the chosen product exists and is unique
        DiagB d;
        d.node("c", "cone").node("f", "fid").node("x", "obxob").node("c3", "cone");
        d.arrow("cu", "c", "f", "ufid").arrow("fs", "f", "c", "soco");
        d.arrow("ft", "f", "c3", "taco").arrow("cx", "c", "x", "coneobs").arrow("xp", "x", "c3", "prod");
        d.eq({"fs", "cu"}, {}, "c").eq({"cu", "fs"}, {}, "f").eq({"ft", "cu"}, {"xp", "cx"});
        s.diagrams.push_back(d.build("d_ufid", g));
    }
    {
        // (62): product cone projections target the right objects
        DiagB d;
        d.node("x", "obxob").node("c", "cone").node("l", "ar").node("r", "ar");
        d.node("m", "ob").node("n", "ob");
        d.arrow("xc", "x", "c", "prod").arrow("cl", "c", "l", "lproj").arrow("cr", "c", "r", "rproj");
        d.arrow("lt", "l", "m", "target").arrow("rt", "r", "n", "target");
        d.arrow("xm", "x", "m", "p1").arrow("xn", "x", "n", "p2");
        d.eq({"lt", "cl", "xc"}, {"xm"}).eq({"rt", "cr", "xc"}, {"xn"});
        s.diagrams.push_back(d.build("d_prodproj", g));
    }
    {
        DiagB d;
        d.node("c", "cone").node("x", "obxob").node("l", "ar").node("r", "ar");
        d.node("m", "ob").node("n", "ob");
        d.arrow("cx", "c", "x", "coneobs").arrow("xm", "x", "m", "p1").arrow("xn", "x", "n", "p2");
        d.arrow("cl", "c", "l", "lproj").arrow("cr", "c", "r", "rproj");
        d.arrow("lt", "l", "m", "target").arrow("rt", "r", "n", "target");
        d.eq({"xm", "cx"}, {"lt", "cl"}).eq({"xn", "cx"}, {"rt", "cr"});
        s.diagrams.push_back(d.build("d_coneobs", g));
    }
    s.diagrams.push_back(id_diagram("d_ids_fp", g, {"ta", "cone", "fid", "obxob"}));

    ConstructorSpaceSketch cs;
    cs.sketch = std::move(s);
    cs.cat_part = cat.cat_part;
    return cs;
}

// B.5: FinLim adds equalizer machinery to FinProd. The paper's arrow list
// types esoco/etaco as efid -> econe while cone (72) names base projections;
// the arrow-list typing is kept (needed by Diagram (73)).
ConstructorSpaceSketch make_finlim() {
    ConstructorSpaceSketch fp = make_finprod();
    auto g = std::make_shared<Graph>(*fp.sketch.graph);
    for (const auto& n : {"ppair", "econe", "efid"}) g->add_node(n);
    g->add_arrow("equ", "ppair", "econe");
    g->add_arrow("top", "ppair", "ar");
    g->add_arrow("bot", "ppair", "ar");
    g->add_arrow("soob", "ppair", "ob");
    g->add_arrow("etop", "econe", "ar");
    g->add_arrow("ebot", "econe", "ar");
    g->add_arrow("esoco", "efid", "econe");
    g->add_arrow("etaco", "efid", "econe");
    g->add_arrow("eufid", "econe", "efid");
    g->add_arrow("efia", "efid", "ar");
    add_id_arrows(*g, {"ppair", "econe", "efid"});

    FiniteLimitSketch s;
    s.name = "FinLim";
    s.graph = g;
    for (auto& d : fp.sketch.diagrams) {
        d.diagram = Diagram(d.diagram.shape(), g, d.diagram.node_assignment(),
                            d.diagram.arrow_assignment());
        s.diagrams.push_back(std::move(d));
    }
    for (auto& c : fp.sketch.cones) {
        c.cone.base = Diagram(c.cone.base.shape(), g, c.cone.base.node_assignment(),
                              c.cone.base.arrow_assignment());
        s.cones.push_back(std::move(c));
    }

    {
        // cone (70)
        DiagB b;
        b.node("f", "ar").node("b", "ob").node("a", "ob").node("g", "ar");
        b.arrow("ft", "f", "b", "target").arrow("fs", "f", "a", "source");
        b.arrow("gs", "g", "a", "source").arrow("gt", "g", "b", "target");
        s.cones.push_back({"c_ppair", make_cone(g, "ppair", std::move(b),
                                                {{"f", "top"}, {"g", "bot"}, {"a", "soob"}})});
    }
    DiagB econe_base;
    econe_base.node("cmp", "ar").node("q1", "ar2").node("q2", "ar2").node("e", "ar");
    econe_base.node("f", "ar").node("g", "ar").node("oa", "ob").node("obb", "ob");
    econe_base.arrow("q1c", "q1", "cmp", "comp").arrow("q1l", "q1", "f", "lfac2");
    econe_base.arrow("q1r", "q1", "e", "rfac2");
    econe_base.arrow("q2c", "q2", "cmp", "comp").arrow("q2l", "q2", "g", "lfac2");
    econe_base.arrow("q2r", "q2", "e", "rfac2");
    econe_base.arrow("et", "e", "oa", "target").arrow("fs", "f", "oa", "source");
    econe_base.arrow("gs", "g", "oa", "source").arrow("ft", "f", "obb", "target");
    econe_base.arrow("gt", "g", "obb", "target");
    {
        // cone (71)
        DiagB b = econe_base;
        s.cones.push_back({"c_econe", make_cone(g, "econe", std::move(b), {{"f", "etop"}, {"g", "ebot"}})});
    }
    {
        // cone over the pushout of (71) and (72), glued along e -> oa
        DiagB b = econe_base;
        b.node("v", "ar").node("x", "ob").node("u", "ar").node("q3", "ar2").node("oe", "ob");
        b.arrow("vs", "v", "x", "source").arrow("us", "u", "x", "source");
        b.arrow("q3r", "q3", "v", "rfac2").arrow("q3c", "q3", "u", "comp").arrow("q3l", "q3", "e", "lfac2");
        b.arrow("vt", "v", "oe", "target").arrow("es", "e", "oe", "source");
        s.cones.push_back({"c_efid", make_cone(g, "efid", std::move(b), {{"v", "efia"}})});
    }
    {
        // (73)
        DiagB d;
        d.node("ec", "econe").node("ef", "efid");
        d.arrow("ce", "ec", "ef", "eufid").arrow("fc", "ef", "ec", "esoco");
        d.eq({"fc", "ce"}, {}, "ec").eq({"ce", "fc"}, {}, "ef");
        s.diagrams.push_back(d.build("d_eufid", g));
    }
    {
        // (74)
        DiagB d;
        d.node("p", "ppair").node("ec", "econe").node("f", "ar").node("g", "ar");
        d.arrow("pe", "p", "ec", "equ").arrow("pt", "p", "f", "top").arrow("et", "ec", "f", "etop");
        d.arrow("pb", "p", "g", "bot").arrow("eb", "ec", "g", "ebot");
        d.eq({"et", "pe"}, {"pt"}).eq({"eb", "pe"}, {"pb"});
        s.diagrams.push_back(d.build("d_equ", g));
    }
    s.diagrams.push_back(id_diagram("d_ids_fl", g, {"ppair", "econe", "efid"}));

    ConstructorSpaceSketch cs;
    cs.sketch = std::move(s);
    cs.cat_part = fp.cat_part;
    return cs;
}

// B.6/B.7: CCC built on FinProd. Figures (82) and (84) are garbled in the
// source; the auxiliary arrows below reconstruct Definition CCC.1-CCC.4:
// lam : twovf -> curry and uncurry : curry -> twovf mediate the lambda
// bijection (an arrow typed ar -> ar cannot: one arrow can be a two-variable
// function at several typings with different curried forms), xid forms
// g x Id[A] (pinned by the tupling arrows cq1/cq2/cq3), evpair forms
// <eval, g x Id[A]>, fsx sends (B,A) to (B^A,A), and tcpair/bpair extract
// object pairs.
ConstructorSpaceSketch make_ccc() {
    ConstructorSpaceSketch fp = make_finprod();
    auto g = std::make_shared<Graph>(*fp.sketch.graph);
    for (const auto& n : {"twovf", "curry"}) g->add_node(n);
    g->add_arrow("fs", "obxob", "ob");
    g->add_arrow("ev", "obxob", "ar");
    g->add_arrow("lam", "twovf", "curry");
    g->add_arrow("tsource", "twovf", "ob");
    g->add_arrow("ttarget", "twovf", "ob");
    g->add_arrow("tarrow", "twovf", "ar");
    g->add_arrow("tpair", "twovf", "obxob");
    g->add_arrow("csource", "curry", "ob");
    g->add_arrow("ctarget", "curry", "ob");
    g->add_arrow("carrow", "curry", "ar");
    g->add_arrow("cpair", "curry", "obxob");
    g->add_arrow("uncurry", "curry", "twovf");
    g->add_arrow("tcpair", "twovf", "obxob");
    g->add_arrow("bpair", "curry", "obxob");
    g->add_arrow("xid", "curry", "ar");
    g->add_arrow("evpair", "curry", "ar2");
    g->add_arrow("cq1", "curry", "ar2");
    g->add_arrow("cq2", "curry", "ar2");
    g->add_arrow("cq3", "curry", "ar2");
    g->add_arrow("fsx", "obxob", "obxob");
    add_id_arrows(*g, {"twovf", "curry"});

    FiniteLimitSketch s;
    s.name = "CCC";
    s.graph = g;
    for (auto& d : fp.sketch.diagrams) {
        d.diagram = Diagram(d.diagram.shape(), g, d.diagram.node_assignment(),
                            d.diagram.arrow_assignment());
        s.diagrams.push_back(std::move(d));
    }
    for (auto& c : fp.sketch.cones) {
        c.cone.base = Diagram(c.cone.base.shape(), g, c.cone.base.node_assignment(),
                              c.cone.base.arrow_assignment());
        s.cones.push_back(std::move(c));
    }

    auto mods = standard_modules(g);

    {
        // cone (77): twovf over the expanded f : B*A -> C host
        DiagB h;
        h.node("bxa", "ob").node("f", "ar").node("c", "ob");
        h.arrow("fs_", "f", "bxa", "source").arrow("ft", "f", "c", "target");
        AnnotatedDiagram host;
        host.diagram = Diagram(std::move(h.shape), g, std::move(h.na), std::move(h.aa));
        host.node_annotations = {{"bxa", "B*A"}, {"f", "f"}, {"c", "C"}};
        AnnotatedDiagram base = expand_modules(host, mods);
        const std::string* pr = find_node_by_annotation(base, "obxob", "(B,A)");
        if (!pr) throw error("CCC: twovf base expansion lost its pair node");
        Cone c;
        c.vertex = "twovf";
        c.base = base.diagram;
        c.projections = {{"f", "tarrow"}, {"bxa", "tsource"}, {"c", "ttarget"}, {*pr, "tpair"}};
        c.validate();
        s.cones.push_back({"c_twovf", std::move(c)});
    }
    {
        // cone (78): curry over the expanded g : B -> C^A host
        DiagB h;
        h.node("b", "ob").node("gar", "ar").node("ca", "ob");
        h.arrow("gs", "gar", "b", "source").arrow("gt", "gar", "ca", "target");
        AnnotatedDiagram host;
        host.diagram = Diagram(std::move(h.shape), g, std::move(h.na), std::move(h.aa));
        host.node_annotations = {{"b", "B"}, {"gar", "g"}, {"ca", "C^A"}};
        AnnotatedDiagram base = expand_modules(host, mods);
        const std::string* pr = find_node_by_annotation(base, "obxob", "(C,A)");
        if (!pr) throw error("CCC: curry base expansion lost its pair node");
        Cone c;
        c.vertex = "curry";
        c.base = base.diagram;
        c.projections = {{"gar", "carrow"}, {"b", "csource"}, {"ca", "ctarget"}, {*pr, "cpair"}};
        c.validate();
        s.cones.push_back({"c_curry", std::move(c)});
    }

    {
        DiagB d;
        d.node("x", "obxob").node("y", "obxob").node("o1", "ob").node("o2", "ob");
        d.arrow("xy", "x", "y", "fsx").arrow("yp1", "y", "o1", "p1").arrow("yp2", "y", "o2", "p2");
        d.arrow("xf", "x", "o1", "fs").arrow("xp2", "x", "o2", "p2");
        d.eq({"yp1", "xy"}, {"xf"}).eq({"yp2", "xy"}, {"xp2"});
        s.diagrams.push_back(d.build("d_fsx", g));
    }
    {
        // (80): eval has source B^A x A and target B
        DiagB d;
        d.node("x", "obxob").node("a", "ar").node("y", "obxob").node("c", "cone");
        d.node("l", "ar").node("o", "ob").node("b", "ob");
        d.arrow("xa", "x", "a", "ev").arrow("xy", "x", "y", "fsx").arrow("yc", "y", "c", "prod");
        d.arrow("cl", "c", "l", "lproj").arrow("ls", "l", "o", "source");
        d.arrow("as", "a", "o", "source").arrow("at", "a", "b", "target").arrow("xb", "x", "b", "p1");
        d.eq({"as", "xa"}, {"ls", "cl", "yc", "xy"}).eq({"at", "xa"}, {"xb"});
        s.diagrams.push_back(d.build("d_ev", g));
    }
    {
        // (82): lambda f has the right endpoints
        DiagB d;
        d.node("t", "twovf").node("cu", "curry");
        d.node("x", "obxob").node("y", "obxob").node("o", "ob");
        d.arrow("tc", "t", "cu", "lam");
        d.arrow("cp", "cu", "x", "cpair").arrow("tx", "t", "x", "tcpair");
        d.arrow("cs", "cu", "o", "csource").arrow("tp", "t", "y", "tpair").arrow("yp", "y", "o", "p1");
        d.eq({"cp", "tc"}, {"tx"}).eq({"cs", "tc"}, {"yp", "tp"});
        s.diagrams.push_back(d.build("d_lam", g));
    }
    {
        DiagB d;
        d.node("t", "twovf").node("x", "obxob").node("o1", "ob").node("o2", "ob").node("y", "obxob");
        d.arrow("tx", "t", "x", "tcpair").arrow("xp1", "x", "o1", "p1").arrow("xp2", "x", "o2", "p2");
        d.arrow("tt", "t", "o1", "ttarget").arrow("ty", "t", "y", "tpair").arrow("yp2", "y", "o2", "p2");
        d.eq({"xp1", "tx"}, {"tt"}).eq({"xp2", "tx"}, {"yp2", "ty"});
        s.diagrams.push_back(d.build("d_tcpair", g));
    }
    {
        DiagB d;
        d.node("cu", "curry").node("t", "twovf").node("a", "ar").node("p", "ar2");
        d.node("x", "obxob").node("y", "obxob").node("o", "ob");
        d.arrow("ct", "cu", "t", "uncurry").arrow("ta", "t", "a", "tarrow");
        d.arrow("cp", "cu", "p", "evpair").arrow("pc", "p", "a", "comp");
        d.arrow("tx", "t", "x", "tpair").arrow("cb", "cu", "x", "bpair");
        d.arrow("tt", "t", "o", "ttarget").arrow("cy", "cu", "y", "cpair").arrow("yp1", "y", "o", "p1");
        d.eq({"ta", "ct"}, {"pc", "cp"}).eq({"tx", "ct"}, {"cb"}).eq({"tt", "ct"}, {"yp1", "cy"});
        s.diagrams.push_back(d.build("d_uncurry", g));
    }
    {
        DiagB d;
        d.node("cu", "curry").node("x", "obxob").node("o1", "ob").node("o2", "ob").node("y", "obxob");
        d.arrow("cx", "cu", "x", "bpair").arrow("xp1", "x", "o1", "p1").arrow("xp2", "x", "o2", "p2");
        d.arrow("cs", "cu", "o1", "csource").arrow("cy", "cu", "y", "cpair").arrow("yp2", "y", "o2", "p2");
        d.eq({"xp1", "cx"}, {"cs"}).eq({"xp2", "cx"}, {"yp2", "cy"});
        s.diagrams.push_back(d.build("d_bpair", g));
    }
    {
        DiagB d;
        d.node("cu", "curry").node("p", "ar2").node("a1", "ar").node("a2", "ar").node("x", "obxob");
        d.arrow("cp", "cu", "p", "evpair").arrow("pl", "p", "a1", "lfac2").arrow("pr", "p", "a2", "rfac2");
        d.arrow("cx", "cu", "x", "cpair").arrow("xa", "x", "a1", "ev").arrow("ci", "cu", "a2", "xid");
        d.eq({"pl", "cp"}, {"xa", "cx"}).eq({"pr", "cp"}, {"ci"});
        s.diagrams.push_back(d.build("d_evpair", g));
    }
    {
        // cq1 = <p1 of C^A x A, g x Id>, cq2 = <g, p1 of B x A>, shared composite
        DiagB d;
        d.node("cu", "curry").node("p", "ar2").node("q", "ar2").node("a1", "ar").node("a2", "ar");
        d.node("ac", "ar").node("x", "obxob").node("y", "obxob").node("c", "cone");
        d.node("g1", "ar").node("b1", "ar").node("xb", "obxob").node("cb", "cone");
        d.arrow("cp", "cu", "p", "cq1").arrow("cq", "cu", "q", "cq2");
        d.arrow("pl", "p", "a1", "lfac2").arrow("pr", "p", "a2", "rfac2").arrow("pc", "p", "ac", "comp");
        d.arrow("ql", "q", "g1", "lfac2").arrow("qr", "q", "b1", "rfac2").arrow("qc", "q", "ac", "comp");
        d.arrow("ci", "cu", "a2", "xid").arrow("ca", "cu", "g1", "carrow");
        d.arrow("cx", "cu", "x", "cpair").arrow("xy", "x", "y", "fsx").arrow("yc", "y", "c", "prod");
        d.arrow("cl", "c", "a1", "lproj");
        d.arrow("cbp", "cu", "xb", "bpair").arrow("xbc", "xb", "cb", "prod").arrow("cbl", "cb", "b1", "lproj");
        d.eq({"pl", "cp"}, {"cl", "yc", "xy", "cx"}).eq({"pr", "cp"}, {"ci"});
        d.eq({"ql", "cq"}, {"ca"}).eq({"qr", "cq"}, {"cbl", "xbc", "cbp"});
        d.eq({"pc", "cp"}, {"qc", "cq"});
        s.diagrams.push_back(d.build("d_cq12", g));
    }
    {
        // cq3 = <p2 of C^A x A, g x Id>, composite p2 of B x A
        DiagB d;
        d.node("cu", "curry").node("p", "ar2").node("a1", "ar").node("a2", "ar").node("a3", "ar");
        d.node("x", "obxob").node("y", "obxob").node("c1", "cone").node("xb", "obxob").node("c2", "cone");
        d.arrow("cp", "cu", "p", "cq3");
        d.arrow("pl", "p", "a1", "lfac2").arrow("pr", "p", "a2", "rfac2").arrow("pc", "p", "a3", "comp");
        d.arrow("ci", "cu", "a2", "xid");
        d.arrow("cx", "cu", "x", "cpair").arrow("xy", "x", "y", "fsx").arrow("yc1", "y", "c1", "prod");
        d.arrow("c1r", "c1", "a1", "rproj");
        d.arrow("cb", "cu", "xb", "bpair").arrow("xbc", "xb", "c2", "prod").arrow("c2r", "c2", "a3", "rproj");
        d.eq({"pl", "cp"}, {"c1r", "yc1", "xy", "cx"}).eq({"pr", "cp"}, {"ci"});
        d.eq({"pc", "cp"}, {"c2r", "xbc", "cb"});
        s.diagrams.push_back(d.build("d_cq3", g));
    }
    {
        // (83) as a function-level law: eval o (lambda f x Id) = f on twovf
        DiagB d;
        d.node("t", "twovf").node("cu", "curry").node("p", "ar2").node("a", "ar");
        d.arrow("tc", "t", "cu", "lam").arrow("cp", "cu", "p", "evpair");
        d.arrow("pc", "p", "a", "comp").arrow("ta", "t", "a", "tarrow");
        d.eq({"pc", "cp", "tc"}, {"ta"});
        s.diagrams.push_back(d.build("d_ccc3", g));
    }
    {
        // (84): lambda(eval o (g x Id)) = g on curry
        DiagB d;
        d.node("cu", "curry").node("t", "twovf");
        d.arrow("cl", "cu", "t", "uncurry").arrow("tc", "t", "cu", "lam");
        d.eq({"tc", "cl"}, {}, "cu");
        s.diagrams.push_back(d.build("d_ccc4", g));
    }
    s.diagrams.push_back(id_diagram("d_ids_ccc", g, {"twovf", "curry"}));

    ConstructorSpaceSketch cs;
    cs.sketch = std::move(s);
    cs.cat_part = fp.cat_part;
    return cs;
}

} // namespace

const ConstructorSpaceSketch& builtin(Builtin which) {
    static const ConstructorSpaceSketch cat = make_cat();
    static const ConstructorSpaceSketch finprod = make_finprod();
    static const ConstructorSpaceSketch finlim = make_finlim();
    static const ConstructorSpaceSketch ccc = make_ccc();
    switch (which) {
        case Builtin::Cat:
            return cat;
        case Builtin::FinProd:
            return finprod;
        case Builtin::FinLim:
            return finlim;
        case Builtin::CCC:
            return ccc;
    }
    throw error("builtin: unknown");
}

const ConstructorSpaceSketch& builtin(const std::string& name) {
    if (name == "Cat") return builtin(Builtin::Cat);
    if (name == "FinProd") return builtin(Builtin::FinProd);
    if (name == "FinLim") return builtin(Builtin::FinLim);
    if (name == "CCC") return builtin(Builtin::CCC);
    throw error("builtin: unknown sketch '" + name + "'");
}

const std::vector<ModuleTemplate>& builtin_modules(Builtin which) {
    static std::map<int, std::vector<ModuleTemplate>> cache;
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(static_cast<int>(which));
    if (it == cache.end())
        it = cache.emplace(static_cast<int>(which), standard_modules(builtin(which).sketch.graph))
                 .first;
    return it->second;
}

} // namespace gbl
