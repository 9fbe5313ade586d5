#pragma once

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gbl/extension.hpp"
#include "gbl/sketch.hpp"

namespace gbl {

// Interned handles into a TermUniverse.
using ObId = int;
using ArrId = int;
using StepId = int;
using DiagId = int;
using ConeId = int;

// A diagram whose nodes and arrows carry terms of the theory. Raw shapes use
// caller names; interning renames canonically (n0..., e0...).
struct TermDiagram {
    Graph shape;
    std::map<std::string, ObId> nodes;
    std::map<std::string, ArrId> arrows;
};

struct TermCone {
    ObId vertex = -1;
    DiagId base = -1;                           // canonical
    std::map<std::string, ArrId> projections;   // canonical base node -> term
};

struct ObTermData {
    enum class Kind { Node, Lim };
    Kind kind = Kind::Node;
    std::string node;   // Kind::Node: a sketch node
    DiagId diagram = -1; // Kind::Lim: canonical base
    std::string key;
};

struct StepData {
    enum class Kind { Gen, Proj, Fillin };
    Kind kind = Kind::Gen;
    std::string gen;       // Gen: a sketch arrow
    ObId lim = -1;         // Proj: the canonical limit object
    std::string proj_node; // Proj: canonical base node
    ConeId cone = -1;      // Fillin
    ObId src = -1, tgt = -1;
    std::string key;
};

// A path of atomic steps, outermost first; the empty path at c is Id[c].
struct ArrTermData {
    ObId src = -1, tgt = -1;
    std::vector<StepId> steps;
    std::string key;
};

struct DiagramInterned {
    DiagId id = -1;
    std::map<std::string, std::string> node_map;  // raw -> canonical
    std::map<std::string, std::string> arrow_map; // raw -> canonical
};

class TermUniverse {
public:
    ObId intern_node_ob(const std::string& sketch_node);
    ObId intern_lim_ob(DiagId base);
    DiagramInterned intern_diagram(const TermDiagram& raw);
    ConeId intern_cone(ObId vertex, DiagId base, std::map<std::string, ArrId> projections);
    StepId intern_gen(const std::string& arrow, ObId src, ObId tgt);
    StepId intern_proj(ObId lim, const std::string& node);
    StepId intern_fillin(ConeId cone);
    ArrId intern_arr(ObId src, ObId tgt, std::vector<StepId> steps);
    ArrId intern_id(ObId c) { return intern_arr(c, c, {}); }
    ArrId compose(ArrId g, ArrId f); // g o f

    const ObTermData& ob(ObId i) const { return obs_[i]; }
    const StepData& step(StepId i) const { return steps_[i]; }
    const ArrTermData& arr(ArrId i) const { return arrs_[i]; }
    const TermDiagram& diagram(DiagId i) const { return diagrams_[i]; }
    const TermCone& cone(ConeId i) const { return cones_[i]; }
    std::size_t arr_count() const { return arrs_.size(); }

    // structural, replay-stable serializations
    std::string show_ob(ObId i) const;
    std::string show_arr(ArrId i) const;
    std::string show_diagram(DiagId i) const;
    std::string show_cone(ConeId i) const;

private:
    // deques: accessors hand out references that must survive later interning
    std::deque<ObTermData> obs_;
    std::deque<StepData> steps_;
    std::deque<ArrTermData> arrs_;
    std::deque<TermDiagram> diagrams_;
    std::deque<TermCone> cones_;
    std::map<std::string, int> ob_index_, step_index_, arr_index_, diagram_index_, cone_index_;
};

struct Fact {
    ArrId lhs = -1, rhs = -1;
    std::string provenance;
};

enum class Rule {
    EXOB,
    EXARR,
    EXCOMP,
    EXID,
    EXLIM,
    EXFIA,
    REF,
    TRANS,
    EXDIAG,
    COMPDIAG,
    IDL,
    IDR,
    ASSOC,
    CFIA,
    BANGFIA
};
const char* rule_name(Rule r);
Rule rule_from_name(const std::string& n);

// Congruence closure over constructed path terms, decided by bounded
// rewriting saturation (facts as two-way rewrite rules on sub-paths;
// identity facts shrink only).
class EqEngine {
public:
    explicit EqEngine(TermUniverse* u) : u_(u) {}
    void add_fact(ArrId a, ArrId b);
    void register_term(ArrId t);
    bool equal(ArrId a, ArrId b);
    bool budget_hit() const { return budget_hit_; }
    std::size_t term_count() const { return terms_.size(); }

private:
    ArrId find(ArrId x);
    void unite(ArrId a, ArrId b);
    void enqueue_term(ArrId t);
    void saturate();
    void apply_rule_to_term(std::size_t rule_idx, ArrId t);

    TermUniverse* u_;
    struct Rw {
        ArrId lhs, rhs;
    };
    std::vector<Rw> rules_;
    std::vector<ArrId> terms_;
    std::set<ArrId> term_set_;
    std::map<ArrId, ArrId> parent_;
    std::deque<std::size_t> new_rules_;
    std::deque<ArrId> new_terms_;
    bool budget_hit_ = false;
    std::size_t max_terms_ = 400000;
    std::size_t max_len_ = 64;
};

struct LogRecord {
    std::string op;                 // rule or derived-op tag
    std::vector<std::string> args;  // structural serializations
};

// A single-owner derivation session over a constructor space sketch.
// Sketch cone vertices intern as canonical limits and their named projections
// as canonical projections (properties T.1-T.3); EXLIM records the limit
// cone's commutativity facts (rule instance (44) draws them as commuting).
class KnowledgeBase {
public:
    explicit KnowledgeBase(const ConstructorSpaceSketch& s);
    KnowledgeBase(const KnowledgeBase&) = delete;
    KnowledgeBase& operator=(const KnowledgeBase&) = delete;

    const ConstructorSpaceSketch& sketch() const { return *sketch_; }
    TermUniverse& universe() { return u_; }
    const TermUniverse& universe() const { return u_; }

    // UnivMod: sketch material into the theory
    ObId ex_ob(const std::string& node);
    ArrId ex_arr(const std::string& arrow);
    // term formers
    ArrId ex_comp(ArrId g, ArrId f);
    ArrId ex_id(ObId c);
    ObId ex_lim(DiagId d);
    ArrId ex_fia(ConeId theta); // requires a commutative cone
    ArrId proj(ObId lim, const std::string& canonical_node);
    // diagram rules
    Fact ref(ArrId f);
    Fact trans(ArrId f, ArrId g, ArrId h);
    void ex_diag(const std::string& sketch_diagram);
    Fact compdiag(ArrId g, ArrId f);
    Fact idl(ArrId g);
    Fact idr(ArrId f);
    Fact assoc(ArrId h, ArrId g, ArrId f);
    void cfia(ArrId fillin_term);
    Fact bangfia(ObId lim, ArrId h, ArrId k);

    // congruence query (pure: no new facts)
    bool arrows_equal(ArrId f, ArrId g);
    // query with bounded automatic !FIA; applications are ordinary logged
    // rule instances
    bool equal_with_universal(ArrId f, ArrId g, int depth = 5);

    // lifting
    DiagramInterned lift_diagram(const Diagram& d);
    DiagramInterned intern_term_diagram(const TermDiagram& raw);

    // Lemma 3.2.1 / Lemma 3.3.4
    ArrId lim_fillin(DiagId d, const Subgraph& j);
    struct Iso {
        ArrId forward;  // phi : Lim[delta'] -> Lim[delta|J]
        ArrId backward; // psi : Lim[delta|J] -> Lim[delta']
    };
    Iso dominance_iso(DiagId dprime, const Subgraph& j);

    // extension oracle over a term diagram (kernel congruence + automatic
    // !FIA); exposed so classify_extension can run against the kernel
    ExtensionOracle extension_oracle(DiagId dprime, const Subgraph& j);
    ExtensionKind classify_term_extension(DiagId dprime, const Subgraph& j);

    const std::vector<Fact>& facts() const { return facts_; }
    void insert_fact_raw(ArrId f, ArrId g, const std::string& provenance); // testing backdoor

    const std::vector<LogRecord>& log() const { return log_; }
    std::string export_log() const;

private:
    friend std::unique_ptr<KnowledgeBase> replay_log(const ConstructorSpaceSketch& s,
                                                     const std::string& text);
    friend struct LogParser;

    void record(std::string op, std::vector<std::string> args);
    void insert_fact(ArrId a, ArrId b, const std::string& provenance);
    bool cone_commutative(const TermCone& c);
    ObId intern_ob_impl(const std::string& node);
    ArrId intern_arr_impl(const std::string& arrow);
    Iso single_step_iso(DiagId dk, const Subgraph& j);

    const ConstructorSpaceSketch* sketch_;
    TermUniverse u_;
    EqEngine eq_;
    std::vector<Fact> facts_;
    std::vector<LogRecord> log_;
    std::map<std::string, ObId> node_cache_;
    std::map<std::string, ArrId> arrow_cache_;
    std::map<std::string, DiagramInterned> vertex_info_;
    std::set<DiagId> lims_built_;
};

// Deterministic replay: parses an exported log and re-executes it.
std::unique_ptr<KnowledgeBase> replay_log(const ConstructorSpaceSketch& s,
                                          const std::string& text);

} // namespace gbl
