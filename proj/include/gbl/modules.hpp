#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "gbl/diagram.hpp"

namespace gbl {

// Annotation expressions: atoms, binary * and ^, head[args...] application,
// and (a,b,...) tuples. "C^B*B" parses as (C^B)*B; "Id[B]" as Id applied to B.
struct Ann {
    enum class K { Atom, Times, Pow, App, Tuple };
    K k = K::Atom;
    std::string head;
    std::vector<Ann> args;

    std::string str() const;
    bool has_metavar(const std::set<std::string>& vars) const;
    friend bool operator==(const Ann&, const Ann&);
};

Ann parse_ann(const std::string& s);

using AnnBinding = std::map<std::string, Ann>;

bool unify_ann(const Ann& pattern, const Ann& concrete, const std::set<std::string>& metavars,
               AnnBinding& binding);
Ann subst_ann(const Ann& pattern, const AnnBinding& binding);

// A diagram template merged into a host diagram at annotated occurrences
// (the Appendix-B "module" device). The interface is the set of annotated
// body elements; they glue to host elements with matching annotations, the
// rest of the body is adjoined (a pushout of shape graphs).
struct ModuleTemplate {
    std::string name;
    std::string trigger_value;      // ambient node the trigger maps to
    std::string pattern;            // annotation schema of the trigger node
    std::set<std::string> metavars;
    AnnotatedDiagram body;          // annotations may mention metavars
    std::string trigger_body_node;

    std::vector<std::string> interface_nodes() const;
};

// Applies every matching template to fixpoint (modules may trigger modules).
AnnotatedDiagram expand_modules(const AnnotatedDiagram& host,
                                const std::vector<ModuleTemplate>& templates);

// The standard modules over a constructor-space graph: product of objects,
// product of an arrow with an identity, and function spaces. Only the ones
// whose arrows exist in the graph are returned.
std::vector<ModuleTemplate> standard_modules(const std::shared_ptr<const Graph>& g);

// Lookup helpers for expanded diagrams.
const std::string* find_node_by_annotation(const AnnotatedDiagram& d, const std::string& value,
                                           const std::string& annotation);

} // namespace gbl
