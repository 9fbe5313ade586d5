#pragma once

#include <map>
#include <string>
#include <vector>

#include "gbl/sketch.hpp"

namespace gbl {

using Elem = std::string;
using ElemSet = std::vector<Elem>; // sorted, unique
using Func = std::map<Elem, Elem>;

// An assignment of finite sets and total functions realizing a sketch.
struct FinSetModel {
    const FiniteLimitSketch* sketch = nullptr;
    std::map<std::string, ElemSet> sets;
    std::map<std::string, Func> funcs;

    const ElemSet& set_of(const std::string& node) const;
    const Func& func_of(const std::string& arrow) const;
};

// A diagram evaluated into sets: per-shape-node set, per-shape-arrow function.
struct SetDiagram {
    Graph shape;
    std::map<std::string, ElemSet> sets;
    std::map<std::string, Func> funcs;
};

// Injective tuple encoding keyed by shape node.
Elem encode_tuple(const std::map<std::string, Elem>& coords);

struct FinsetLimit {
    ElemSet elements;                        // lexicographically sorted tuples
    std::map<std::string, Func> projections; // shape node -> coordinate map
};

// Canonical limit in finite sets: shape-node-indexed tuples (x_i) with
// delta(f)(x_i) = x_j for every shape arrow f : i -> j.
FinsetLimit finset_limit(const SetDiagram& d);

SetDiagram eval_diagram(const FinSetModel& m, const Diagram& d);

// Apply a shape path to an element of the path's source value.
Elem apply_value_path(const FinSetModel& m, const std::vector<std::string>& arrows,
                      const Elem& x);

struct ModelViolation {
    std::string where;
    std::string message;
};

struct ModelCheckReport {
    std::vector<ModelViolation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

// Verifies the model invariants exhaustively: typing, every sketch diagram's
// payload equations pointwise, and every cone mapping to a limit cone (a
// bijection with the canonical tuple limit commuting with the named
// projections; fiberwise cardinality test).
ModelCheckReport check_model(const FinSetModel& m);

std::string model_to_text(const FinSetModel& m);

} // namespace gbl
