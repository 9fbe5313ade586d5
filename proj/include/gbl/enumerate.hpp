#pragma once

#include <memory>

#include "gbl/finset.hpp"

namespace gbl {

struct Bounds {
    std::map<std::string, int> max_card; // free (non-limit) nodes
    std::map<std::string, int> min_card;
    int default_max = 2;
    long budget = 5000000;
};

struct EnumeratedModel {
    FinSetModel model;
    // full coordinate maps of every limit vertex (shape node -> function)
    std::map<std::string, std::map<std::string, Func>> limit_coords;
    std::string canonical; // canonical form under free-set permutations
};

struct Enumeration {
    std::vector<EnumeratedModel> models; // deterministic canonical order
    long search_steps = 0;
};

// Exhaustive up-to-isomorphism enumeration of valid models within bounds.
// Cone vertices are interpreted by canonical tuple limits and their named
// projections by coordinate maps; free nodes are searched. Throws when the
// budget is exceeded.
Enumeration enumerate_models(const FiniteLimitSketch& s, const Bounds& b);

// Builds a single model with canonical limit vertices from seed data,
// deriving everything the sketch equations pin down. Seeds can be staged:
// propagate() after each batch. Lifetime: the sketch must outlive the model.
class ModelBuilder {
public:
    explicit ModelBuilder(const FiniteLimitSketch& s);
    ~ModelBuilder();
    ModelBuilder(const ModelBuilder&) = delete;
    ModelBuilder& operator=(const ModelBuilder&) = delete;

    void set_node(const std::string& node, ElemSet elems);
    void set_arrow(const std::string& arrow, Func f);
    void propagate(); // throws on conflict

    bool has_node(const std::string& node) const;
    const ElemSet& node_set(const std::string& node) const;
    // unique element of a limit vertex with the given coordinate values
    // (keys are base shape nodes)
    Elem element_by_coords(const std::string& vertex,
                           const std::map<std::string, Elem>& coords) const;

    EnumeratedModel build() const; // requires completeness; check_model must pass

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace gbl
