#include "gbl/canonical.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "gbl/error.hpp"

namespace gbl {

namespace {

// Partition as an ordered list of cells; cell order is part of the state.
using Partition = std::vector<std::vector<int>>;

struct Ctx {
    const ColoredGraph* g;
    // adjacency: per node, list of (edge color, other node, 0=out 1=in)
    std::vector<std::vector<std::tuple<std::string, int, int>>> adj;
    std::string best_key;
    std::vector<int> best_order;
    bool have_best = false;
    long leaves = 0;
};

// Signature of a node relative to current cell assignment.
std::string node_sig(const Ctx& c, const std::vector<int>& cell_of, int v) {
    std::vector<std::string> parts;
    parts.reserve(c.adj[v].size());
    for (const auto& [color, other, dir] : c.adj[v]) {
        std::ostringstream s;
        s << dir << ':' << cell_of[other] << ':' << color;
        parts.push_back(s.str());
    }
    std::sort(parts.begin(), parts.end());
    std::ostringstream s;
    for (const auto& p : parts) s << p << '|';
    return s.str();
}

Partition refine(const Ctx& c, Partition p) {
    const int n = static_cast<int>(c.g->node_color.size());
    std::vector<int> cell_of(n, 0);
    bool changed = true;
    while (changed) {
        for (int i = 0; i < static_cast<int>(p.size()); ++i)
            for (int v : p[i]) cell_of[v] = i;
        changed = false;
        Partition next;
        for (const auto& cell : p) {
            if (cell.size() == 1) {
                next.push_back(cell);
                continue;
            }
            std::map<std::string, std::vector<int>> split;
            for (int v : cell) split[node_sig(c, cell_of, v)].push_back(v);
            if (split.size() > 1) changed = true;
            for (auto& [sig, vs] : split) next.push_back(vs);
        }
        p = std::move(next);
    }
    return p;
}

std::string encode(const Ctx& c, const std::vector<int>& order) {
    const int n = static_cast<int>(order.size());
    std::vector<int> pos(n);
    for (int p = 0; p < n; ++p) pos[order[p]] = p;
    std::ostringstream s;
    s << n << ';';
    for (int p = 0; p < n; ++p) s << c.g->node_color[order[p]] << ';';
    std::vector<std::string> es;
    es.reserve(c.g->edges.size());
    for (const auto& e : c.g->edges) {
        std::ostringstream t;
        t << pos[e.src] << '>' << pos[e.tgt] << ':' << e.color;
        es.push_back(t.str());
    }
    std::sort(es.begin(), es.end());
    for (const auto& e : es) s << e << '|';
    return s.str();
}

void search(Ctx& c, Partition p) {
    p = refine(c, p);
    int split_cell = -1;
    for (int i = 0; i < static_cast<int>(p.size()); ++i)
        if (p[i].size() > 1) {
            split_cell = i;
            break;
        }
    if (split_cell < 0) {
        if (++c.leaves > 200000) throw error("canonicalize: search budget exceeded");
        std::vector<int> order;
        for (const auto& cell : p) order.push_back(cell[0]);
        std::string key = encode(c, order);
        if (!c.have_best || key < c.best_key) {
            c.best_key = key;
            c.best_order = order;
            c.have_best = true;
        }
        return;
    }
    std::vector<int> cell = p[split_cell];
    std::sort(cell.begin(), cell.end());
    for (int v : cell) {
        Partition q;
        q.reserve(p.size() + 1);
        for (int i = 0; i < split_cell; ++i) q.push_back(p[i]);
        q.push_back({v});
        std::vector<int> rest;
        for (int w : p[split_cell])
            if (w != v) rest.push_back(w);
        q.push_back(rest);
        for (int i = split_cell + 1; i < static_cast<int>(p.size()); ++i) q.push_back(p[i]);
        search(c, std::move(q));
    }
}

} // namespace

CanonicalForm canonicalize(const ColoredGraph& g) {
    const int n = static_cast<int>(g.node_color.size());
    if (n == 0) {
        if (!g.edges.empty()) throw error("canonicalize: edges without nodes");
        return CanonicalForm{{}, "0;"};
    }
    Ctx c;
    c.g = &g;
    c.adj.resize(n);
    for (const auto& e : g.edges) {
        if (e.src < 0 || e.src >= n || e.tgt < 0 || e.tgt >= n)
            throw error("canonicalize: edge endpoint out of range");
        c.adj[e.src].emplace_back(e.color, e.tgt, 0);
        c.adj[e.tgt].emplace_back(e.color, e.src, 1);
    }
    // initial partition by node color
    std::map<std::string, std::vector<int>> by_color;
    for (int v = 0; v < n; ++v) by_color[g.node_color[v]].push_back(v);
    Partition p;
    for (auto& [col, vs] : by_color) p.push_back(vs);
    search(c, std::move(p));
    return CanonicalForm{c.best_order, c.best_key};
}

} // namespace gbl
