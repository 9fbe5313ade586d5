#include "gbl/extension.hpp"

#include <algorithm>

namespace gbl {

namespace {

// All two-paths j -> j' -> k inside J, as (f, g) with g o f parallel to a.
std::vector<std::pair<std::string, std::string>> two_paths(const Graph& shape,
                                                           const Subgraph& j,
                                                           const Arrow& a) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& fid : j.arrows) {
        const Arrow& f = shape.arrow(fid);
        if (f.src != a.src) continue;
        for (const auto& gid : j.arrows) {
            const Arrow& g = shape.arrow(gid);
            if (g.src == f.tgt && g.tgt == a.tgt) out.emplace_back(fid, gid);
        }
    }
    return out;
}

} // namespace

std::vector<Subgraph> limit_jprime_candidates(const Graph& shape_j,
                                              const std::set<std::string>& targets) {
    std::vector<Subgraph> out;
    out.push_back(Subgraph::full_on(shape_j, targets));

    // targets plus nodes tied to at least two target-incident arrows
    std::map<std::string, int> incident;
    for (const auto& [id, a] : shape_j.arrows()) {
        if (targets.count(a.src) && !targets.count(a.tgt)) incident[a.tgt]++;
        if (targets.count(a.tgt) && !targets.count(a.src)) incident[a.src]++;
    }
    std::set<std::string> shared = targets;
    for (const auto& [n, k] : incident)
        if (k >= 2) shared.insert(n);
    Subgraph s2 = Subgraph::full_on(shape_j, shared);
    if (!(s2 == out.back())) out.push_back(s2);

    std::set<std::string> all = targets;
    for (const auto& [n, k] : incident) all.insert(n);
    Subgraph s3 = Subgraph::full_on(shape_j, all);
    if (std::find(out.begin(), out.end(), s3) == out.end()) out.push_back(s3);
    return out;
}

ExtensionKind classify_extension(const Diagram& dprime, const Subgraph& j,
                                 const ExtensionOracle& eq) {
    require_subgraph(j, dprime.shape(), "classify_extension");
    const Graph& shape = dprime.shape();

    std::set<std::string> new_nodes;
    for (const auto& n : shape.nodes())
        if (!j.nodes.count(n)) new_nodes.insert(n);
    std::vector<std::string> new_arrows;
    for (const auto& [id, a] : shape.arrows())
        if (!j.arrows.count(id)) new_arrows.push_back(id);

    ExtensionKind result;

    // Def 3.3.1: same nodes, exactly one new arrow, triangles (11) commute.
    if (new_nodes.empty() && new_arrows.size() == 1) {
        const std::string& aid = new_arrows.front();
        const Arrow& a = shape.arrow(aid);
        auto tps = two_paths(shape, j, a);
        bool ok;
        if (!tps.empty()) {
            ok = true;
            for (const auto& [f, g] : tps)
                if (!eq.shape_path_eq({aid}, {g, f})) {
                    ok = false;
                    break;
                }
        } else {
            ok = eq.composite_cert && eq.composite_cert(aid);
        }
        if (ok) {
            result.kind = ExtensionKind::Kind::Composite;
            result.new_arrow = aid;
            return result;
        }
        return result;
    }

    if (new_nodes.size() == 1) {
        const std::string& v = *new_nodes.begin();
        bool all_into = !new_arrows.empty();
        bool all_from = !new_arrows.empty();
        for (const auto& id : new_arrows) {
            const Arrow& a = shape.arrow(id);
            if (a.tgt != v || a.src == v) all_into = false;
            if (a.src != v || a.tgt == v) all_from = false;
        }

        // Def 3.3.2: every new arrow targets v; triangles (12) commute.
        if (all_into) {
            bool ok = true;
            for (const auto& aid : new_arrows) {
                const Arrow& a = shape.arrow(aid);
                for (const auto& bid : new_arrows) {
                    const Arrow& b = shape.arrow(bid);
                    for (const auto& fid : j.arrows) {
                        const Arrow& f = shape.arrow(fid);
                        if (f.src == a.src && f.tgt == b.src)
                            if (!eq.shape_path_eq({aid}, {bid, fid})) ok = false;
                    }
                }
            }
            if (ok && new_arrows.size() > 1 && eq.cocone_cert)
                ok = eq.cocone_cert(v, new_arrows);
            if (ok) {
                result.kind = ExtensionKind::Kind::CommutativeCocone;
                result.new_node = v;
                return result;
            }
            return result;
        }

        // Def 3.3.3: projections from v onto the nodes of a full J'.
        if (all_from && eq.limit_cert) {
            std::set<std::string> targets;
            std::map<std::string, std::string> projs;
            bool dup = false;
            for (const auto& id : new_arrows) {
                const Arrow& a = shape.arrow(id);
                if (!targets.insert(a.tgt).second) dup = true;
                projs[a.tgt] = id;
            }
            if (!dup) {
                Graph shape_j = induced_graph(shape, j);
                for (const auto& jp : limit_jprime_candidates(shape_j, targets)) {
                    if (!is_full(jp, shape_j)) continue;
                    if (eq.limit_cert(v, jp, projs)) {
                        result.kind = ExtensionKind::Kind::Limit;
                        result.new_node = v;
                        result.projections = projs;
                        result.jprime = jp;
                        return result;
                    }
                }
            }
        }
    }
    return result;
}

} // namespace gbl
