#include "qmet/construct.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qmet {

Graph build_fragment(const FragmentSpec& frag) {
    switch (frag.kind) {
    case SubgraphKind::S1:
        if (frag.size < 2) throw ValidationError("s1 fragment needs size >= 2");
        return standard_graph(StandardGraph::Complete, frag.size);
    case SubgraphKind::S2:
        if (frag.size < 2) throw ValidationError("s2 fragment needs size >= 2");
        return standard_graph(StandardGraph::Star, frag.size);
    case SubgraphKind::S3:
        if (frag.size < 4) throw ValidationError("s3 fragment needs size >= 4 (K_{2,m} with m >= 2)");
        return standard_graph(StandardGraph::CompleteBipartite, 2, frag.size - 2);
    case SubgraphKind::S4:
        if (frag.size < 1) throw ValidationError("s4 fragment needs size >= 1");
        return Graph(frag.size);
    }
    throw ValidationError("unknown fragment kind");
}

RuleTable RuleTable::defaults() {
    RuleTable t{};
    // X permits s1; Y prohibits s1; Z permits s2, s3, s4.  All other cells
    // are unspecified and default to permitted-with-warning.
    t.entry[0][0] = 1;
    t.entry[1][0] = -1;
    t.entry[2][1] = 1;
    t.entry[2][2] = 1;
    t.entry[2][3] = 1;
    return t;
}

int RuleTable::lookup(char letter, SubgraphKind kind) const {
    int row;
    switch (letter) {
    case 'X': row = 0; break;
    case 'Y': row = 1; break;
    case 'Z': row = 2; break;
    default: throw ValidationError(std::string("bad meta-stabilizer letter '") + letter + "'");
    }
    return entry[row][static_cast<int>(kind)];
}

namespace {

struct Placement {
    Graph graph;
    std::vector<int> offsets;
    std::vector<Graph> fragments;
};

Placement place_fragments(const MetaGraph& meta) {
    if (meta.assignment.empty()) throw ValidationError("meta-graph needs at least one fragment");
    std::vector<Graph> frags;
    std::vector<int> offsets;
    int total = 0;
    for (const auto& spec : meta.assignment) {
        frags.push_back(build_fragment(spec));
        offsets.push_back(total);
        total += spec.size;
    }
    Graph g(total);
    for (std::size_t f = 0; f < frags.size(); ++f)
        for (auto [i, j] : frags[f].edges()) g.add_edge(offsets[f] + i, offsets[f] + j);
    return {std::move(g), std::move(offsets), std::move(frags)};
}

bool meta_connected(int k, const std::vector<std::pair<int, int>>& edges) {
    if (k == 1) return true;
    Graph mg(k);
    for (auto [i, j] : edges) mg.add_edge(i, j);
    return mg.is_connected();
}

// Lowest-index non-leaf vertex; falls back to 0 when every vertex is a leaf.
int bridge_port(const Graph& frag) {
    for (int v = 0; v < frag.n(); ++v)
        if (frag.degree(v) != 1) return v;
    return 0;
}

} // namespace

CompositeGraph build_a_type(const MetaGraph& meta) {
    if (meta.join_mode != JoinMode::Bridge)
        throw ValidationError("A-type composites use bridge joins");
    for (const auto& spec : meta.assignment)
        if (spec.kind == SubgraphKind::S4)
            throw ValidationError("A-type fragments come from s1, s2, s3");
    if (!meta_connected(meta.size(), meta.meta_edges))
        throw ValidationError("A-type meta-graph must be connected");
    Placement p = place_fragments(meta);
    for (auto [a, b] : meta.meta_edges) {
        if (a < 0 || a >= meta.size() || b < 0 || b >= meta.size())
            throw ValidationError("meta-edge endpoint out of range");
        p.graph.add_edge(p.offsets[a] + bridge_port(p.fragments[a]),
                         p.offsets[b] + bridge_port(p.fragments[b]));
    }
    return {std::move(p.graph), std::move(p.offsets), {}};
}

CompositeGraph build_b_type(const MetaGraph& meta) {
    if (meta.join_mode != JoinMode::FullJoin)
        throw ValidationError("B-type composites use full joins");
    if (!meta.meta_stabilizer)
        throw ValidationError("B-type composites need a meta-stabilizer");
    const std::string& stab = *meta.meta_stabilizer;
    if (static_cast<int>(stab.size()) != meta.size())
        throw ValidationError("meta-stabilizer length must match fragment count");
    for (char c : stab)
        if (c != 'X' && c != 'Y' && c != 'Z')
            throw ValidationError("meta-stabilizer must be full rank (no identity letters)");
    if (!meta_connected(meta.size(), meta.meta_edges))
        throw ValidationError("B-type meta-graph must be connected");

    // The letters must form an actual stabilizer of the meta graph state:
    // alpha is the X-support, and each Z component must match the parity of
    // alpha-neighbors.
    {
        Graph mg(meta.size());
        for (auto [i, j] : meta.meta_edges) mg.add_edge(i, j);
        Bitset alpha(meta.size());
        for (int v = 0; v < meta.size(); ++v)
            if (stab[v] == 'X' || stab[v] == 'Y') alpha.set(v);
        for (int v = 0; v < meta.size(); ++v) {
            bool z = stab[v] == 'Z' || stab[v] == 'Y';
            if (mg.neighborhood(v).and_parity(alpha) != z)
                throw ValidationError("meta-stabilizer is not a stabilizer of the meta-graph");
        }
    }

    std::vector<std::string> warnings;
    for (int v = 0; v < meta.size(); ++v) {
        int rule = meta.rules.lookup(stab[v], meta.assignment[v].kind);
        if (rule < 0)
            throw ValidationError("fragment kind s" +
                                  std::to_string(static_cast<int>(meta.assignment[v].kind) + 1) +
                                  " prohibited at a '" + std::string(1, stab[v]) +
                                  "' meta-stabilizer position " + std::to_string(v));
        if (rule == 0)
            warnings.push_back("rule cell (" + std::string(1, stab[v]) + ", s" +
                               std::to_string(static_cast<int>(meta.assignment[v].kind) + 1) +
                               ") unspecified; permitted by default");
    }

    Placement p = place_fragments(meta);
    for (auto [a, b] : meta.meta_edges)
        for (int i = 0; i < meta.assignment[a].size; ++i)
            for (int j = 0; j < meta.assignment[b].size; ++j)
                p.graph.add_edge(p.offsets[a] + i, p.offsets[b] + j);
    return {std::move(p.graph), std::move(p.offsets), std::move(warnings)};
}

ScalingResult scaling_experiment(const std::function<Graph(int)>& builder,
                                 const std::vector<int>& n_values, SearchMode mode,
                                 uint64_t seed) {
    std::vector<int> distinct = n_values;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3)
        throw ValidationError("scaling fit needs at least 3 distinct sizes");

    ScalingResult res;
    for (int n : distinct) {
        Graph g = builder(n);
        SearchResult s = search_optimal_alpha(g, mode, 20, 32, seed);
        res.points.push_back({g.n(), s.qfi, qfi_upper_bound(g)});
    }

    auto fit = [&](auto value) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& pt : res.points) {
            double x = std::log(double(pt.n)), y = std::log(double(value(pt)));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double k = double(res.points.size());
        return (k * sxy - sx * sy) / (k * sxx - sx * sx);
    };
    res.exponent = fit([](const ScalingPoint& p) { return p.best_qfi; });
    res.bound_exponent = fit([](const ScalingPoint& p) { return p.bound; });
    return res;
}

Graph a_type_cluster(int n) {
    int root = static_cast<int>(std::llround(std::cbrt(double(n))));
    if (root * root * root != n)
        throw ValidationError("A-type cluster preset needs a perfect-cube size");
    MetaGraph meta;
    meta.join_mode = JoinMode::Bridge;
    for (int i = 0; i < root; ++i)
        meta.assignment.push_back({SubgraphKind::S2, root * root});
    for (int i = 0; i + 1 < root; ++i) meta.meta_edges.emplace_back(i, i + 1);
    return build_a_type(meta).graph;
}

} // namespace qmet
